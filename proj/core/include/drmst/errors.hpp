#pragma once

#include <stdexcept>

namespace drmst {

/// Size and scale guards: enumeration caps, retry budgets, instance limits.
/// The CLI maps these to exit code 4.
class guard_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File access and parse failures. The CLI maps these to exit code 3.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace drmst
