#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the command-line surface: flags, exit codes, file
// schemas and reproducibility. Each case shells out to the built binary.

#include "drmst/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = DRMST_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("drmst_cli_out_" +
                                                      std::to_string(counter++) + ".txt");
    const std::string cmd = cli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.stdout_text = drmst::read_text_file(out.string());
    fs::remove(out);
    return r;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("drmst_cli_" + name);
}

} // namespace

TEST_CASE("gen writes a valid instance that round-trips") {
    const fs::path path = temp_file("g1.json");
    RunResult r = run("gen --nodes 10 --prob 0.5 --seed 7 --out " + path.string());
    REQUIRE(r.exit_code == 0);
    drmst::UncertainGraph g = drmst::load_graph(path.string());
    CHECK(g.node_count() == 10);
    const std::string text = drmst::read_text_file(path.string());
    drmst::UncertainGraph again = drmst::graph_from_json(drmst::graph_to_json(g));
    CHECK(drmst::graph_to_json(again) == text);
    fs::remove(path);
}

TEST_CASE("gen is byte-reproducible") {
    const fs::path a = temp_file("g2a.json"), b = temp_file("g2b.json");
    REQUIRE(run("gen --nodes 9 --prob 0.6 --seed 3 --out " + a.string()).exit_code == 0);
    REQUIRE(run("gen --nodes 9 --prob 0.6 --seed 3 --out " + b.string()).exit_code == 0);
    CHECK(drmst::read_text_file(a.string()) == drmst::read_text_file(b.string()));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("gen reports retry exhaustion as a guard error") {
    const fs::path path = temp_file("g3.json");
    RunResult r = run("gen --nodes 5 --prob 0.01 --seed 1 --out " + path.string());
    CHECK(r.exit_code == 4);
}

TEST_CASE("solve agrees across solvers and emits the schema header") {
    const fs::path path = temp_file("g4.json");
    REQUIRE(run("gen --nodes 7 --prob 0.7 --seed 11 --out " + path.string()).exit_code == 0);

    RunResult rp = run("solve --graph " + path.string() + " --beta 0.2 --solver rp");
    RunResult ex = run("solve --graph " + path.string() + " --beta 0.2 --solver exhaustive");
    REQUIRE(rp.exit_code == 0);
    REQUIRE(ex.exit_code == 0);
    CHECK(rp.stdout_text.find("\"schema\": \"drmst/1\"") != std::string::npos);

    auto alpha_of = [](const std::string& doc) {
        const auto pos = doc.find("\"alpha\": ");
        REQUIRE(pos != std::string::npos);
        return std::stod(doc.substr(pos + 9));
    };
    CHECK(alpha_of(rp.stdout_text) == doctest::Approx(alpha_of(ex.stdout_text)).epsilon(1e-6));

    SUBCASE("beta = 1 yields a zero-RV tree") {
        RunResult zero = run("solve --graph " + path.string() + " --beta 1.0 --solver rp");
        CHECK(zero.stdout_text.find("\"status\": \"zero\"") != std::string::npos);
    }
    SUBCASE("benders reports a closed gap") {
        RunResult bd =
            run("solve --graph " + path.string() + " --beta 0.2 --solver benders --eps 1e-6");
        REQUIRE(bd.exit_code == 0);
        const auto pos = bd.stdout_text.find("\"gap\": ");
        REQUIRE(pos != std::string::npos);
        CHECK(std::stod(bd.stdout_text.substr(pos + 7)) <= 1e-6);
    }
    SUBCASE("repeated solves are byte-identical") {
        RunResult again = run("solve --graph " + path.string() + " --beta 0.2 --solver rp");
        CHECK(again.stdout_text == rp.stdout_text);
    }
    fs::remove(path);
}

TEST_CASE("exit codes") {
    SUBCASE("usage errors exit 2") {
        CHECK(run("solve").exit_code == 2);
        CHECK(run("gen --nodes 5").exit_code == 2);
        CHECK(run("frobnicate").exit_code == 2);
        const fs::path path = temp_file("g5.json");
        REQUIRE(run("gen --nodes 5 --prob 0.9 --seed 2 --out " + path.string()).exit_code == 0);
        CHECK(run("solve --graph " + path.string()).exit_code == 2); // neither target nor beta
        CHECK(run("solve --graph " + path.string() + " --beta 2.0").exit_code == 2);
        CHECK(run("solve --graph " + path.string() + " --beta 0.2 --solver nope").exit_code ==
              2);
        fs::remove(path);
    }
    SUBCASE("io errors exit 3") {
        CHECK(run("solve --graph /nonexistent.json --beta 0.2").exit_code == 3);
        const fs::path bad = temp_file("bad.json");
        drmst::write_text_file(bad.string(), "{not json");
        CHECK(run("solve --graph " + bad.string() + " --beta 0.2").exit_code == 3);
        fs::remove(bad);
    }
    SUBCASE("size guards exit 4") {
        const fs::path path = temp_file("g6.json");
        REQUIRE(run("gen --nodes 13 --prob 0.9 --seed 2 --out " + path.string()).exit_code ==
                0);
        CHECK(run("solve --graph " + path.string() + " --beta 0.2 --solver exhaustive")
                  .exit_code == 4);
        fs::remove(path);
    }
}

TEST_CASE("bench") {
    const std::string prefix = (fs::temp_directory_path() / "drmst_bench").string();
    SUBCASE("rv-only criteria normalize every ratio to one") {
        RunResult r = run("bench --nodes-list 10 --seeds 1,2 --beta 0.2 --criteria rv "
                          "--samples 200 --out " +
                          prefix);
        REQUIRE(r.exit_code == 0);
        const std::string agg = drmst::read_text_file(prefix + "_agg.csv");
        const auto line_start = agg.find('\n') + 1;
        const std::string row = agg.substr(line_start, agg.find('\n', line_start) - line_start);
        CHECK(row.find(",1,1,1,1,1,1") != std::string::npos);
    }
    SUBCASE("reruns are byte-identical") {
        const std::string args = "bench --nodes-list 10,12 --seeds 1,2,3 --beta 0.2 "
                                 "--criteria rv,mean,budget --samples 300 --out ";
        REQUIRE(run(args + prefix + "_a").exit_code == 0);
        REQUIRE(run(args + prefix + "_b").exit_code == 0);
        CHECK(drmst::read_text_file(prefix + "_a_rows.csv") ==
              drmst::read_text_file(prefix + "_b_rows.csv"));
        CHECK(drmst::read_text_file(prefix + "_a_agg.csv") ==
              drmst::read_text_file(prefix + "_b_agg.csv"));
    }
    SUBCASE("config file drives the sweep") {
        const fs::path cfg = temp_file("cfg.json");
        drmst::write_text_file(cfg.string(),
                               "{\"nodes\": 10, \"prob\": 0.5, \"seeds\": [4, 5],"
                               " \"beta\": 0.2, \"criteria\": [\"rv\", \"mean\"],"
                               " \"samples\": 100, \"out\": \"" +
                                   prefix + "_cfg\"}");
        RunResult r = run("bench --config " + cfg.string());
        REQUIRE(r.exit_code == 0);
        const std::string rows = drmst::read_text_file(prefix + "_cfg_rows.csv");
        CHECK(rows.find("\n4,10,") != std::string::npos); // header then seed-major rows
        fs::remove(cfg);
    }
    SUBCASE("missing inputs exit 2") {
        CHECK(run("bench --nodes-list 10").exit_code == 2);
    }
}
