// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "pwa/cli.hpp"

using namespace pwa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "pwa");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) {
    return oracle::data_path(name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("pwa_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* name) const { return (path / name).string(); }
    std::string write(const char* name, const std::string& content) const {
        std::ofstream(path / name) << content;
        return (path / name).string();
    }
};

} // namespace

TEST_CASE("usage errors exit with 1") {
    TempDir t;
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kUsage);
    CHECK(invoke({"abstract", data("identity2d.json")}).code == cli::kUsage);
    CHECK(invoke({"abstract", data("identity2d.json"), "--lambda", "1", "--out", t / "r.json"}).code ==
          cli::kUsage);
    CHECK(invoke({"abstract", data("identity2d.json"), "--lambda", "abc", "--out", t / "r.json"}).code ==
          cli::kUsage);
    CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("parse and model errors exit with 2 and 3") {
    TempDir t;
    auto bad = t.write("bad.json", "{ nope");
    CHECK(invoke({"abstract", bad, "--out", t / "r.json"}).code == cli::kParse);
    CHECK(invoke({"abstract", t / "missing.json", "--out", t / "r.json"}).code == cli::kParse);
    auto fl = t.write("float.json", R"({"state_dim": 1, "input_dim": 1, "region": {"lower": [0], "upper": [0.5]},
        "input_set": {"lower": ["0"], "upper": ["0"]}, "modes": [{"A": [["1"]], "B": [["0"]], "f": ["0"], "guard": []}]})");
    CHECK(invoke({"abstract", fl, "--out", t / "r.json"}).code == cli::kParse);
    auto unb = t.write("unbounded.json", R"({"state_dim": 1, "input_dim": 1, "region": [{"a": ["1"], "b": "1"}],
        "input_set": {"lower": ["0"], "upper": ["0"]}, "modes": [{"A": [["1"]], "B": [["0"]], "f": ["0"], "guard": []}]})");
    CHECK(invoke({"abstract", unb, "--out", t / "r.json"}).code == cli::kModel);
    auto gap = t.write("gap.json", R"({"state_dim": 1, "input_dim": 1, "region": {"lower": ["0"], "upper": ["2"]},
        "input_set": {"lower": ["0"], "upper": ["0"]},
        "modes": [{"A": [["1"]], "B": [["0"]], "f": ["0"], "guard": [{"a": ["1"], "b": "1/2"}]}]})");
    CHECK(invoke({"abstract", gap, "--out", t / "r.json"}).code == cli::kModel);
}

TEST_CASE("misaligned spec exits with 4") {
    TempDir t;
    auto spec = t.write("spec.json", R"({"states": [0, 99], "edges": [[0, 1], [1, 0]]})");
    auto r = invoke({"synthesize", data("twomode2d.json"), spec, "--max-level", "1", "--out", t / "c.json"});
    CHECK(r.code == cli::kSpec);
    CHECK_FALSE(fs::exists(t / "c.json"));
}

TEST_CASE("abstract then report") {
    TempDir t;
    auto r = invoke({"abstract", data("shift1d.json"), "--max-level", "3", "--out", t / "r.json"});
    REQUIRE(r.code == cli::kOk);
    auto j = io::read_json(t / "r.json");
    CHECK(j["levels"].size() == 3);
    auto rep = invoke({"report", t / "r.json"});
    CHECK(rep.code == cli::kOk);
    CHECK(count(rep.out, "\n") == 4);
    CHECK(rep.out.find("gran") != std::string::npos);
}

TEST_CASE("outputs are byte identical across runs") {
    TempDir t;
    for (int i = 0; i < 2; ++i) {
        const std::string tag = std::to_string(i);
        REQUIRE(invoke({"abstract", data("twomode2d.json"), "--max-level", "2", "--out", t.path / ("r" + tag)})
                    .code == 0);
        REQUIRE(invoke({"synthesize", data("synth2d.json"), data("synth2d_spec.json"), "--max-level", "2",
                        "--trials", "20", "--horizon", "10", "--out", t.path / ("c" + tag), "--report",
                        t.path / ("s" + tag)})
                    .code == 0);
        REQUIRE(invoke({"simulate", data("synth2d.json"), t.path / ("c" + tag), "--x0", "1/4,1/4", "--horizon", "20",
                        "--seed", "9", "--out", t.path / ("t" + tag)})
                    .code == 0);
        REQUIRE(invoke({"render", data("twomode2d.json"), t.path / ("r" + tag), "--out", t.path / ("v" + tag)})
                    .code == 0);
    }
    for (const char* stem : {"r", "c", "s", "t", "v"}) {
        CAPTURE(stem);
        CHECK(slurp(t.path / (std::string(stem) + "0")) == slurp(t.path / (std::string(stem) + "1")));
    }
}

TEST_CASE("render draws one polygon per cell") {
    TempDir t;
    REQUIRE(invoke({"abstract", data("identity2d.json"), "--out", t / "r.json"}).code == 0);
    REQUIRE(invoke({"render", data("identity2d.json"), t / "r.json", "--out", t / "v.svg"}).code == 0);
    const std::string svg = slurp(t / "v.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count(svg, "fill=\"none\"") == 1);
    CHECK(count(svg, "</polygon>") == 2);

    REQUIRE(invoke({"abstract", data("twomode2d.json"), "--max-level", "2", "--out", t / "r2.json"}).code == 0);
    auto levels = io::read_json(t / "r2.json")["levels"];
    REQUIRE(invoke({"render", data("twomode2d.json"), t / "r2.json", "--level", "2", "--out", t / "v2.svg"}).code ==
            0);
    CHECK(count(slurp(t / "v2.svg"), "</polygon>") == levels[1]["cells"].size());
    CHECK(levels[1]["cells"].size() > 2);
    CHECK(invoke({"render", data("twomode2d.json"), t / "r2.json", "--level", "7", "--out", t / "v3.svg"}).code ==
          cli::kParse);
}

TEST_CASE("render of a non-planar system exits with 5") {
    TempDir t;
    auto sys = t.write("cube.json", R"({"state_dim": 3, "input_dim": 1,
        "region": {"lower": ["0", "0", "0"], "upper": ["1", "1", "1"]},
        "input_set": {"lower": ["0"], "upper": ["0"]},
        "modes": [{"A": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "B": [["0"], ["0"], ["0"]],
                   "f": ["0", "0", "0"], "guard": []}]})");
    REQUIRE(invoke({"abstract", sys, "--max-level", "1", "--out", t / "r.json"}).code == 0);
    auto r = invoke({"render", sys, t / "r.json", "--out", t / "v.svg"});
    CHECK(r.code == cli::kRuntime);
    CHECK(r.err.find("dimension") != std::string::npos);
}

TEST_CASE("synthesize warns when nothing is controlled") {
    TempDir t;
    // Every spec edge switches mode, while the dynamics never leave a mode.
    auto spec = t.write("spec.json", R"({"states": [0, 1], "edges": [[0, 1], [1, 0]]})");
    auto sys = t.write("two.json", R"({"state_dim": 1, "input_dim": 1, "region": {"lower": ["0"], "upper": ["2"]},
        "input_set": {"lower": ["0"], "upper": ["0"]},
        "modes": [{"A": [["1"]], "B": [["0"]], "f": ["0"], "guard": [{"a": ["1"], "b": "1"}]},
                  {"A": [["1"]], "B": [["0"]], "f": ["0"], "guard": [{"a": ["-1"], "b": "-1"}]}]})");
    auto s = invoke({"synthesize", sys, spec, "--max-level", "1", "--out", t / "c.json", "--report", t / "s.json"});
    REQUIRE(s.code == cli::kOk);
    CHECK(s.err.find("warning") != std::string::npos);
    auto rep = io::read_json(t / "s.json");
    CHECK(rep["synthesis"]["controlled_state_count"] == 0);
    CHECK(rep["synthesis"].contains("warning"));
    CHECK(rep["enforcement"]["passed"] == true);
    CHECK(rep["enforcement"].contains("warning"));
    auto sim = invoke({"simulate", sys, t / "c.json", "--x0", "1/2", "--out", t / "t.json"});
    CHECK(sim.code == cli::kRuntime);
}

TEST_CASE("simulate an identity controller") {
    TempDir t;
    auto spec = t.write("spec.json", R"({"states": [0], "edges": [[0, 0]]})");
    REQUIRE(invoke({"synthesize", data("identity2d.json"), spec, "--out", t / "c.json"}).code == 0);
    auto r = invoke({"simulate", data("identity2d.json"), t / "c.json", "--x0", "1/3,1/7", "--horizon", "12", "--out",
                     t / "t.json"});
    REQUIRE(r.code == 0);
    auto trace = io::read_json(t / "t.json");
    CHECK(trace["states"].size() == 13);
    CHECK(trace["inputs"].size() == 12);
    CHECK(trace["states"][12] == io::Json::parse(R"(["1/3", "1/7"])"));
    CHECK(trace["violated"] == false);
    CHECK(invoke({"simulate", data("identity2d.json"), t / "c.json", "--x0", "1/3", "--out", t / "t.json"}).code ==
          cli::kParse);
}

TEST_CASE("quadrant controller assigns the expected input box") {
    TempDir t;
    REQUIRE(invoke({"synthesize", data("example2.json"), data("example2_spec.json"), "--max-level", "1", "--out",
                    t / "c.json"})
                .code == 0);
    auto sys = fixture::load_system("example2.json");
    auto c = io::controller_from_json(io::read_json(t / "c.json"), sys);
    const auto& first = c.cells.state(0);
    REQUIRE(first.cell.same_set(Polytope::box({0, 0}, {Scalar(1, 2), Scalar(1, 2)})));
    CHECK(same_point_set(c.strategy.assignments[0],
                         PolytopeSet(2, {Polytope::box({1, 0}, {Scalar(3, 2), Scalar(1, 2)})})));
}
