/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qdyn/cli.hpp"

using namespace qdyn;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args, const std::string& cache) {
    args.insert(args.begin(), {"--cache-dir", cache});
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kCache = "cli_test_cache";

} // namespace

TEST_CASE("pn 1 prints the level-1 polynomial") {
    auto r = run({"--format", "json", "pn", "1"}, kCache);
    REQUIRE(r.code == kExitOk);
    json doc = json::parse(r.out);
    CHECK(doc["P_n"]["degree"] == 8);
    // x(x+1)(x^2-x+2)(x^4-4x^3+5x^2-2x+4) expanded, low degree first
    CHECK(doc["P_n"]["coeffs"] == "8 0 8 0 8 1 -4 6 -4 1");
    CHECK(doc["P_n_tilde"]["coeffs"] == "8 0 1 0 4 1 -8 24 -32 16");
}

TEST_CASE("classrel 2 reports 12 = 12") {
    auto r = run({"--format", "json", "classrel", "2"}, kCache);
    REQUIRE(r.code == kExitOk);
    json doc = json::parse(r.out);
    CHECK(doc["lhs"] == 12);
    CHECK(doc["rhs"] == 12);
    CHECK(doc["equal"] == true);
    CHECK(doc["discriminants"].size() == 3);
}

TEST_CASE("label 2 carries the three discriminants") {
    auto r = run({"--format", "json", "label", "2"}, kCache);
    REQUIRE(r.code == kExitOk);
    json doc = json::parse(r.out);
    std::set<long> labels;
    for (const auto& f : doc["factors"]) labels.insert(f["label_d"].get<long>());
    CHECK(labels == std::set<long>({39, 55, 63}));
}

TEST_CASE("report 2: orbits, labels and cross-checks") {
    auto r = run({"--format", "json", "report", "2"}, kCache);
    REQUIRE(r.code == kExitOk);
    json doc = json::parse(r.out);
    CHECK(doc["orbit_count"] == 6);
    CHECK(doc["point_count"] == 12);
    CHECK(doc["check_label_bijection"] == true);
    for (const auto& o : doc["orbits"]) {
        CHECK(o["period"] == 2);
        CHECK(o.contains("label_d"));
    }
}

TEST_CASE("fixedpoints lists three units and two exceptional points") {
    auto r = run({"--format", "json", "fixedpoints"}, kCache);
    REQUIRE(r.code == kExitOk);
    json doc = json::parse(r.out);
    CHECK(doc["unit_fixed_points"].size() == 3);
    CHECK(doc["exceptional"].size() == 2);
    CHECK(doc["exceptional"][0]["t_coordinate"] == 0);
    CHECK(doc["exceptional"][1]["t_coordinate"] == -1);
}

TEST_CASE("verify-series passes at the default precision") {
    auto r = run({"verify-series"}, kCache);
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("all_ok = true") != std::string::npos);
}

TEST_CASE("determinism: identical invocations are byte-identical") {
    auto a = run({"--format", "json", "--seed", "9", "verify-series"}, kCache);
    auto b = run({"--format", "json", "--seed", "9", "verify-series"}, kCache);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    auto c = run({"report", "2"}, kCache);
    auto d = run({"report", "2"}, kCache);
    CHECK(c.out == d.out);
}

TEST_CASE("exit codes: usage, capacity") {
    auto bad = run({"nonsense"}, kCache);
    CHECK(bad.code == kExitUsage);
    auto badflag = run({"--precision", "8", "pn", "1"}, kCache);
    CHECK(badflag.code == kExitUsage);
    auto cap = run({"pn", "4"}, kCache);  // nmax defaults to 3
    CHECK(cap.code == kExitCapacity);
    auto cap2 = run({"classrel", "6"}, kCache);
    CHECK(cap2.code == kExitCapacity);
}

TEST_CASE("cache admin workflow") {
    auto v0 = run({"--format", "json", "cache", "verify"}, kCache);
    REQUIRE(v0.code == kExitOk);
    run({"pn", "2"}, kCache);
    auto v1 = run({"--format", "json", "cache", "verify"}, kCache);
    REQUIRE(v1.code == kExitOk);
    json doc = json::parse(v1.out);
    CHECK(doc["entries"].size() >= 2);
    for (const auto& e : doc["entries"]) CHECK(e["valid"] == true);
    auto cleared = run({"--format", "json", "cache", "clear"}, kCache);
    json cdoc = json::parse(cleared.out);
    CHECK(cdoc["removed"].get<int>() >= 2);
    auto l = run({"--format", "json", "cache", "list"}, kCache);
    CHECK(json::parse(l.out)["entries"].empty());
}

TEST_CASE("spawned binary behaves like the library entry point") {
    const char* bin = std::getenv("QDYN_CLI_BIN");
    if (!bin) return;  // only run under ctest where the path is exported
    std::string cmd = std::string(bin) + " --cache-dir " + kCache +
                      " --format json classrel 1 > cli_spawn_out.txt 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(rc == 0);
    std::ifstream in("cli_spawn_out.txt");
    json doc = json::parse(in);
    CHECK(doc["lhs"] == 3);
    std::filesystem::remove("cli_spawn_out.txt");
}

TEST_CASE("cleanup") {
    std::filesystem::remove_all(kCache);
    CHECK(true);
}
