// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diskmatch/harness.hpp"
#include "diskmatch/io.hpp"
#include "oracle_utils.hpp"

using namespace diskmatch;

TEST_CASE("instance generation", "[harness]") {
    InstanceSpec spec;
    spec.kind = InstanceKind::kUniformUnit;
    spec.n = 0;
    spec.box_side = 10.0;
    CHECK(generate_instance(spec).empty());

    spec.kind = InstanceKind::kStackedTowers;
    spec.n = 100;
    const auto stacked = generate_instance(spec);
    REQUIRE(stacked.size() == 100);
    for (const auto& d : stacked) {
        CHECK(d.cx == stacked.front().cx);  // one point, identical centers
        CHECK(d.cy == stacked.front().cy);
    }

    spec.kind = InstanceKind::kPlantedMatching;
    spec.n = 50;
    spec.group_size = 25;
    spec.seed = 9;
    const auto planted = generate_instance(spec);
    REQUIRE(planted.size() == 50);
    const auto g = IntersectionGraph::from_edges(50, testing::brute_force_edges(planted));
    CHECK(exact_maximum_matching(g).size() == 25);

    spec.n = -1;
    CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);
    spec.n = 10;
    spec.r_min = 2.0;
    spec.r_max = 1.0;
    CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);

    // determinism for a fixed seed
    InstanceSpec s2;
    s2.kind = InstanceKind::kClustered;
    s2.n = 200;
    s2.box_side = 40.0;
    s2.r_min = 0.5;
    s2.r_max = 2.0;
    s2.seed = 77;
    const auto a = generate_instance(s2);
    const auto b = generate_instance(s2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].cx == b[i].cx);
        CHECK(a[i].r == b[i].r);
    }
}

TEST_CASE("instance files round-trip and reject garbage", "[harness]") {
    {
        std::istringstream in("0 0 1\n2 0 1\n");
        const auto disks = parse_instance(in);
        REQUIRE(disks.size() == 2);
        CHECK(disks[1].cx == 2.0);
    }
    {
        std::istringstream in("# comment\n\n 1.5 2.5 0.25  # trailing comment\n");
        const auto disks = parse_instance(in);
        REQUIRE(disks.size() == 1);
        CHECK(disks[0].r == 0.25);
    }
    {
        std::istringstream in("0 0 -1\n");
        CHECK_THROWS_WITH(parse_instance(in), Catch::Matchers::ContainsSubstring(":1:"));
    }
    {
        std::istringstream in("0 0 1\n1 2\n");
        CHECK_THROWS_WITH(parse_instance(in), Catch::Matchers::ContainsSubstring(":2:"));
    }

    const auto disks = testing::random_mixed_disks(10000, 1000.0, 3);
    const auto path = std::filesystem::temp_directory_path() / "diskmatch_roundtrip.txt";
    save_instance(disks, path.string());
    const auto loaded = load_instance(path.string());
    REQUIRE(loaded.size() == disks.size());
    for (std::size_t i = 0; i < disks.size(); ++i) {
        REQUIRE(loaded[i].cx == disks[i].cx);
        REQUIRE(loaded[i].cy == disks[i].cy);
        REQUIRE(loaded[i].r == disks[i].r);
    }
    std::filesystem::remove(path);
}

TEST_CASE("run dispatch validates and reports", "[harness]") {
    const std::vector<Disk> pair{{0, 0, 1}, {1, 0, 1}};
    RunOptions opt;
    opt.with_oracle = true;

    auto rep = run_algorithm("exact-oracle", pair, opt);
    CHECK(rep.value == 1.0);
    CHECK(rep.pass);
    CHECK(rep.validated);

    std::vector<Disk> far;
    for (int i = 0; i < 12; ++i) far.push_back({i * 10.0, 0, 1});
    rep = run_algorithm("greedy-sweep", far, opt);
    CHECK(rep.value == 0.0);
    CHECK(rep.pass);

    opt.eps = 0.2;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto disks = testing::random_unit_disks(60, 7.0, seed);
        opt.seed = seed;
        rep = run_algorithm("approx-unit", disks, opt);
        REQUIRE(rep.pass);
        REQUIRE(rep.oracle.has_value());
    }

    CHECK_THROWS_AS(run_algorithm("no-such-algorithm", pair, opt), std::invalid_argument);
    RunOptions no_eps;
    CHECK_THROWS_AS(run_algorithm("approx-unit", pair, no_eps), std::invalid_argument);

    rep = run_algorithm("density", far, opt);
    CHECK(rep.pass);
    rep = run_algorithm("build-graph", pair, opt);
    CHECK(rep.value == 1.0);
    CHECK(rep.pass);
}

TEST_CASE("benchmark output is reproducible modulo time", "[harness]") {
    BenchSeries s;
    s.algorithm = "greedy-unit";
    s.kind = InstanceKind::kUniformUnit;
    s.ns = {500, 1000};
    s.box_factor = 4.0;
    s.seeds = {1, 2};
    s.repetitions = 2;

    const auto res1 = run_benchmark({s});
    const auto res2 = run_benchmark({s});
    REQUIRE(res1.rows.size() == res2.rows.size());

    auto strip_time = [](const BenchResult& r) {
        std::string out;
        for (const auto& row : r.rows) {
            std::string line = report_csv_row(row);
            // drop the time column (fifth field)
            int commas = 0;
            std::string kept;
            std::size_t field_start = 0;
            for (std::size_t i = 0; i <= line.size(); ++i) {
                if (i == line.size() || line[i] == ',') {
                    if (commas != 4) kept += line.substr(field_start, i - field_start) + ",";
                    ++commas;
                    field_start = i + 1;
                }
            }
            out += kept + "\n";
        }
        return out;
    };
    CHECK(strip_time(res1) == strip_time(res2));
    CHECK(res1.slopes.count("greedy-unit") == 1);

    const auto empty = run_benchmark({});
    CHECK(empty.rows.empty());
    CHECK(bench_csv(empty) == "algorithm,n,eps,seed,time_ms,value,reference,status\n");
}
