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

#include <cmath>

#include "diskmatch/match_engine.hpp"
#include "oracle_utils.hpp"

using namespace diskmatch;

namespace {

IntersectionGraph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return IntersectionGraph::from_edges(n, std::move(edges));
}

IntersectionGraph path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return IntersectionGraph::from_edges(n, std::move(edges));
}

IntersectionGraph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return IntersectionGraph::from_edges(a + b, std::move(edges));
}

std::vector<int> sides(int a, int b) {
    std::vector<int> s(a + b, 0);
    for (int j = 0; j < b; ++j) s[a + j] = 1;
    return s;
}

}  // namespace

TEST_CASE("exact matching on structured graphs", "[match_engine]") {
    CHECK(exact_maximum_matching(cycle(3)).size() == 1);   // triangle
    CHECK(exact_maximum_matching(cycle(9)).size() == 4);   // odd cycle forces blossoms
    CHECK(exact_maximum_matching(cycle(10)).size() == 5);
    CHECK(exact_maximum_matching(path(6)).size() == 3);
    CHECK(exact_maximum_matching(IntersectionGraph::from_edges(4, {})).size() == 0);

    // Petersen graph has a perfect matching
    const std::vector<std::pair<int, int>> petersen = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
        {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
    };
    CHECK(exact_maximum_matching(IntersectionGraph::from_edges(10, petersen)).size() == 5);
}

TEST_CASE("exact matching agrees with subset DP", "[match_engine]") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const int n = 4 + static_cast<int>(seed % 13);
        const double p = 0.1 + 0.07 * static_cast<double>(seed % 10);
        const auto g = testing::random_graph(n, p, seed);
        const auto m = exact_maximum_matching(g);
        REQUIRE(is_valid_matching(m, g));
        REQUIRE(m.size() == testing::max_matching_subset_dp(g));
    }
}

TEST_CASE("exact matching agrees with Tutte rank on G(40, 0.2)", "[match_engine]") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto g = testing::random_graph(40, 0.2, seed);
        REQUIRE(exact_maximum_matching(g).size() == testing::tutte_matching_size(g, seed * 1000 + 7));
    }
}

TEST_CASE("disjoint augmenting path rounds", "[match_engine]") {
    const auto single = IntersectionGraph::from_edges(2, {{0, 1}});
    auto paths = find_disjoint_augmenting_paths(single, Matching{}, 1);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].length() == 1);

    Matching perfect;
    perfect.add(0, 1);
    CHECK(find_disjoint_augmenting_paths(single, perfect, 3).empty());

    CHECK_THROWS_AS(find_disjoint_augmenting_paths(single, Matching{}, 0), std::invalid_argument);
}

TEST_CASE("augment-to-exhaustion clears short paths", "[match_engine]") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 8 + static_cast<int>(seed % 23);
        const auto g = testing::random_graph(n, 0.15, seed * 41 + 17);
        Matching m = greedy_matching_on_graph(g);
        const int maxlen = 3;
        while (true) {
            const auto paths = find_disjoint_augmenting_paths(g, m, maxlen);
            if (paths.empty()) break;
            auto mate = m.to_mate(g.n);
            for (const auto& p : paths) {
                REQUIRE(is_augmenting_path(p, g, m));
                REQUIRE(p.length() <= maxlen);
                apply_augmenting_path(mate, p.vertices);
            }
            m = Matching::from_mate(mate);
        }
        REQUIRE_FALSE(testing::reference_has_short_augmenting_path(g, m, maxlen));
    }
}

TEST_CASE("short-path guarantee when the matching is small", "[match_engine]") {
    int interesting = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int n = 10 + static_cast<int>(seed % 51);
        const auto g = testing::random_graph(n, 0.12, seed * 31 + 5);
        const auto greedy = greedy_matching_on_graph(g);
        const int k_opt = exact_maximum_matching(g).size();
        const double eps = (seed % 2) ? 0.5 : 0.2;
        if (greedy.size() >= (1.0 - eps) * k_opt) continue;
        ++interesting;
        const int maxlen = static_cast<int>(std::ceil(4.0 / eps));
        REQUIRE_FALSE(find_disjoint_augmenting_paths(g, greedy, maxlen).empty());
    }
    INFO("instances with a real deficit: " << interesting);
}

TEST_CASE("approximate matching honors its bound", "[match_engine]") {
    const auto single = IntersectionGraph::from_edges(2, {{0, 1}});
    CHECK(approx_matching_eps(single, 0.5).size() == 1);
    CHECK(approx_matching_eps(path(5), 0.1).size() == 2);
    CHECK_THROWS_AS(approx_matching_eps(single, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(approx_matching_eps(single, 1.0), std::invalid_argument);

    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int n = 10 + static_cast<int>(seed % 111);
        const auto g = testing::random_graph(n, 6.0 / n, seed * 13 + 1);
        const int k_opt = exact_maximum_matching(g).size();
        for (const double eps : {0.5, 0.2, 0.1}) {
            const auto m = approx_matching_eps(g, eps);
            REQUIRE(is_valid_matching(m, g));
            REQUIRE(m.size() >= static_cast<int>(std::ceil((1.0 - eps) * k_opt)));
            REQUIRE(m.size() <= k_opt);  // the exact size dominates every heuristic
        }
    }
}

TEST_CASE("hopcroft-karp phases", "[match_engine]") {
    const auto k11 = complete_bipartite(1, 1);
    auto r = hopcroft_karp_phase(k11, sides(1, 1), Matching{});
    CHECK(r.matching.size() == 1);
    CHECK(r.shortest_length == 1);

    const auto k33 = complete_bipartite(3, 3);
    r = hopcroft_karp_phase(k33, sides(3, 3), Matching{});
    CHECK(r.matching.size() == 3);  // three disjoint length-1 paths in one phase

    const auto tri = cycle(3);
    CHECK_THROWS_AS(hopcroft_karp_phase(tri, std::vector<int>{0, 1, 0}, Matching{}),
                    std::invalid_argument);
}

TEST_CASE("hopcroft-karp phase lengths strictly increase", "[match_engine]") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int half = 8 + static_cast<int>(seed % 25);
        std::mt19937_64 rng(seed * 77);
        std::uniform_real_distribution<double> u(0, 1);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j)
                if (u(rng) < 2.5 / half) edges.emplace_back(i, half + j);
        const auto g = IntersectionGraph::from_edges(2 * half, edges);
        const auto side = sides(half, half);

        Matching m;
        int prev_len = 0;
        int phases = 0;
        while (true) {
            const auto phase = hopcroft_karp_phase(g, side, m);
            if (phase.shortest_length < 0) break;
            REQUIRE(phase.shortest_length > prev_len);
            REQUIRE(phase.matching.size() > m.size());
            prev_len = phase.shortest_length;
            m = phase.matching;
            ++phases;
        }
        REQUIRE(m.size() == exact_maximum_matching(g).size());
        REQUIRE(phases <= 2 * static_cast<int>(std::ceil(std::sqrt(2.0 * half))) + 5);
    }
}

TEST_CASE("exact matcher dominates every other engine output", "[match_engine]") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int n = 6 + static_cast<int>(seed % 40);
        const auto g = testing::random_graph(n, 0.2, seed * 3 + 11);
        const int exact = exact_maximum_matching(g).size();
        CHECK(greedy_matching_on_graph(g).size() <= exact);
        CHECK(approx_matching_eps(g, 0.3).size() <= exact);
    }
}
