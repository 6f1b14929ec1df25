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
#include <random>

#include "diskmatch/general_match.hpp"
#include "diskmatch/neighbor_index.hpp"
#include "oracle_utils.hpp"

using namespace diskmatch;

namespace {

IntersectionGraph bipartite_graph(const std::vector<Disk>& d1, const std::vector<Disk>& d2) {
    std::vector<std::pair<int, int>> edges;
    const int n1 = static_cast<int>(d1.size());
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < static_cast<int>(d2.size()); ++j)
            if (disks_intersect(d1[i], d2[j])) edges.emplace_back(i, n1 + j);
    return IntersectionGraph::from_edges(n1 + static_cast<int>(d2.size()), std::move(edges));
}

int bipartite_k_opt(const std::vector<Disk>& d1, const std::vector<Disk>& d2) {
    return exact_maximum_matching(bipartite_graph(d1, d2)).size();
}

}  // namespace

TEST_CASE("neighbor index basics", "[general_match]") {
    const std::vector<Disk> one{{0, 0, 1}};
    GeomNeighborIndex idx(one);
    auto hit = idx.query({1.5, 0, 1});
    REQUIRE(hit.has_value());
    CHECK(*hit == 0);
    idx.erase(0);
    CHECK_FALSE(idx.query({1.5, 0, 1}).has_value());
    CHECK_THROWS_AS(idx.erase(0), std::invalid_argument);  // double delete
    CHECK_THROWS_AS(idx.erase(5), std::invalid_argument);

    GeomNeighborIndex idx2(one);
    CHECK_FALSE(idx2.query({10, 10, 1}).has_value());
}

TEST_CASE("neighbor index agrees with a linear-scan mirror", "[general_match]") {
    std::mt19937_64 rng(13);
    const auto disks = testing::random_mixed_disks(800, 50.0, 21);
    GeomNeighborIndex idx(disks);
    std::vector<char> alive(disks.size(), 1);

    std::uniform_real_distribution<double> c(-5.0, 55.0), r(0.01, 12.0), u(0, 1);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(disks.size()) - 1);
    int deletions = 0;
    for (int op = 0; op < 10000; ++op) {
        if (u(rng) < 0.35 && deletions < static_cast<int>(disks.size())) {
            int id = pick(rng);
            while (!alive[id]) id = (id + 1) % static_cast<int>(disks.size());
            idx.erase(id);
            alive[id] = 0;
            ++deletions;
        } else {
            const Disk q{c(rng), c(rng), r(rng)};
            const auto got = idx.query(q);
            bool any = false;
            for (std::size_t i = 0; i < disks.size() && !any; ++i)
                any = alive[i] && disks_intersect(q, disks[i]);
            REQUIRE(got.has_value() == any);
            if (got) {
                REQUIRE(alive[*got]);
                REQUIRE(disks_intersect(q, disks[*got]));
            }
        }
    }
}

TEST_CASE("bipartite matching basics", "[general_match]") {
    CHECK(bipartite_geom_matching({{0, 0, 1}}, {{1, 0, 1}}, 0.5).size() == 1);

    std::vector<Disk> d1, d2;
    for (int i = 0; i < 5; ++i) {
        d1.push_back({i * 100.0, 0, 1});
        d2.push_back({i * 100.0 + 50.0, 0, 1});
    }
    CHECK(bipartite_geom_matching(d1, d2, 0.5).size() == 0);
    CHECK(bipartite_geom_matching({}, {}, 0.5).size() == 0);
    CHECK_THROWS_AS(bipartite_geom_matching(d1, d2, 0.0), std::invalid_argument);
}

TEST_CASE("bipartite matching meets the bound and leaves no short path", "[general_match]") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const int n = 30 + static_cast<int>(seed % 91);
        const auto all = testing::random_unit_disks(n, 6.0 + static_cast<double>(seed % 5), seed);
        const std::vector<Disk> d1(all.begin(), all.begin() + n / 2);
        const std::vector<Disk> d2(all.begin() + n / 2, all.end());
        const int k_opt = bipartite_k_opt(d1, d2);
        for (const double eps : {0.5, 0.1}) {
            const auto m = bipartite_geom_matching(d1, d2, eps);
            REQUIRE(is_valid_matching(m, bipartite_graph(d1, d2)));
            REQUIRE(m.size() >= static_cast<int>(std::ceil((1.0 - eps) * k_opt)));
            // no augmenting path shorter than 4/eps remains
            const int limit = static_cast<int>(std::ceil(4.0 / eps)) - 1;
            REQUIRE_FALSE(testing::reference_has_short_augmenting_path(
                bipartite_graph(d1, d2), m, std::min(limit, 9)));
        }
    }
}

TEST_CASE("random coloring matching", "[general_match]") {
    Rng rng(4);
    CHECK(random_coloring_matching({{0, 0, 1}, {1, 0, 1}}, 0.5, rng).size() == 1);
    CHECK(random_coloring_matching({{0, 0, 1}, {1, 0, 1}, {9, 0, 1}, {10, 0, 1}}, 0.5, rng).size() == 2);
    CHECK(random_coloring_matching({}, 0.5, rng).size() == 0);
    CHECK_THROWS_AS(random_coloring_matching({{0, 0, 1}}, 2.0, rng), std::invalid_argument);

    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto disks = testing::random_mixed_disks(50 + static_cast<int>(seed % 31), 15.0, seed,
                                                       0.3, 3.0);
        Rng run_rng(seed * 101);
        const auto m = random_coloring_matching(disks, 0.5, run_rng);
        REQUIRE(is_valid_matching(m, disks));
        const auto g = IntersectionGraph::from_edges(static_cast<int>(disks.size()),
                                                     testing::brute_force_edges(disks));
        const int k_opt = exact_maximum_matching(g).size();
        REQUIRE(m.size() >= static_cast<int>(std::ceil(0.5 * k_opt)));
        REQUIRE_FALSE(testing::reference_has_short_augmenting_path(g, m, 8));
    }
}

TEST_CASE("free-disk classification", "[general_match]") {
    // no matched disks: a single empty-signature class
    auto classes = classify_free_disks({}, {{0, 0, 1}, {5, 5, 1}});
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].members.size() == 2);

    classes = classify_free_disks({{0, 0, 1}}, {{1, 0, 1}, {10, 0, 1}});
    REQUIRE(classes.size() == 2);

    std::mt19937_64 rng(3);
    const auto matched = testing::random_mixed_disks(14, 8.0, 31, 0.5, 2.0);
    std::vector<Disk> free;
    for (int i = 0; i < 60; ++i) free.push_back({i * 0.9, 10.0 * (i % 2) - 4.0, 0.2});
    classes = classify_free_disks(matched, free);
    std::size_t members = 0;
    for (const auto& cls : classes) {
        members += cls.members.size();
        for (int f : cls.members)
            for (int j = 0; j < static_cast<int>(matched.size()); ++j)
                REQUIRE(cls.intersects_matched(j) == disks_intersect(free[f], matched[j]));
    }
    REQUIRE(members == free.size());
}

TEST_CASE("small-matching solver", "[general_match]") {
    // all disjoint: greedy empty, exact matching empty
    std::vector<Disk> far;
    for (int i = 0; i < 40; ++i) far.push_back({i * 10.0, 0, 1});
    auto res = small_matching_exact(far);
    REQUIRE(res.has_value());
    CHECK(res->size() == 0);

    // one pair plus many free disks intersecting both members: trimming keeps
    // the optimum reachable
    std::vector<Disk> gadget{{0, 0, 1}, {1, 0, 1}};
    for (int k = 0; k < 3000; ++k)
        gadget.push_back({0.5, -0.45 + 0.9 * k / 3000.0, 1e-4});
    res = small_matching_exact(gadget, 4.0);
    REQUIRE(res.has_value());
    const int oracle = exact_maximum_matching(
                           IntersectionGraph::from_edges(static_cast<int>(gadget.size()),
                                                         testing::brute_force_edges(gadget)))
                           .size();
    CHECK(res->size() == oracle);

    // dense instance: greedy exceeds the cap
    const auto crowded = testing::random_unit_disks(600, 12.0, 8);
    CHECK_FALSE(small_matching_exact(crowded).has_value());
}

TEST_CASE("trimming preserves the optimum", "[general_match]") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto disks = testing::random_mixed_disks(120, 90.0, seed, 0.5, 2.0);
        std::vector<int> trimmed;
        const auto res = small_matching_exact(disks, 4.0, &trimmed);
        if (!res) continue;
        const auto g_full = IntersectionGraph::from_edges(static_cast<int>(disks.size()),
                                                          testing::brute_force_edges(disks));
        std::vector<Disk> sub;
        for (int i : trimmed) sub.push_back(disks[i]);
        const auto g_trim = IntersectionGraph::from_edges(static_cast<int>(sub.size()),
                                                          testing::brute_force_edges(sub));
        REQUIRE(exact_maximum_matching(g_trim).size() == exact_maximum_matching(g_full).size());
        REQUIRE(res->size() == exact_maximum_matching(g_full).size());
    }
}
