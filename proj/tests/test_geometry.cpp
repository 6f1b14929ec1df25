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

#include <algorithm>
#include <cmath>
#include <random>

#include "diskmatch/geometry.hpp"

using namespace diskmatch;

TEST_CASE("disk intersection basics", "[geometry]") {
    CHECK(disks_intersect({0, 0, 1}, {2, 0, 1}));            // tangent closed disks touch
    CHECK_FALSE(disks_intersect({0, 0, 1}, {2.0000001, 0, 1}));
    CHECK(disks_intersect({0, 0, 5}, {1, 1, 0.1}));          // containment is intersection
}

TEST_CASE("disk intersection is symmetric", "[geometry]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> c(-10, 10), r(0.01, 5.0);
    for (int t = 0; t < 20000; ++t) {
        const Disk a{c(rng), c(rng), r(rng)}, b{c(rng), c(rng), r(rng)};
        CHECK(disks_intersect(a, b) == disks_intersect(b, a));
    }
}

TEST_CASE("covered grid points of unit disks", "[geometry]") {
    auto pts = covered_grid_points({0.5, 0.5, 1});
    REQUIRE(pts.size() == 4);
    CHECK(pts == std::vector<GridPoint>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    pts = covered_grid_points({0, 0, 1});
    REQUIRE(pts.size() == 5);  // lattice-centered disk: the five-point case
    CHECK(std::find(pts.begin(), pts.end(), GridPoint{0, 0}) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), GridPoint{-1, 0}) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), GridPoint{1, 0}) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), GridPoint{0, -1}) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), GridPoint{0, 1}) != pts.end());

    // brute-force the 3x3 candidate neighborhood
    const Disk d{0.2, 0.3, 1};
    std::vector<GridPoint> expected;
    for (long long i = -1; i <= 1; ++i)
        for (long long j = -1; j <= 1; ++j)
            if (std::pow(i - d.cx, 2) + std::pow(j - d.cy, 2) <= 1.0) expected.push_back({i, j});
    CHECK(covered_grid_points(d) == expected);

    CHECK_THROWS_AS(covered_grid_points({0, 0, 2}), std::invalid_argument);
}

TEST_CASE("covered grid point count is 1..5 and points lie inside", "[geometry]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-1000, 1000);
    for (int t = 0; t < 1000000; ++t) {
        const Disk d{c(rng), c(rng), 1.0};
        const auto pts = covered_grid_points(d);
        REQUIRE(pts.size() >= 1);
        REQUIRE(pts.size() <= 5);
        for (const auto& p : pts) {
            const double dx = static_cast<double>(p.i) - d.cx;
            const double dy = static_cast<double>(p.j) - d.cy;
            REQUIRE(dx * dx + dy * dy <= 1.0);
        }
    }
}

TEST_CASE("disk vs circle predicate", "[geometry]") {
    CHECK(disk_intersects_circle({0, 0, 1}, {0, 0, 0.5}));  // circle runs inside the disk
    CHECK(disk_intersects_circle({1.2, 0, 0.5}, {0, 0, 1.5}));  // circle crosses the disk
    CHECK_FALSE(disk_intersects_circle({0, 0, 1}, {0, 0, 3}));  // disk strictly inside
    CHECK_FALSE(disk_intersects_circle({0, 0, 1}, {0, 0, 1.5}));  // inside, circle out of reach
    CHECK_FALSE(disk_intersects_circle({5, 0, 1}, {0, 0, 3}));  // disk strictly outside
}

TEST_CASE("disk vs circle agrees with sampled boundary", "[geometry]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> c(-5, 5), dr(0.05, 3.0), cr(0.05, 4.0);
    constexpr int kSamples = 4096;
    int checked_against_referee = 0;
    for (int t = 0; t < 100000; ++t) {
        const Disk d{c(rng), c(rng), dr(rng)};
        const Circle cc{c(rng), c(rng), cr(rng)};
        bool sampled = false;
        for (int s = 0; s < kSamples && !sampled; ++s) {
            const double a = 2.0 * M_PI * s / kSamples;
            sampled = disk_contains_point(d, cc.cx + cc.radius * std::cos(a),
                                          cc.cy + cc.radius * std::sin(a));
        }
        const bool predicate = disk_intersects_circle(d, cc);
        if (predicate != sampled) {
            // sampling can step over a grazing contact; the exact annulus
            // distance is the referee
            const double dist = std::sqrt(squared_distance(d.cx, d.cy, cc.cx, cc.cy));
            REQUIRE(predicate == (std::abs(dist - cc.radius) <= d.r));
            ++checked_against_referee;
        }
    }
    CHECK(checked_against_referee < 1000);  // disagreements must stay rare grazing cases
}

TEST_CASE("random circle radius law", "[geometry]") {
    Rng rng(5);
    const double alpha = 1.0;
    double sum = 0.0;
    for (int t = 0; t < 100000; ++t) {
        const Circle c = random_circle(0, 0, alpha, rng);
        REQUIRE(c.radius >= alpha);
        REQUIRE(c.radius <= 2 * alpha);
        sum += c.radius;
    }
    CHECK(sum / 100000.0 == Catch::Approx(1.5 * alpha).epsilon(0.01));

    Rng r1(42), r2(42);
    CHECK(random_circle(0, 0, 2.0, r1).radius == random_circle(0, 0, 2.0, r2).radius);
    CHECK_THROWS_AS(random_circle(0, 0, 0.0, rng), std::invalid_argument);
}
