// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_GEOMETRY_HPP
#define DISKMATCH_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace diskmatch {

using Rng = std::mt19937_64;

/// Closed planar disk. All predicates treat tangency as intersection.
struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double r = 1.0;
};

struct GridPoint {
    long long i = 0;
    long long j = 0;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// A circle is the 1-dimensional boundary curve, not a filled disk.
struct Circle {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
};

inline bool disk_is_valid(const Disk& d) {
    return d.r > 0.0 && std::isfinite(d.cx) && std::isfinite(d.cy) && std::isfinite(d.r);
}

inline double squared_distance(double ax, double ay, double bx, double by) {
    const double dx = ax - bx;
    const double dy = ay - by;
    return dx * dx + dy * dy;
}

// Squared-distance comparison; no square roots, so tangency on representable
// inputs is decided exactly.
inline bool disks_intersect(const Disk& a, const Disk& b) {
    const double rs = a.r + b.r;
    return squared_distance(a.cx, a.cy, b.cx, b.cy) <= rs * rs;
}

inline bool disk_contains_point(const Disk& d, double x, double y) {
    return squared_distance(d.cx, d.cy, x, y) <= d.r * d.r;
}

/// True iff the closed disk meets the circle curve, i.e. the disk overlaps
/// the annulus |dist - radius| <= d.r. Evaluated with squared distances.
inline bool disk_intersects_circle(const Disk& d, const Circle& c) {
    const double d2 = squared_distance(d.cx, d.cy, c.cx, c.cy);
    const double outer = c.radius + d.r;
    if (d2 > outer * outer) return false;  // disk entirely outside the circle
    const double inner = c.radius - d.r;
    if (inner <= 0.0) return true;         // disk reaches the circle's center
    return d2 >= inner * inner;            // not strictly inside either
}

/// Integer lattice points covered by a unit disk, in (i, j) ascending order.
/// A unit disk covers between one and five lattice points.
inline std::vector<GridPoint> covered_grid_points(const Disk& d) {
    if (d.r != 1.0) throw std::invalid_argument("covered_grid_points: disk radius must be exactly 1");
    std::vector<GridPoint> out;
    const long long ilo = static_cast<long long>(std::ceil(d.cx - 1.0));
    const long long ihi = static_cast<long long>(std::floor(d.cx + 1.0));
    const long long jlo = static_cast<long long>(std::ceil(d.cy - 1.0));
    const long long jhi = static_cast<long long>(std::floor(d.cy + 1.0));
    for (long long i = ilo; i <= ihi; ++i) {
        for (long long j = jlo; j <= jhi; ++j) {
            if (disk_contains_point(d, static_cast<double>(i), static_cast<double>(j)))
                out.push_back({i, j});
        }
    }
    return out;
}

/// Circle centered at (cx, cy) with radius drawn uniformly from [alpha, 2*alpha].
inline Circle random_circle(double cx, double cy, double alpha, Rng& rng) {
    if (!(alpha > 0.0)) throw std::invalid_argument("random_circle: alpha must be positive");
    std::uniform_real_distribution<double> dist(alpha, 2.0 * alpha);
    return Circle{cx, cy, dist(rng)};
}

}  // namespace diskmatch

#endif  // DISKMATCH_GEOMETRY_HPP
