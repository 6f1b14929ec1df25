// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_DENSITY_HPP
#define DISKMATCH_DENSITY_HPP

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "diskmatch/geometry.hpp"

namespace diskmatch {

namespace grid_detail {

// Mixes the two cell coordinates into one map key. A collision merges two
// candidate lists, which only adds disks that the exact intersection test
// filters out again.
inline std::uint64_t cell_key(long long gx, long long gy) {
    std::uint64_t h = static_cast<std::uint64_t>(gx) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(gy) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline long long cell_of(double coord, double cell_size) {
    return static_cast<long long>(std::floor(coord / cell_size));
}

}  // namespace grid_detail

/// Density of a disk set: the largest number of same-or-larger disks any one
/// disk intersects, counting the disk itself. The brute-force form is the
/// reference for tests; `density` computes the same value through per-class
/// grids and runs in near linear time when the density is small.
inline int density_exact(const std::vector<Disk>& disks) {
    const int n = static_cast<int>(disks.size());
    int best = 0;
    for (int i = 0; i < n; ++i) {
        int count = 1;
        for (int j = 0; j < n; ++j)
            if (j != i && disks[j].r >= disks[i].r && disks_intersect(disks[i], disks[j])) ++count;
        best = std::max(best, count);
    }
    return best;
}

inline int density(const std::vector<Disk>& disks) {
    const int n = static_cast<int>(disks.size());
    if (n == 0) return 0;

    // Radius class c holds radii in [2^c, 2^{c+1}), gridded at cell size 2^{c+1}.
    std::unordered_map<int, std::unordered_map<std::uint64_t, std::vector<int>>> class_grids;
    std::vector<int> klass(n);
    for (int i = 0; i < n; ++i) {
        klass[i] = std::ilogb(disks[i].r);
        const double s = std::ldexp(1.0, klass[i] + 1);
        class_grids[klass[i]][grid_detail::cell_key(grid_detail::cell_of(disks[i].cx, s),
                                                    grid_detail::cell_of(disks[i].cy, s))]
            .push_back(i);
    }
    std::vector<int> classes;
    classes.reserve(class_grids.size());
    for (const auto& [c, _] : class_grids) classes.push_back(c);
    std::sort(classes.begin(), classes.end());

    int best = 0;
    std::vector<int> seen(n, -1);  // key collisions may surface a disk twice
    for (int i = 0; i < n; ++i) {
        int count = 1;
        for (int c : classes) {
            if (c < klass[i]) continue;
            const auto& grid = class_grids.at(c);
            const double s = std::ldexp(1.0, c + 1);
            const double reach = disks[i].r + s;  // s bounds the class's radii
            const long long x0 = grid_detail::cell_of(disks[i].cx - reach, s);
            const long long x1 = grid_detail::cell_of(disks[i].cx + reach, s);
            const long long y0 = grid_detail::cell_of(disks[i].cy - reach, s);
            const long long y1 = grid_detail::cell_of(disks[i].cy + reach, s);
            for (long long gx = x0; gx <= x1; ++gx) {
                for (long long gy = y0; gy <= y1; ++gy) {
                    auto it = grid.find(grid_detail::cell_key(gx, gy));
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        if (j == i || seen[j] == i) continue;
                        seen[j] = i;
                        if (disks[j].r >= disks[i].r && disks_intersect(disks[i], disks[j])) ++count;
                    }
                }
            }
        }
        best = std::max(best, count);
    }
    return best;
}

}  // namespace diskmatch

#endif  // DISKMATCH_DENSITY_HPP
