// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_NEIGHBOR_INDEX_HPP
#define DISKMATCH_NEIGHBOR_INDEX_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "diskmatch/density.hpp"
#include "diskmatch/geometry.hpp"

namespace diskmatch {

/// Deletable spatial index over a set of disks. query() hands back some
/// undeleted disk intersecting the probe, or nothing; erase() removes a disk
/// for good. Disks are bucketed per radius class into uniform grids; queries
/// visit the grid cells in reach, or fall back to the class's member list
/// when that is cheaper. Deletion is lazy.
class GeomNeighborIndex {
public:
    explicit GeomNeighborIndex(const std::vector<Disk>& disks)
        : GeomNeighborIndex(disks, all_ids(disks.size())) {}

    GeomNeighborIndex(const std::vector<Disk>& disks, const std::vector<int>& ids)
        : disks_(&disks), alive_(disks.size(), 0) {
        for (int id : ids) {
            if (id < 0 || id >= static_cast<int>(disks.size()))
                throw std::out_of_range("GeomNeighborIndex: id out of range");
            const Disk& d = disks[id];
            const int c = std::ilogb(d.r);
            auto& cls = classes_[c];
            if (cls.cell == 0.0) cls.cell = std::ldexp(1.0, c + 1);
            cls.buckets[grid_detail::cell_key(grid_detail::cell_of(d.cx, cls.cell),
                                              grid_detail::cell_of(d.cy, cls.cell))]
                .push_back(id);
            cls.members.push_back(id);
            ++cls.alive;
            alive_[id] = 1;
            ++alive_count_;
        }
        for (auto& [c, cls] : classes_) {
            std::sort(cls.members.begin(), cls.members.end());
            for (auto& [key, bucket] : cls.buckets) std::sort(bucket.begin(), bucket.end());
        }
    }

    int alive_count() const { return alive_count_; }

    /// Some undeleted disk intersecting q, lowest candidate first per class.
    std::optional<int> query(const Disk& q) const {
        for (const auto& [c, cls] : classes_) {
            if (cls.alive == 0) continue;
            const double reach = q.r + cls.cell;  // cell size bounds the class's radii
            const long long x0 = grid_detail::cell_of(q.cx - reach, cls.cell);
            const long long x1 = grid_detail::cell_of(q.cx + reach, cls.cell);
            const long long y0 = grid_detail::cell_of(q.cy - reach, cls.cell);
            const long long y1 = grid_detail::cell_of(q.cy + reach, cls.cell);
            const double cells = static_cast<double>(x1 - x0 + 1) * static_cast<double>(y1 - y0 + 1);
            if (cells > static_cast<double>(cls.alive)) {
                for (int id : cls.members)
                    if (alive_[id] && disks_intersect(q, (*disks_)[id])) return id;
            } else {
                for (long long gx = x0; gx <= x1; ++gx) {
                    for (long long gy = y0; gy <= y1; ++gy) {
                        auto it = cls.buckets.find(grid_detail::cell_key(gx, gy));
                        if (it == cls.buckets.end()) continue;
                        for (int id : it->second)
                            if (alive_[id] && disks_intersect(q, (*disks_)[id])) return id;
                    }
                }
            }
        }
        return std::nullopt;
    }

    void erase(int id) {
        if (id < 0 || id >= static_cast<int>(alive_.size()) || !alive_[id])
            throw std::invalid_argument("GeomNeighborIndex: erase of unknown or deleted id");
        alive_[id] = 0;
        --alive_count_;
        --classes_.at(std::ilogb((*disks_)[id].r)).alive;
    }

private:
    struct ClassGrid {
        double cell = 0.0;
        std::unordered_map<std::uint64_t, std::vector<int>> buckets;
        std::vector<int> members;
        int alive = 0;
    };

    static std::vector<int> all_ids(std::size_t n) {
        std::vector<int> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
        return ids;
    }

    const std::vector<Disk>* disks_;
    std::map<int, ClassGrid> classes_;  // ordered so queries scan classes deterministically
    std::vector<char> alive_;
    int alive_count_ = 0;
};

}  // namespace diskmatch

#endif  // DISKMATCH_NEIGHBOR_INDEX_HPP
