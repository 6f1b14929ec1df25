// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_MATCHING_HPP
#define DISKMATCH_MATCHING_HPP

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskmatch/geometry.hpp"

namespace diskmatch {

/// A set of vertex-disjoint edges over vertex (disk) indices.
/// Edges are stored normalized (u < v); helpers keep them sorted.
struct Matching {
    std::vector<std::pair<int, int>> edges;

    int size() const { return static_cast<int>(edges.size()); }
    bool empty() const { return edges.empty(); }

    void add(int u, int v) {
        if (u == v) throw std::invalid_argument("Matching::add: self-loop");
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }

    void normalize() { std::sort(edges.begin(), edges.end()); }

    /// mate[v] = matched partner of v, or -1.
    std::vector<int> to_mate(int n) const {
        std::vector<int> mate(n, -1);
        for (auto [u, v] : edges) {
            if (u < 0 || v >= n) throw std::out_of_range("Matching::to_mate: vertex out of range");
            if (mate[u] != -1 || mate[v] != -1)
                throw std::invalid_argument("Matching::to_mate: matching is not vertex-disjoint");
            mate[u] = v;
            mate[v] = u;
        }
        return mate;
    }

    static Matching from_mate(const std::vector<int>& mate) {
        Matching m;
        for (int v = 0; v < static_cast<int>(mate.size()); ++v)
            if (mate[v] > v) m.add(v, mate[v]);
        m.normalize();
        return m;
    }
};

inline bool is_vertex_disjoint(const Matching& m) {
    std::vector<int> seen;
    seen.reserve(2 * m.edges.size());
    for (auto [u, v] : m.edges) {
        if (u == v) return false;
        seen.push_back(u);
        seen.push_back(v);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

/// Every edge joins a genuinely intersecting pair and no index repeats.
inline bool is_valid_matching(const Matching& m, const std::vector<Disk>& disks) {
    const int n = static_cast<int>(disks.size());
    if (!is_vertex_disjoint(m)) return false;
    for (auto [u, v] : m.edges) {
        if (u < 0 || v >= n) return false;
        if (!disks_intersect(disks[u], disks[v])) return false;
    }
    return true;
}

}  // namespace diskmatch

#endif  // DISKMATCH_MATCHING_HPP
