// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_SWEEP_HPP
#define DISKMATCH_SWEEP_HPP

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "diskmatch/geometry.hpp"
#include "diskmatch/intersection_graph.hpp"
#include "diskmatch/matching.hpp"

namespace diskmatch {

namespace sweep_detail {

enum EventKind : int { kInsert = 0, kRemove = 1 };

struct Event {
    double x;
    int kind;  // inserts before removes at equal x, so tangent pairs meet
    int disk;

    bool operator<(const Event& o) const {
        return std::tie(x, kind, disk) < std::tie(o.x, o.kind, o.disk);
    }
};

inline std::vector<Event> extreme_events(const std::vector<Disk>& disks) {
    std::vector<Event> ev;
    ev.reserve(2 * disks.size());
    for (int i = 0; i < static_cast<int>(disks.size()); ++i) {
        ev.push_back({disks[i].cx - disks[i].r, kInsert, i});
        ev.push_back({disks[i].cx + disks[i].r, kRemove, i});
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace sweep_detail

/// Greedy maximal matching by a left-to-right plane sweep. Whenever an
/// intersecting pair is discovered, it is reported as a matching edge and
/// both disks are deleted on the spot, so the status structure only ever
/// holds pairwise-disjoint disks.
///
/// Disjoint disks cut any vertical line in disjoint chords, each containing
/// its own center ordinate, so the status can be kept ordered by the static
/// key (cy, index). Every pair that would come to overlap is adjacent in
/// that order at the last event before the overlap starts: the disks whose
/// chords separate them either end (a remove event) or would have to overlap
/// one of the two earlier. Testing disk intersection on every adjacency
/// change (insert, remove, deletion closure) therefore finds all pairs, and
/// the leftover disks are pairwise disjoint.
inline Matching greedy_matching_sweep(const std::vector<Disk>& disks) {
    const int n = static_cast<int>(disks.size());
    Matching result;
    if (n < 2) return result;

    using Key = std::pair<double, int>;  // (cy, disk index)
    std::set<Key> status;
    std::vector<char> alive(n, 1);
    std::vector<char> in_status(n, 0);

    auto key_of = [&](int i) { return Key{disks[i].cy, i}; };

    auto erase_from_status = [&](int i, std::vector<std::pair<int, int>>& closures) {
        auto it = status.find(key_of(i));
        int lo = -1, hi = -1;
        if (it != status.begin()) lo = std::prev(it)->second;
        auto nx = std::next(it);
        if (nx != status.end()) hi = nx->second;
        status.erase(it);
        in_status[i] = 0;
        if (lo != -1 && hi != -1) closures.emplace_back(lo, hi);
    };

    // Deletes a discovered pair and keeps testing the adjacencies its removal
    // exposes; each cascade step removes two disks, so total work is linear.
    auto match_pair = [&](int a, int b) {
        std::vector<std::pair<int, int>> closures;
        result.add(a, b);
        alive[a] = alive[b] = 0;
        if (in_status[a]) erase_from_status(a, closures);
        if (in_status[b]) erase_from_status(b, closures);
        while (!closures.empty()) {
            auto [u, v] = closures.back();
            closures.pop_back();
            if (!alive[u] || !alive[v]) continue;
            if (!disks_intersect(disks[u], disks[v])) continue;
            result.add(u, v);
            alive[u] = alive[v] = 0;
            if (in_status[u]) erase_from_status(u, closures);
            if (in_status[v]) erase_from_status(v, closures);
        }
    };

    for (const auto& ev : sweep_detail::extreme_events(disks)) {
        const int i = ev.disk;
        if (!alive[i]) continue;
        if (ev.kind == sweep_detail::kInsert) {
            auto [it, ok] = status.insert(key_of(i));
            in_status[i] = 1;
            (void)ok;
            int below = -1, above = -1;
            if (it != status.begin()) below = std::prev(it)->second;
            auto nx = std::next(it);
            if (nx != status.end()) above = nx->second;
            if (below != -1 && disks_intersect(disks[i], disks[below])) {
                match_pair(i, below);
            } else if (above != -1 && disks_intersect(disks[i], disks[above])) {
                match_pair(i, above);
            }
        } else {
            std::vector<std::pair<int, int>> closures;
            erase_from_status(i, closures);
            if (!closures.empty()) {
                auto [u, v] = closures.front();
                if (alive[u] && alive[v] && disks_intersect(disks[u], disks[v])) match_pair(u, v);
            }
        }
    }
    result.normalize();
    return result;
}

/// Explicit intersection graph via the same sweep order. At each insert the
/// new disk is tested against the disks whose center ordinate lies within
/// r + max alive radius; every intersecting pair (boundary crossings and
/// containments alike) has overlapping x-ranges and a center-gap within that
/// band, so at the later insert of the pair the earlier disk is in the scan
/// range. All candidate pairs are settled by the exact disk predicate.
inline IntersectionGraph build_intersection_graph(const std::vector<Disk>& disks) {
    const int n = static_cast<int>(disks.size());
    std::vector<std::pair<int, int>> edges;
    if (n < 2) return IntersectionGraph::from_edges(n, std::move(edges));

    using Key = std::pair<double, int>;
    std::set<Key> status;
    std::multiset<double> radii;

    for (const auto& ev : sweep_detail::extreme_events(disks)) {
        const int i = ev.disk;
        const Disk& d = disks[i];
        if (ev.kind == sweep_detail::kRemove) {
            status.erase(Key{d.cy, i});
            radii.erase(radii.find(d.r));
            continue;
        }
        if (!status.empty()) {
            const double band = d.r + *radii.rbegin();
            auto anchor = status.lower_bound(Key{d.cy, i});
            for (auto it = anchor; it != status.end() && it->first - d.cy <= band; ++it)
                if (disks_intersect(d, disks[it->second])) edges.emplace_back(i, it->second);
            for (auto it = anchor; it != status.begin();) {
                --it;
                if (d.cy - it->first > band) break;
                if (disks_intersect(d, disks[it->second])) edges.emplace_back(i, it->second);
            }
        }
        status.insert(Key{d.cy, i});
        radii.insert(d.r);
    }
    return IntersectionGraph::from_edges(n, std::move(edges));
}

}  // namespace diskmatch

#endif  // DISKMATCH_SWEEP_HPP
