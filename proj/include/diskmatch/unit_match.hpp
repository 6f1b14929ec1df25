// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_UNIT_MATCH_HPP
#define DISKMATCH_UNIT_MATCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "diskmatch/geometry.hpp"
#include "diskmatch/intersection_graph.hpp"
#include "diskmatch/match_engine.hpp"
#include "diskmatch/matching.hpp"

namespace diskmatch {

/// Disks registered to one lattice point they all contain; the induced graph
/// on the members is a clique.
struct Tower {
    GridPoint point;
    std::vector<int> members;
};

struct UnitEpsParams {
    double eps = 0.5;
    double tall_threshold = 400.0;  // 200 / eps
    int tower_degree_bound = 48;    // neighbors a tower can have edges with

    static UnitEpsParams from_eps(double eps) {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("UnitEpsParams: eps must be in (0,1)");
        return UnitEpsParams{eps, 200.0 / eps, 48};
    }
};

namespace unit_detail {

inline void require_unit(const std::vector<Disk>& disks) {
    for (const Disk& d : disks)
        if (d.r != 1.0) throw std::invalid_argument("unit-disk operation: all radii must be exactly 1");
}

// Lattice coordinates fit 32 bits at any realistic scale, so the packed key
// is collision-free.
inline std::uint64_t point_key(long long i, long long j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(i))) << 32) |
           static_cast<std::uint32_t>(static_cast<std::int32_t>(j));
}

inline std::uint64_t point_key(const GridPoint& p) { return point_key(p.i, p.j); }

inline long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

// Open-addressing point-to-int map. The greedy touches millions of lattice
// points on large inputs; a flat probe table keeps that allocation-free.
class FlatPointMap {
public:
    explicit FlatPointMap(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < expected + expected / 2) cap <<= 1;
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, -1);
        mask_ = cap - 1;
    }

    // Returns the slot for `key`, inserting it with value -1 first if new.
    int& operator[](std::uint64_t key) {
        if (key == kEmpty) return sentinel_val_;  // the point (-1,-1) packs to the sentinel
        std::size_t s = mix(key) & mask_;
        while (keys_[s] != key) {
            if (keys_[s] == kEmpty) {
                keys_[s] = key;
                return vals_[s];
            }
            s = (s + 1) & mask_;
        }
        return vals_[s];
    }

    int find(std::uint64_t key) const {  // -1 when absent
        if (key == kEmpty) return sentinel_val_;
        std::size_t s = mix(key) & mask_;
        while (keys_[s] != key) {
            if (keys_[s] == kEmpty) return -1;
            s = (s + 1) & mask_;
        }
        return vals_[s];
    }

private:
    static constexpr std::uint64_t kEmpty = ~0ULL;
    int sentinel_val_ = -1;

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::vector<std::uint64_t> keys_;
    std::vector<int> vals_;
    std::uint64_t mask_ = 0;
};

// Two intersecting unit disks always have covered lattice points within
// L-infinity distance 2 of each other (their rounded centers), so phase two
// of the greedy scans the 5x5 lattice neighborhood of every active point.
inline const std::vector<std::pair<int, int>>& scan_offsets() {
    static const std::vector<std::pair<int, int>> offsets = [] {
        std::vector<std::pair<int, int>> v;
        for (int di = -2; di <= 2; ++di)
            for (int dj = -2; dj <= 2; ++dj)
                if (di != 0 || dj != 0) v.emplace_back(di, dj);
        return v;
    }();
    return offsets;
}

// Towers can only share edges when their lattice points are at distance at
// most 4; that is 48 candidate neighbor offsets.
inline const std::vector<std::pair<int, int>>& tower_neighbor_offsets() {
    static const std::vector<std::pair<int, int>> offsets = [] {
        std::vector<std::pair<int, int>> v;
        for (int di = -4; di <= 4; ++di)
            for (int dj = -4; dj <= 4; ++dj)
                if ((di != 0 || dj != 0) && di * di + dj * dj <= 16) v.emplace_back(di, dj);
        return v;
    }();
    return offsets;
}

}  // namespace unit_detail

/// Maximal matching for unit disks in expected O(n) time. Phase one pairs
/// disks registered at a shared lattice point; phase two scans each
/// survivor's lattice neighborhood, where at most one survivor per point
/// remains.
inline Matching greedy_unit(const std::vector<Disk>& disks) {
    unit_detail::require_unit(disks);
    const int n = static_cast<int>(disks.size());
    Matching m;
    if (n < 2) return m;

    // One registration record per (covered point, disk), chained per point
    // through `reg_next`; the map only stores chain heads.
    unit_detail::FlatPointMap head(static_cast<std::size_t>(n) * 5);
    std::vector<std::uint64_t> key_order;
    std::vector<int> reg_disk, reg_next;
    reg_disk.reserve(static_cast<std::size_t>(n) * 5);
    reg_next.reserve(static_cast<std::size_t>(n) * 5);
    for (int i = 0; i < n; ++i) {
        for (const GridPoint& p : covered_grid_points(disks[i])) {
            const std::uint64_t key = unit_detail::point_key(p);
            int& slot = head[key];
            if (slot == -1) key_order.push_back(key);
            reg_disk.push_back(i);
            reg_next.push_back(slot);
            slot = static_cast<int>(reg_disk.size()) - 1;
        }
    }

    std::vector<char> alive(n, 1);
    for (auto key : key_order) {
        int pending = -1;
        for (int r = head[key]; r != -1; r = reg_next[r]) {
            const int i = reg_disk[r];
            if (!alive[i]) continue;
            if (pending == -1) {
                pending = i;
            } else {
                m.add(pending, i);
                alive[pending] = alive[i] = 0;
                pending = -1;
            }
        }
    }

    // Phase two scans from each survivor's rounded center; an intersecting
    // survivor always covers a point within the 5x5 window around it.
    for (int d = 0; d < n; ++d) {
        if (!alive[d]) continue;
        const long long pi = unit_detail::round_half_up(disks[d].cx);
        const long long pj = unit_detail::round_half_up(disks[d].cy);
        for (auto [di, dj] : unit_detail::scan_offsets()) {
            int e = -1;
            for (int r = head.find(unit_detail::point_key(pi + di, pj + dj)); r != -1 && e == -1;
                 r = reg_next[r])
                if (alive[reg_disk[r]] && reg_disk[r] != d) e = reg_disk[r];
            if (e != -1 && disks_intersect(disks[d], disks[e])) {
                m.add(d, e);
                alive[d] = alive[e] = 0;
                break;
            }
        }
    }
    m.normalize();
    return m;
}

/// Registers each unit disk to the lexicographically smallest lattice point
/// it contains. Towers come back sorted by lattice point.
inline std::vector<Tower> tower_decompose(const std::vector<Disk>& disks) {
    unit_detail::require_unit(disks);
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<Tower> towers;
    for (int i = 0; i < static_cast<int>(disks.size()); ++i) {
        const auto pts = covered_grid_points(disks[i]);
        const GridPoint home = *std::min_element(pts.begin(), pts.end());
        auto [it, inserted] = slot.try_emplace(unit_detail::point_key(home), towers.size());
        if (inserted) towers.push_back(Tower{home, {}});
        towers[it->second].members.push_back(i);
    }
    std::sort(towers.begin(), towers.end(),
              [](const Tower& a, const Tower& b) { return a.point < b.point; });
    return towers;
}

struct TallTowerReduction {
    Matching partial;           // pairs taken out of towers above the threshold
    std::vector<int> residual;  // surviving disk indices, ascending
};

/// Pairs up and removes every member of a tower holding more than 200/eps
/// disks. Towers never gain members, so a single pass settles all of them.
inline TallTowerReduction tall_tower_reduction(const std::vector<Tower>& towers,
                                               const UnitEpsParams& params) {
    TallTowerReduction out;
    for (const Tower& t : towers) {
        if (static_cast<double>(t.members.size()) > params.tall_threshold) {
            for (std::size_t k = 0; k + 1 < t.members.size(); k += 2)
                out.partial.add(t.members[k], t.members[k + 1]);
            // an odd straggler is removed unmatched
        } else {
            out.residual.insert(out.residual.end(), t.members.begin(), t.members.end());
        }
    }
    std::sort(out.residual.begin(), out.residual.end());
    out.partial.normalize();
    return out;
}

/// Indices into `towers` of the towers within lattice distance 4, per tower.
inline std::vector<std::vector<int>> tower_neighbors(const std::vector<Tower>& towers) {
    std::unordered_map<std::uint64_t, int> index;
    index.reserve(towers.size() * 2);
    for (int t = 0; t < static_cast<int>(towers.size()); ++t)
        index[unit_detail::point_key(towers[t].point)] = t;
    std::vector<std::vector<int>> out(towers.size());
    for (int t = 0; t < static_cast<int>(towers.size()); ++t) {
        for (auto [di, dj] : unit_detail::tower_neighbor_offsets()) {
            auto it = index.find(unit_detail::point_key(towers[t].point.i + di, towers[t].point.j + dj));
            if (it != index.end()) out[t].push_back(it->second);
        }
        std::sort(out[t].begin(), out[t].end());
    }
    return out;
}

struct UnitPipelineTrace {
    std::vector<Tower> towers;       // decomposition of the full input
    Matching tall_matching;          // matching taken while emptying tall towers
    std::vector<int> residual;       // disks surviving the reduction
    std::vector<int> kept;           // disks surviving sparsification
    std::vector<int> tower_surplus;  // members lost per tower, after parity fix
    Matching engine_matching;        // matching of the sparsified graph
    Matching cleanup_matching;       // per-tower greedy over the leftovers
};

namespace unit_detail {

// Intersection graph over `members` restricted to vertices with local
// indices. Tower members form cliques; cross edges are tested pairwise
// against the <= 48 neighboring towers.
inline IntersectionGraph residual_graph(const std::vector<Disk>& disks,
                                        const std::vector<Tower>& towers,
                                        const std::vector<std::vector<int>>& neighbors,
                                        const std::vector<int>& vertices,
                                        const std::vector<int>& local_of) {
    std::vector<std::pair<int, int>> edges;
    for (int t = 0; t < static_cast<int>(towers.size()); ++t) {
        const auto& mem = towers[t].members;
        for (std::size_t a = 0; a < mem.size(); ++a) {
            const int la = local_of[mem[a]];
            if (la < 0) continue;
            for (std::size_t b = a + 1; b < mem.size(); ++b) {
                const int lb = local_of[mem[b]];
                if (lb >= 0) edges.emplace_back(la, lb);  // same point: always intersect
            }
        }
        for (int t2 : neighbors[t]) {
            if (t2 <= t) continue;
            for (int ga : mem) {
                const int la = local_of[ga];
                if (la < 0) continue;
                for (int gb : towers[t2].members) {
                    const int lb = local_of[gb];
                    if (lb < 0) continue;
                    if (disks_intersect(disks[ga], disks[gb])) edges.emplace_back(la, lb);
                }
            }
        }
    }
    return IntersectionGraph::from_edges(static_cast<int>(vertices.size()), std::move(edges));
}

inline Matching approx_unit_impl(const std::vector<Disk>& disks, double eps, UnitPipelineTrace* trace) {
    require_unit(disks);
    const auto params = UnitEpsParams::from_eps(eps);
    const int n = static_cast<int>(disks.size());
    Matching result;
    if (n == 0) return result;

    auto towers = tower_decompose(disks);
    auto reduction = tall_tower_reduction(towers, params);
    result = reduction.partial;

    // Towers restricted to the residual set; tall towers are now empty.
    std::vector<char> in_residual(n, 0);
    for (int i : reduction.residual) in_residual[i] = 1;
    std::vector<Tower> res_towers = towers;
    for (auto& t : res_towers)
        std::erase_if(t.members, [&](int i) { return !in_residual[i]; });

    const auto neighbors = tower_neighbors(res_towers);
    const int cap = params.tower_degree_bound + 1;

    // Sparsification: per adjacent tower pair, a greedy cross-matching of at
    // most cap edges is marked, then up to cap extra cross edges from each
    // matched endpoint. Disks on marked edges are kept; a tower losing an
    // odd number of members gets its lowest-index lost disk back.
    std::vector<char> kept(n, 0);
    for (int t = 0; t < static_cast<int>(res_towers.size()); ++t) {
        for (int t2 : neighbors[t]) {
            if (t2 <= t) continue;
            const auto& ma = res_towers[t].members;
            const auto& mb = res_towers[t2].members;
            if (ma.empty() || mb.empty()) continue;
            std::vector<std::pair<int, int>> cross;
            std::vector<char> used_b(mb.size(), 0);
            for (int a : ma) {
                if (kept[a]) continue;
                if (static_cast<int>(cross.size()) == cap) break;
                for (std::size_t bi = 0; bi < mb.size(); ++bi) {
                    if (used_b[bi] || kept[mb[bi]]) continue;
                    if (disks_intersect(disks[a], disks[mb[bi]])) {
                        cross.emplace_back(a, mb[bi]);
                        used_b[bi] = 1;
                        kept[a] = kept[mb[bi]] = 1;
                        break;
                    }
                }
            }
            for (auto [a, b] : cross) {
                int extra = 0;
                for (int b2 : mb) {
                    if (b2 == b) continue;
                    if (disks_intersect(disks[a], disks[b2])) {
                        kept[b2] = 1;
                        if (++extra == cap) break;
                    }
                }
                extra = 0;
                for (int a2 : ma) {
                    if (a2 == a) continue;
                    if (disks_intersect(disks[b], disks[a2])) {
                        kept[a2] = 1;
                        if (++extra == cap) break;
                    }
                }
            }
        }
    }
    std::vector<int> surplus(res_towers.size(), 0);
    for (int t = 0; t < static_cast<int>(res_towers.size()); ++t) {
        int lost = 0, lowest_lost = -1;
        for (int i : res_towers[t].members) {
            if (!kept[i]) {
                ++lost;
                if (lowest_lost == -1) lowest_lost = i;
            }
        }
        if (lost % 2 == 1) {
            kept[lowest_lost] = 1;
            --lost;
        }
        surplus[t] = lost;
    }

    std::vector<int> kept_list;
    std::vector<int> local_of(n, -1);
    for (int i : reduction.residual)
        if (kept[i]) {
            local_of[i] = static_cast<int>(kept_list.size());
            kept_list.push_back(i);
        }

    Matching engine_local;
    if (!kept_list.empty()) {
        const auto sparse_graph = residual_graph(disks, res_towers, neighbors, kept_list, local_of);
        engine_local = approx_matching_eps(sparse_graph, eps / 8.0);
    }
    Matching engine;
    for (auto [lu, lv] : engine_local.edges) engine.add(kept_list[lu], kept_list[lv]);
    engine.normalize();

    std::vector<char> matched(n, 0);
    for (auto [u, v] : engine.edges) matched[u] = matched[v] = 1;
    Matching cleanup;
    for (const auto& t : res_towers) {
        int pending = -1;
        for (int i : t.members) {
            if (matched[i]) continue;
            if (pending == -1) {
                pending = i;
            } else {
                cleanup.add(pending, i);
                pending = -1;
            }
        }
    }
    cleanup.normalize();

    if (trace) {
        trace->towers = std::move(towers);
        trace->tall_matching = reduction.partial;
        trace->residual = reduction.residual;
        trace->kept = kept_list;
        trace->tower_surplus = surplus;
        trace->engine_matching = engine;
        trace->cleanup_matching = cleanup;
    }

    for (auto e : engine.edges) result.edges.push_back(e);
    for (auto e : cleanup.edges) result.edges.push_back(e);
    result.normalize();
    return result;
}

}  // namespace unit_detail

/// (1 - eps)-approximate maximum matching for unit disks: tall-tower
/// reduction, sparsified residual graph, bounded-length augmentation on the
/// sparse graph, then per-tower greedy cleanup.
inline Matching approx_unit_matching(const std::vector<Disk>& disks, double eps,
                                     UnitPipelineTrace* trace = nullptr) {
    return unit_detail::approx_unit_impl(disks, eps, trace);
}

/// Same pipeline; when the union of disks has diameter at most
/// `diameter_hint`, the residual after reduction is O(diameter^2 / eps).
inline Matching approx_unit_matching_bounded_diam(const std::vector<Disk>& disks, double eps,
                                                  double diameter_hint,
                                                  UnitPipelineTrace* trace = nullptr) {
    if (!(diameter_hint > 0.0))
        throw std::invalid_argument("approx_unit_matching_bounded_diam: diameter hint must be positive");
    return unit_detail::approx_unit_impl(disks, eps, trace);
}

}  // namespace diskmatch

#endif  // DISKMATCH_UNIT_MATCH_HPP
