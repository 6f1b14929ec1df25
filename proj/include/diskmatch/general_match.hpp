// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_GENERAL_MATCH_HPP
#define DISKMATCH_GENERAL_MATCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "diskmatch/geometry.hpp"
#include "diskmatch/match_engine.hpp"
#include "diskmatch/matching.hpp"
#include "diskmatch/neighbor_index.hpp"
#include "diskmatch/sweep.hpp"

namespace diskmatch {

/// (1 - eps)-approximate maximum matching of the bipartite intersection
/// graph of two disk sets (edges cross sides only). Hopcroft-Karp phases
/// navigate through deletable geometric indices instead of explicit edges;
/// phases run until the shortest augmenting path has length at least 4/eps,
/// which certifies the bound. Vertices are numbered side one first: edge
/// (u, d1.size() + v) pairs d1[u] with d2[v].
inline Matching bipartite_geom_matching(const std::vector<Disk>& d1, const std::vector<Disk>& d2,
                                        double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("bipartite_geom_matching: eps must be in (0,1)");
    const int n1 = static_cast<int>(d1.size());
    const int n2 = static_cast<int>(d2.size());
    std::vector<int> mate1(n1, -1), mate2(n2, -1);
    const double threshold = 4.0 / eps;
    constexpr int kInf = std::numeric_limits<int>::max();

    while (n1 > 0 && n2 > 0) {
        // BFS layering; every side-two vertex is pulled out of the index the
        // first time any frontier disk intersects it.
        GeomNeighborIndex idx(d2);
        std::vector<int> dist1(n1, kInf);
        std::vector<std::vector<int>> rights_at_layer;
        std::vector<int> queue;
        for (int u = 0; u < n1; ++u)
            if (mate1[u] == -1) {
                dist1[u] = 0;
                queue.push_back(u);
            }
        int shortest = kInf;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            if (shortest != kInf && 2 * dist1[u] + 1 > shortest) break;  // FIFO: deeper from here on
            while (auto hit = idx.query(d1[u])) {
                const int v = *hit;
                idx.erase(v);
                const int layer = dist1[u];
                if (static_cast<int>(rights_at_layer.size()) <= layer) rights_at_layer.resize(layer + 1);
                rights_at_layer[layer].push_back(v);
                if (mate2[v] == -1) {
                    shortest = std::min(shortest, 2 * layer + 1);
                } else if (dist1[mate2[v]] == kInf) {
                    dist1[mate2[v]] = layer + 1;
                    queue.push_back(mate2[v]);
                }
            }
        }
        if (shortest == kInf) break;            // matching is maximum
        if (shortest >= threshold) break;       // remaining paths are long enough

        // Disjoint shortest paths via one deletable index per layer.
        std::vector<GeomNeighborIndex> layer_idx;
        layer_idx.reserve(rights_at_layer.size());
        for (const auto& ids : rights_at_layer) layer_idx.emplace_back(d2, ids);

        auto dfs = [&](auto&& self, int u) -> bool {
            const int layer = dist1[u];
            if (layer >= static_cast<int>(layer_idx.size())) return false;
            while (auto hit = layer_idx[layer].query(d1[u])) {
                const int v = *hit;
                layer_idx[layer].erase(v);
                if (mate2[v] == -1) {
                    if (2 * layer + 1 != shortest) continue;
                    mate2[v] = u;
                    mate1[u] = v;
                    return true;
                }
                const int w = mate2[v];
                if (dist1[w] == layer + 1 && self(self, w)) {
                    mate2[v] = u;
                    mate1[u] = v;
                    return true;
                }
            }
            return false;
        };
        int augmented = 0;
        for (int u = 0; u < n1; ++u)
            if (mate1[u] == -1 && dist1[u] == 0 && dfs(dfs, u)) ++augmented;
        if (augmented == 0) break;  // defensive; a shortest path always exists here
    }

    Matching m;
    for (int u = 0; u < n1; ++u)
        if (mate1[u] != -1) m.add(u, n1 + mate1[u]);
    m.normalize();
    return m;
}

/// Iteration schedule of the random-coloring reduction.
struct ColoringEpoch {
    double eps = 0.5;
    std::uint64_t iterations_per_epoch = 0;  // 4 * 2^ceil(4/eps)
    std::uint64_t total_iteration_cap = 0;   // ceil(2^ceil(8/eps) * log2 n)

    static ColoringEpoch from(double eps, int n) {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ColoringEpoch: eps must be in (0,1)");
        ColoringEpoch s;
        s.eps = eps;
        const double gamma = 4.0 * std::exp2(std::ceil(4.0 / eps));
        const double cap = std::ceil(std::exp2(std::ceil(8.0 / eps)) * std::log2(std::max(n, 2)));
        const double max_u64 = 1.8e19;
        s.iterations_per_epoch = gamma >= max_u64 ? std::numeric_limits<std::uint64_t>::max()
                                                  : static_cast<std::uint64_t>(gamma);
        s.total_iteration_cap = cap >= max_u64 ? std::numeric_limits<std::uint64_t>::max()
                                               : static_cast<std::uint64_t>(cap);
        return s;
    }
};

/// (1 - eps)-approximate maximum matching for general disks by repeated
/// random 2-coloring. Each iteration keeps only the bichromatic part of the
/// current matching, solves the colored bipartite instance, and augments
/// along the gaining paths of the symmetric difference. Stops early once an
/// idle iteration certifies that no augmenting path of length <= 4/eps
/// remains; a hard cap of 2^ceil(8/eps) * log2 n iterations always applies.
inline Matching random_coloring_matching(const std::vector<Disk>& disks, double eps, Rng& rng) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("random_coloring_matching: eps must be in (0,1)");
    const int n = static_cast<int>(disks.size());
    if (n == 0) return {};
    auto mate = greedy_matching_sweep(disks).to_mate(n);
    const auto schedule = ColoringEpoch::from(eps, n);
    const int short_len = static_cast<int>(std::ceil(4.0 / eps));

    std::optional<IntersectionGraph> explicit_graph;  // built only if the early exit is consulted
    std::vector<char> color(n);
    std::vector<int> side_of(n);      // local index within its side, or -1
    std::vector<int> partner_new(n);  // bipartite solution, global ids

    for (std::uint64_t iter = 0; iter < schedule.total_iteration_cap; ++iter) {
        for (int i = 0; i < n; ++i) color[i] = static_cast<char>(rng() & 1ULL);

        std::vector<Disk> d1, d2;
        std::vector<int> g1, g2;
        for (int i = 0; i < n; ++i) {
            side_of[i] = -1;
            if (mate[i] != -1 && color[mate[i]] == color[i]) continue;  // drop monochromatic pairs
            if (color[i] == 0) {
                side_of[i] = static_cast<int>(g1.size());
                g1.push_back(i);
                d1.push_back(disks[i]);
            } else {
                side_of[i] = static_cast<int>(g2.size());
                g2.push_back(i);
                d2.push_back(disks[i]);
            }
        }

        const Matching bip = bipartite_geom_matching(d1, d2, eps / 16.0);
        std::fill(partner_new.begin(), partner_new.end(), -1);
        for (auto [u, v] : bip.edges) {
            const int a = g1[u];
            const int b = g2[v - static_cast<int>(g1.size())];
            partner_new[a] = b;
            partner_new[b] = a;
        }

        // Decompose old-vs-new symmetric difference into paths; augment the
        // paths that gain an edge.
        int augmented = 0;
        std::vector<char> visited(n, 0);
        for (int start = 0; start < n; ++start) {
            if (visited[start] || side_of[start] == -1) continue;
            const int old_p = (mate[start] != -1 && side_of[mate[start]] != -1 &&
                               color[mate[start]] != color[start])
                                  ? mate[start]
                                  : -1;
            const int new_p = partner_new[start];
            const int degree = (old_p != -1 && old_p != new_p ? 1 : 0) + (new_p != -1 && new_p != old_p ? 1 : 0);
            if (degree != 1) continue;  // path endpoints only; cycles gain nothing

            std::vector<int> path{start};
            visited[start] = 1;
            int prev = -1, cur = start;
            bool next_is_new = (new_p != -1 && new_p != old_p);
            while (true) {
                const int oldc = (mate[cur] != -1 && side_of[mate[cur]] != -1 &&
                                  color[mate[cur]] != color[cur])
                                     ? mate[cur]
                                     : -1;
                const int nxt = next_is_new ? partner_new[cur] : oldc;
                if (nxt == -1 || nxt == prev) break;
                visited[nxt] = 1;
                path.push_back(nxt);
                prev = cur;
                cur = nxt;
                next_is_new = !next_is_new;
            }
            // Edge count parity: the walk alternates starting with the type
            // present at `start`; it gains iff it starts and ends on new edges.
            int gain = 0;
            bool is_new = (new_p != -1 && new_p != old_p);
            for (std::size_t k = 0; k + 1 < path.size(); ++k, is_new = !is_new) gain += is_new ? 1 : -1;
            if (gain <= 0) continue;
            // Detach old edges, then apply new ones.
            is_new = (new_p != -1 && new_p != old_p);
            for (std::size_t k = 0; k + 1 < path.size(); ++k, is_new = !is_new) {
                if (!is_new) {
                    mate[path[k]] = -1;
                    mate[path[k + 1]] = -1;
                }
            }
            is_new = (new_p != -1 && new_p != old_p);
            for (std::size_t k = 0; k + 1 < path.size(); ++k, is_new = !is_new) {
                if (is_new) {
                    mate[path[k]] = path[k + 1];
                    mate[path[k + 1]] = path[k];
                }
            }
            ++augmented;
        }

        if (augmented == 0) {
            if (!explicit_graph) explicit_graph = build_intersection_graph(disks);
            const Matching current = Matching::from_mate(mate);
            bool remains;
            if (short_len <= detail::kEnumeratorFallbackLen) {
                remains = has_augmenting_path_at_most(*explicit_graph, current, short_len);
            } else {
                remains = !find_disjoint_augmenting_paths(*explicit_graph, current, short_len).empty();
            }
            if (!remains) break;
        }
    }
    return Matching::from_mate(mate);
}

/// Free disks grouped by the exact subset of matched disks they intersect.
struct NeighborhoodClass {
    std::vector<std::uint64_t> signature;  // bitset over the matched list
    std::vector<int> members;              // indices into the free list

    bool intersects_matched(int j) const {
        return (signature[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1ULL;
    }
};

/// Groups `free` disks by their intersection signature against `matched`.
/// Free disks are expected to be pairwise disjoint (they come from the free
/// side of a maximal matching). Classes are ordered by signature.
inline std::vector<NeighborhoodClass> classify_free_disks(const std::vector<Disk>& matched,
                                                          const std::vector<Disk>& free) {
    const std::size_t blocks = (matched.size() + 63) / 64;
    std::map<std::vector<std::uint64_t>, std::vector<int>> groups;
    std::vector<std::uint64_t> sig(std::max<std::size_t>(blocks, 1));
    for (int f = 0; f < static_cast<int>(free.size()); ++f) {
        std::fill(sig.begin(), sig.end(), 0);
        for (int j = 0; j < static_cast<int>(matched.size()); ++j)
            if (disks_intersect(free[f], matched[j]))
                sig[static_cast<std::size_t>(j) >> 6] |= 1ULL << (j & 63);
        groups[sig].push_back(f);
    }
    std::vector<NeighborhoodClass> out;
    out.reserve(groups.size());
    for (auto& [s, members] : groups) out.push_back(NeighborhoodClass{s, std::move(members)});
    return out;
}

/// Exact maximum matching when it is small. With N = ceil(c * n^(1/8)):
/// if the greedy matching exceeds N the instance is "too big" (nullopt).
/// Otherwise free disks are classified against the matched vertices, each
/// class trimmed to its 2N lowest indices (a maximum matching can use at
/// most 2N vertices of one class), and the trimmed instance solved exactly.
inline std::optional<Matching> small_matching_exact(const std::vector<Disk>& disks,
                                                    double scale_c = 1.0,
                                                    std::vector<int>* trimmed_out = nullptr) {
    const int n = static_cast<int>(disks.size());
    if (n == 0) {
        if (trimmed_out) trimmed_out->clear();
        return Matching{};
    }
    const int cap = static_cast<int>(std::ceil(scale_c * std::pow(static_cast<double>(n), 0.125)));
    const Matching greedy = greedy_matching_sweep(disks);
    if (greedy.size() > cap) return std::nullopt;

    std::vector<char> in_matching(n, 0);
    for (auto [u, v] : greedy.edges) in_matching[u] = in_matching[v] = 1;
    std::vector<int> matched_ids, free_ids;
    for (int i = 0; i < n; ++i) (in_matching[i] ? matched_ids : free_ids).push_back(i);

    std::vector<Disk> matched_disks, free_disks;
    matched_disks.reserve(matched_ids.size());
    free_disks.reserve(free_ids.size());
    for (int i : matched_ids) matched_disks.push_back(disks[i]);
    for (int i : free_ids) free_disks.push_back(disks[i]);

    std::vector<int> keep = matched_ids;
    for (const auto& cls : classify_free_disks(matched_disks, free_disks)) {
        const int take = std::min<int>(2 * cap, static_cast<int>(cls.members.size()));
        for (int k = 0; k < take; ++k) keep.push_back(free_ids[cls.members[k]]);
    }
    std::sort(keep.begin(), keep.end());
    if (trimmed_out) *trimmed_out = keep;

    std::vector<Disk> sub;
    sub.reserve(keep.size());
    for (int i : keep) sub.push_back(disks[i]);
    const Matching local = exact_maximum_matching(build_intersection_graph(sub));
    Matching out;
    for (auto [u, v] : local.edges) out.add(keep[u], keep[v]);
    out.normalize();
    return out;
}

}  // namespace diskmatch

#endif  // DISKMATCH_GENERAL_MATCH_HPP
