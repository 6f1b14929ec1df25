// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_ESTIMATORS_HPP
#define DISKMATCH_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskmatch/density.hpp"
#include "diskmatch/general_match.hpp"
#include "diskmatch/geometry.hpp"
#include "diskmatch/importance.hpp"
#include "diskmatch/match_engine.hpp"
#include "diskmatch/sweep.hpp"
#include "diskmatch/unit_match.hpp"

namespace diskmatch {

/// Estimates the maximum-matching size of a unit-disk set without computing
/// a matching: a randomly shifted coarse grid splits the instance into
/// cells, per-cell greedy matchings give factor-2 coarse estimates, and
/// importance sampling picks the cells that are then approximated well.
/// E[Z] >= (1 - eps) * k_opt, and Z stays below (1 + eps) * k_opt with high
/// probability.
inline double estimate_unit_matching_size(const std::vector<Disk>& disks, double eps, Rng& rng) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("estimate_unit_matching_size: eps must be in (0,1)");
    unit_detail::require_unit(disks);
    const int n = static_cast<int>(disks.size());
    if (n < 2) return 0.0;

    const double psi = std::ceil(32.0 / eps);
    std::uniform_real_distribution<double> shift(0.0, psi);
    const double px = shift(rng);
    const double py = shift(rng);

    // Disks crossing a cell boundary of the shifted psi-grid are discarded.
    std::map<std::pair<long long, long long>, std::vector<int>> cells;
    for (int i = 0; i < n; ++i) {
        const Disk& d = disks[i];
        const auto ci = static_cast<long long>(std::floor((d.cx - px) / psi));
        const auto cj = static_cast<long long>(std::floor((d.cy - py) / psi));
        const double x0 = px + static_cast<double>(ci) * psi;
        const double y0 = py + static_cast<double>(cj) * psi;
        if (d.cx - 1.0 < x0 || d.cx + 1.0 > x0 + psi) continue;
        if (d.cy - 1.0 < y0 || d.cy + 1.0 > y0 + psi) continue;
        cells[{ci, cj}].push_back(i);
    }

    std::vector<std::vector<Disk>> cell_disks;
    std::vector<ImportanceTriple> triples;
    for (auto& [key, members] : cells) {
        std::vector<Disk> sub;
        sub.reserve(members.size());
        for (int i : members) sub.push_back(disks[i]);
        const int coarse = greedy_unit(sub).size();
        if (coarse == 0) continue;  // maximal and empty: the cell holds no edge at all
        triples.push_back(ImportanceTriple{cell_disks.size(), 1.0, static_cast<double>(coarse)});
        cell_disks.push_back(std::move(sub));
    }
    if (triples.empty()) return 0.0;

    const double delta = std::pow(static_cast<double>(std::max(n, 2)), -10.0);
    const auto selected = importance_sample(triples, eps / 32.0, delta, 2.0, static_cast<double>(n), rng);

    double z = 0.0;
    const double diameter = psi * std::sqrt(2.0);
    for (const auto& t : selected) {
        const auto& sub = cell_disks[t.structure_id];
        const int refined = approx_unit_matching_bounded_diam(sub, eps / 16.0, diameter).size();
        z += t.w * static_cast<double>(refined);
    }
    return z;
}

/// One node of the recursive random-circle partition. The region is the
/// set of points on the node's side of every ancestor circle; `active` and
/// `all_disks` hold the disks fully inside it.
struct SeparatorNode {
    int node_id = -1;
    std::vector<int> active;
    std::vector<int> all_disks;
    Circle separator_circle{};
    bool is_leaf = true;
    int child_inside = -1;
    int child_outside = -1;
    int boundary_count = 0;  // active disks hit by this node's circle
};

struct SeparatorHierarchy {
    std::vector<SeparatorNode> nodes;
    int root = -1;
    std::vector<int> leaves;  // node ids
    std::vector<int> lost;    // disks hitting any circle, ascending
};

struct SeparatorParams {
    double leaf_constant = 4.0;  // leaf size bound is leaf_constant * lambda / eps^2
    double split_ratio = 0.9;    // each side keeps at most this fraction of the actives
    int max_draws = 20;
};

/// Recursively separates `active` (the vertices of a greedy matching) with
/// random circles. Disks of `all_ids` hit by a circle are lost; the rest
/// descend into the inside/outside child. Alternate levels accept the first
/// balanced draw or the balanced draw hitting the fewest actives, which
/// keeps boundary sizes near O(lambda + sqrt(lambda * k)).
inline SeparatorHierarchy build_separator_hierarchy(const std::vector<Disk>& disks,
                                                    const std::vector<int>& active,
                                                    const std::vector<int>& all_ids,
                                                    double lambda_hat, double eps, Rng& rng,
                                                    const SeparatorParams& params = {}) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("build_separator_hierarchy: eps must be in (0,1)");
    const double b_leaf =
        std::ceil(params.leaf_constant * std::max(lambda_hat, 1.0) / (eps * eps));
    SeparatorHierarchy h;

    struct Frame {
        std::vector<int> active;
        std::vector<int> all;
        int level;
    };

    // -1 outside, 0 hit, +1 inside; a disk missing the curve lies entirely
    // on the side of its center.
    auto side_of = [&](const Disk& d, const Circle& c) -> int {
        if (disk_intersects_circle(d, c)) return 0;
        const double d2 = squared_distance(d.cx, d.cy, c.cx, c.cy);
        return d2 < c.radius * c.radius ? 1 : -1;
    };

    auto build = [&](auto&& self, std::vector<int> node_active, std::vector<int> node_all,
                     int level) -> int {
        const int id = static_cast<int>(h.nodes.size());
        h.nodes.push_back(SeparatorNode{});
        h.nodes[id].node_id = id;
        if (static_cast<double>(node_active.size()) <= b_leaf) {
            h.nodes[id].active = std::move(node_active);
            h.nodes[id].all_disks = std::move(node_all);
            h.leaves.push_back(id);
            return id;
        }

        const std::size_t k = node_active.size();
        double cx0 = 0.0, cy0 = 0.0;
        for (int i : node_active) {
            cx0 += disks[i].cx;
            cy0 += disks[i].cy;
        }
        cx0 /= static_cast<double>(k);
        cy0 /= static_cast<double>(k);

        std::vector<double> d2s;
        d2s.reserve(k);
        for (int i : node_active) d2s.push_back(squared_distance(disks[i].cx, disks[i].cy, cx0, cy0));
        const std::size_t rank =
            std::min(k - 1, static_cast<std::size_t>(std::ceil(static_cast<double>(k) /
                                                               (2.0 * params.split_ratio))));
        std::nth_element(d2s.begin(), d2s.begin() + rank, d2s.end());
        double alpha = std::sqrt(d2s[rank]);
        if (!(alpha > 0.0)) {
            // co-located centers: any circle within the radii hits disks, which
            // still shrinks the node
            double rmax = 0.0;
            for (int i : node_active) rmax = std::max(rmax, disks[i].r);
            alpha = rmax / 2.0;
        }

        const bool boundary_level = (level % 2) == 1;
        std::normal_distribution<double> jitter(0.0, alpha / 4.0);
        Circle chosen{};
        bool have_choice = false;
        int chosen_hits = 0;
        Circle best{};  // fallback: the most balanced draw seen
        std::size_t best_max_side = k + 1;
        int balanced_seen = 0;
        for (int attempt = 0; attempt < params.max_draws; ++attempt) {
            double ccx = cx0, ccy = cy0;
            if (attempt >= 5) {
                ccx += jitter(rng);
                ccy += jitter(rng);
            }
            const Circle cand = random_circle(ccx, ccy, alpha, rng);
            std::size_t in = 0, out = 0, hit = 0;
            for (int i : node_active) {
                const int s = side_of(disks[i], cand);
                if (s > 0)
                    ++in;
                else if (s < 0)
                    ++out;
                else
                    ++hit;
            }
            const std::size_t max_side = std::max(in, out);
            if (max_side < best_max_side) {
                best_max_side = max_side;
                best = cand;
            }
            if (static_cast<double>(max_side) <=
                params.split_ratio * static_cast<double>(k)) {
                ++balanced_seen;
                if (!have_choice || (boundary_level && static_cast<int>(hit) < chosen_hits)) {
                    have_choice = true;
                    chosen = cand;
                    chosen_hits = static_cast<int>(hit);
                }
                if (!boundary_level || balanced_seen >= 5) break;
            }
        }
        if (!have_choice) {
            chosen = best;
            if (best_max_side == k) {
                // no draw made progress; a circle through the first active
                // disk always removes at least that disk
                chosen = Circle{disks[node_active.front()].cx, disks[node_active.front()].cy,
                                disks[node_active.front()].r};
            }
        }

        std::vector<int> all_in, all_out, act_in, act_out;
        int hits_active = 0;
        for (int i : node_all) {
            const int s = side_of(disks[i], chosen);
            if (s > 0)
                all_in.push_back(i);
            else if (s < 0)
                all_out.push_back(i);
            else
                h.lost.push_back(i);
        }
        for (int i : node_active) {
            const int s = side_of(disks[i], chosen);
            if (s > 0)
                act_in.push_back(i);
            else if (s < 0)
                act_out.push_back(i);
            else
                ++hits_active;
        }

        h.nodes[id].active = std::move(node_active);
        h.nodes[id].all_disks = std::move(node_all);
        h.nodes[id].separator_circle = chosen;
        h.nodes[id].is_leaf = false;
        h.nodes[id].boundary_count = hits_active;
        const int ci = self(self, std::move(act_in), std::move(all_in), level + 1);
        const int co = self(self, std::move(act_out), std::move(all_out), level + 1);
        h.nodes[id].child_inside = ci;
        h.nodes[id].child_outside = co;
        return id;
    };

    h.root = build(build, active, all_ids, 0);
    std::sort(h.lost.begin(), h.lost.end());
    return h;
}

struct DiskEstimatorTuning {
    double small_matching_c = 1.0;
    SeparatorParams separator{};
};

/// Estimates the maximum-matching size of a general disk set. Small
/// instances are solved exactly; otherwise the vertices of a greedy matching
/// are partitioned by a separator hierarchy, leaves get factor-2 coarse
/// estimates from greedy matchings, and importance sampling decides which
/// leaves deserve a (1 - eps/8)-approximation. E[Z] >= (1 - eps) * k_opt and
/// Z exceeds (1 + eps) * k_opt only with small probability; accuracy relies
/// on the density being small.
inline double estimate_disk_matching_size(const std::vector<Disk>& disks, double eps, Rng& rng,
                                          const DiskEstimatorTuning& tuning = {}) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("estimate_disk_matching_size: eps must be in (0,1)");
    const int n = static_cast<int>(disks.size());
    if (n < 2) return 0.0;

    if (auto exact = small_matching_exact(disks, tuning.small_matching_c))
        return static_cast<double>(exact->size());

    const Matching greedy = greedy_matching_sweep(disks);
    std::vector<int> active;
    active.reserve(2 * greedy.edges.size());
    for (auto [u, v] : greedy.edges) {
        active.push_back(u);
        active.push_back(v);
    }
    std::sort(active.begin(), active.end());
    std::vector<int> all_ids(n);
    for (int i = 0; i < n; ++i) all_ids[i] = i;

    const double lambda_hat = static_cast<double>(density(disks));
    const auto hierarchy =
        build_separator_hierarchy(disks, active, all_ids, lambda_hat, eps, rng, tuning.separator);

    std::vector<std::vector<Disk>> leaf_disks;
    std::vector<ImportanceTriple> triples;
    for (int leaf : hierarchy.leaves) {
        const auto& ids = hierarchy.nodes[leaf].all_disks;
        if (ids.size() < 2) continue;
        std::vector<Disk> sub;
        sub.reserve(ids.size());
        for (int i : ids) sub.push_back(disks[i]);
        const int coarse = greedy_matching_sweep(sub).size();
        if (coarse == 0) continue;
        triples.push_back(ImportanceTriple{leaf_disks.size(), 1.0, static_cast<double>(coarse)});
        leaf_disks.push_back(std::move(sub));
    }
    if (triples.empty()) return 0.0;

    const double delta = std::pow(static_cast<double>(std::max(n, 2)), -10.0);
    const auto selected = importance_sample(triples, eps / 4.0, delta, 2.0, static_cast<double>(n), rng);

    double z = 0.0;
    for (const auto& t : selected) {
        const auto& sub = leaf_disks[t.structure_id];
        int refined;
        if (auto exact = small_matching_exact(sub, tuning.small_matching_c)) {
            refined = exact->size();
        } else {
            refined = approx_matching_eps(build_intersection_graph(sub), eps / 8.0).size();
        }
        z += t.w * static_cast<double>(refined);
    }
    return z;
}

}  // namespace diskmatch

#endif  // DISKMATCH_ESTIMATORS_HPP
