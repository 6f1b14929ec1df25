// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_INSTANCES_HPP
#define DISKMATCH_INSTANCES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskmatch/geometry.hpp"

namespace diskmatch {

enum class InstanceKind {
    kUniformUnit,
    kUniformMixedRadius,
    kClustered,
    kStackedTowers,
    kPlantedMatching,
};

inline const char* to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::kUniformUnit: return "uniform-unit";
        case InstanceKind::kUniformMixedRadius: return "uniform-mixed-radius";
        case InstanceKind::kClustered: return "clustered";
        case InstanceKind::kStackedTowers: return "stacked-towers";
        case InstanceKind::kPlantedMatching: return "planted-matching";
    }
    return "?";
}

inline std::optional<InstanceKind> instance_kind_from_string(const std::string& s) {
    if (s == "uniform-unit") return InstanceKind::kUniformUnit;
    if (s == "uniform-mixed-radius") return InstanceKind::kUniformMixedRadius;
    if (s == "clustered") return InstanceKind::kClustered;
    if (s == "stacked-towers") return InstanceKind::kStackedTowers;
    if (s == "planted-matching") return InstanceKind::kPlantedMatching;
    return std::nullopt;
}

/// Parameters of a generated instance. `group_size` is overloaded per kind:
/// disks per tower for stacked-towers (one tower when absent), pair count
/// for planted-matching (n/2 when absent), cluster count for clustered.
struct InstanceSpec {
    InstanceKind kind = InstanceKind::kUniformUnit;
    int n = 0;
    double box_side = 1.0;
    double r_min = 1.0;
    double r_max = 1.0;
    std::optional<int> group_size;
    std::uint64_t seed = 0;
};

namespace instance_detail {

inline void validate(const InstanceSpec& spec) {
    if (spec.n < 0) throw std::invalid_argument("InstanceSpec: n must be >= 0");
    if (!(spec.box_side > 0.0)) throw std::invalid_argument("InstanceSpec: box side must be positive");
    if (!(spec.r_min > 0.0) || spec.r_min > spec.r_max)
        throw std::invalid_argument("InstanceSpec: need 0 < r_min <= r_max");
    if (spec.group_size && *spec.group_size <= 0)
        throw std::invalid_argument("InstanceSpec: group size must be positive");
}

inline double radius_draw(const InstanceSpec& spec, Rng& rng) {
    if (spec.r_min == spec.r_max) return spec.r_min;
    // log-uniform keeps wide ranges from degenerating into all-large radii
    std::uniform_real_distribution<double> u(std::log(spec.r_min), std::log(spec.r_max));
    return std::exp(u(rng));
}

/// Isolated gadgets: a robustly intersecting pair, plus leftover disks
/// parked in the pair's lens so that they intersect both pair members while
/// staying pairwise disjoint.
inline std::vector<Disk> planted(const InstanceSpec& spec, Rng& rng) {
    std::vector<Disk> disks;
    const int pairs = spec.group_size.value_or(spec.n / 2);
    if (pairs == 0) return disks;
    const double rp = spec.r_max;
    const double gap = 10.0 * rp;
    const int extras = std::max(0, spec.n - 2 * pairs);
    const int per_gadget = (extras + pairs - 1) / pairs;
    std::uniform_real_distribution<double> unit01(0.0, 1.0);

    int placed_extras = 0;
    for (int p = 0; p < pairs; ++p) {
        const double x = static_cast<double>(p) * (4.0 * rp + gap);
        disks.push_back(Disk{x, 0.0, rp});
        disks.push_back(Disk{x + rp, 0.0, rp});
        const int here = std::min(per_gadget, extras - placed_extras);
        if (here <= 0) continue;
        // slots on the lens axis; both pair centers are within distance
        // sqrt(0.25 + v^2) * rp <= 0.75 * rp of each slot
        const double span = 1.1 * rp;
        const double step = span / static_cast<double>(here);
        const double rho = std::min(0.01 * rp, 0.2 * step);
        for (int k = 0; k < here; ++k) {
            const double v = -span / 2.0 + step * (static_cast<double>(k) + 0.3 + 0.4 * unit01(rng));
            disks.push_back(Disk{x + rp / 2.0, v, rho});
        }
        placed_extras += here;
    }
    return disks;
}

}  // namespace instance_detail

/// Deterministic for a fixed spec (the seed is part of it).
inline std::vector<Disk> generate_instance(const InstanceSpec& spec) {
    instance_detail::validate(spec);
    Rng rng(spec.seed);
    std::uniform_real_distribution<double> in_box(0.0, spec.box_side);
    std::vector<Disk> disks;
    disks.reserve(spec.n);

    switch (spec.kind) {
        case InstanceKind::kUniformUnit:
            for (int i = 0; i < spec.n; ++i) disks.push_back(Disk{in_box(rng), in_box(rng), 1.0});
            break;
        case InstanceKind::kUniformMixedRadius:
            for (int i = 0; i < spec.n; ++i) {
                const double x = in_box(rng), y = in_box(rng);
                disks.push_back(Disk{x, y, instance_detail::radius_draw(spec, rng)});
            }
            break;
        case InstanceKind::kClustered: {
            const int sites = std::max(1, spec.group_size.value_or(std::max(1, spec.n / 50)));
            std::vector<std::pair<double, double>> centers;
            for (int s = 0; s < sites; ++s) centers.emplace_back(in_box(rng), in_box(rng));
            std::uniform_int_distribution<int> pick(0, sites - 1);
            std::normal_distribution<double> spread(0.0, 2.0 * spec.r_max);
            for (int i = 0; i < spec.n; ++i) {
                const auto& c = centers[pick(rng)];
                const double x = c.first + spread(rng), y = c.second + spread(rng);
                disks.push_back(Disk{x, y, instance_detail::radius_draw(spec, rng)});
            }
            break;
        }
        case InstanceKind::kStackedTowers: {
            const int per_tower = spec.group_size.value_or(spec.n);
            const int towers = per_tower > 0 ? (spec.n + per_tower - 1) / std::max(per_tower, 1) : 1;
            std::vector<std::pair<double, double>> pts;
            if (towers <= 1) {
                pts.emplace_back(spec.box_side / 2.0, spec.box_side / 2.0);
            } else {
                for (int t = 0; t < towers; ++t) pts.emplace_back(in_box(rng), in_box(rng));
            }
            for (int i = 0; i < spec.n; ++i) {
                const auto& p = pts[static_cast<std::size_t>(i) % pts.size()];
                disks.push_back(Disk{p.first, p.second, instance_detail::radius_draw(spec, rng)});
            }
            break;
        }
        case InstanceKind::kPlantedMatching:
            disks = instance_detail::planted(spec, rng);
            break;
    }
    return disks;
}

}  // namespace diskmatch

#endif  // DISKMATCH_INSTANCES_HPP
