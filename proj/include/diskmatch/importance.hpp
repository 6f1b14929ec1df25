// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_IMPORTANCE_HPP
#define DISKMATCH_IMPORTANCE_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "diskmatch/geometry.hpp"

namespace diskmatch {

/// One term of a weighted sum: an opaque structure handle, a multiplicity
/// weight w >= 1, and a coarse estimate e >= 1 of the structure's true
/// weight, accurate to a factor b (true weight in [e/b, e*b]).
struct ImportanceTriple {
    std::uint64_t structure_id = 0;
    double w = 1.0;
    double e = 1.0;
};

/// Number of terms the subsampler aims to keep.
inline std::size_t importance_sample_target(double eps_a, double delta, double b, double m_bound) {
    const double ln_m = std::log(std::max(m_bound, 2.0));
    const double lnln_m = std::log(std::max(ln_m, 2.0));
    const double t = std::pow(b, 4.0) / (eps_a * eps_a) * (lnln_m + std::log(1.0 / delta)) * ln_m;
    return static_cast<std::size_t>(std::ceil(t));
}

/// Reduces a weighted sum Gamma = sum w_i * weight(H_i) to few reweighted
/// terms whose sum Y estimates Gamma within a factor (1 +- eps_a) with
/// probability >= 1 - delta, assuming the coarse estimates are b-accurate
/// and Gamma <= m_bound.
///
/// Threshold subsampling: term i is kept with probability
/// p_i = min(1, t0 * w_i * e_i / sum_j w_j * e_j) and reweighted to w_i / p_i,
/// which is unbiased, and every kept term contributes at most a b^2 / t0
/// share of Gamma, giving Bernstein-type concentration. When there are at
/// most t0 terms the input is returned verbatim.
inline std::vector<ImportanceTriple> importance_sample(const std::vector<ImportanceTriple>& triples,
                                                       double eps_a, double delta, double b,
                                                       double m_bound, Rng& rng) {
    if (!(eps_a > 0.0 && eps_a < 1.0)) throw std::invalid_argument("importance_sample: eps_a must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("importance_sample: delta must be in (0,1)");
    if (!(b >= 1.0)) throw std::invalid_argument("importance_sample: b must be >= 1");
    double sum_we = 0.0;
    for (const auto& t : triples) {
        if (!(t.w >= 1.0) || !(t.e >= 1.0))
            throw std::invalid_argument("importance_sample: weights and estimates must be >= 1");
        sum_we += t.w * t.e;
    }

    const std::size_t target = importance_sample_target(eps_a, delta, b, m_bound);
    if (triples.size() <= target) return triples;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ImportanceTriple> out;
    out.reserve(target + target / 4);
    const double scale = static_cast<double>(target) / sum_we;
    for (const auto& t : triples) {
        const double p = std::min(1.0, scale * t.w * t.e);
        const double u = unit(rng);  // one draw per term, in order
        if (u < p) out.push_back(ImportanceTriple{t.structure_id, t.w / p, t.e});
    }
    return out;
}

}  // namespace diskmatch

#endif  // DISKMATCH_IMPORTANCE_HPP
