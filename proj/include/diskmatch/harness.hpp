// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_HARNESS_HPP
#define DISKMATCH_HARNESS_HPP

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskmatch/density.hpp"
#include "diskmatch/estimators.hpp"
#include "diskmatch/general_match.hpp"
#include "diskmatch/instances.hpp"
#include "diskmatch/match_engine.hpp"
#include "diskmatch/sweep.hpp"
#include "diskmatch/unit_match.hpp"

namespace diskmatch {

/// One timed, validated invocation of a library algorithm.
struct RunReport {
    std::string algorithm;
    std::string instance;
    int n = 0;
    double value = 0.0;  // matching size, estimate, edge count or density
    bool is_estimate = false;
    std::optional<double> eps;
    std::uint64_t seed = 0;
    std::optional<double> oracle;  // exact matching size (or exact reference)
    double wall_ms = 0.0;
    bool validated = false;
    bool pass = true;
    std::string detail;
};

struct RunOptions {
    std::optional<double> eps;
    std::uint64_t seed = 0;
    bool with_oracle = false;
    std::string instance_label;
};

inline const std::vector<std::string>& algorithm_ids() {
    static const std::vector<std::string> ids = {
        "greedy-unit",  "greedy-sweep",  "approx-unit",   "approx-unit-diam",
        "bipartite",    "color-coding",  "small-exact",   "exact-oracle",
        "estimate-unit", "estimate-separator", "build-graph", "density",
    };
    return ids;
}

namespace harness_detail {

inline double require_eps(const RunOptions& opt, const std::string& algo) {
    if (!opt.eps) throw std::invalid_argument("algorithm '" + algo + "' requires --eps");
    return *opt.eps;
}

// Independent of the algorithms under test: every reported edge is
// re-checked with the disk predicate and vertex-disjointness directly.
inline bool validate_matching_report(const Matching& m, const std::vector<Disk>& disks) {
    return is_valid_matching(m, disks);
}

inline double box_diameter_hint(const std::vector<Disk>& disks) {
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    bool first = true;
    for (const Disk& d : disks) {
        if (first) {
            xlo = d.cx - d.r; xhi = d.cx + d.r;
            ylo = d.cy - d.r; yhi = d.cy + d.r;
            first = false;
        } else {
            xlo = std::min(xlo, d.cx - d.r); xhi = std::max(xhi, d.cx + d.r);
            ylo = std::min(ylo, d.cy - d.r); yhi = std::max(yhi, d.cy + d.r);
        }
    }
    return std::hypot(xhi - xlo, yhi - ylo) + 1.0;
}

inline std::vector<std::pair<int, int>> bipartite_edges(const std::vector<Disk>& disks, int n1) {
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(disks.size());
    for (int i = 0; i < n1; ++i)
        for (int j = n1; j < n; ++j)
            if (disks_intersect(disks[i], disks[j])) edges.emplace_back(i, j);
    return edges;
}

}  // namespace harness_detail

/// Dispatches an algorithm id, times it, re-validates its output and, when
/// asked, checks the declared bound against an exact reference.
inline RunReport run_algorithm(const std::string& algo, const std::vector<Disk>& disks,
                               const RunOptions& opt = {}) {
    RunReport rep;
    rep.algorithm = algo;
    rep.instance = opt.instance_label;
    rep.n = static_cast<int>(disks.size());
    rep.eps = opt.eps;
    rep.seed = opt.seed;

    const int n = rep.n;
    const int n1 = n / 2;  // bipartite split: first half vs rest
    Rng rng(opt.seed);
    Matching matching;
    bool have_matching = false;
    bool too_big = false;

    const auto t0 = std::chrono::steady_clock::now();
    if (algo == "greedy-unit") {
        matching = greedy_unit(disks);
        have_matching = true;
    } else if (algo == "greedy-sweep") {
        matching = greedy_matching_sweep(disks);
        have_matching = true;
    } else if (algo == "approx-unit") {
        matching = approx_unit_matching(disks, harness_detail::require_eps(opt, algo));
        have_matching = true;
    } else if (algo == "approx-unit-diam") {
        matching = approx_unit_matching_bounded_diam(disks, harness_detail::require_eps(opt, algo),
                                                     harness_detail::box_diameter_hint(disks));
        have_matching = true;
    } else if (algo == "bipartite") {
        std::vector<Disk> d1(disks.begin(), disks.begin() + n1);
        std::vector<Disk> d2(disks.begin() + n1, disks.end());
        matching = bipartite_geom_matching(d1, d2, harness_detail::require_eps(opt, algo));
        have_matching = true;
    } else if (algo == "color-coding") {
        matching = random_coloring_matching(disks, harness_detail::require_eps(opt, algo), rng);
        have_matching = true;
    } else if (algo == "small-exact") {
        if (auto m = small_matching_exact(disks)) {
            matching = *m;
            have_matching = true;
        } else {
            too_big = true;
        }
    } else if (algo == "exact-oracle") {
        matching = exact_maximum_matching(build_intersection_graph(disks));
        have_matching = true;
    } else if (algo == "estimate-unit") {
        rep.value = estimate_unit_matching_size(disks, harness_detail::require_eps(opt, algo), rng);
        rep.is_estimate = true;
    } else if (algo == "estimate-separator") {
        rep.value = estimate_disk_matching_size(disks, harness_detail::require_eps(opt, algo), rng);
        rep.is_estimate = true;
    } else if (algo == "build-graph") {
        rep.value = static_cast<double>(build_intersection_graph(disks).m);
    } else if (algo == "density") {
        rep.value = static_cast<double>(density(disks));
    } else {
        throw std::invalid_argument("unknown algorithm: " + algo);
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (have_matching) {
        rep.value = static_cast<double>(matching.size());
        rep.validated = harness_detail::validate_matching_report(matching, disks);
        rep.pass = rep.validated;
        if (!rep.validated) rep.detail = "matching invariants violated";
    }
    if (too_big) {
        rep.detail = "too-big";
        rep.value = -1.0;
    }

    if (opt.with_oracle) {
        if (algo == "bipartite") {
            rep.oracle = static_cast<double>(
                exact_maximum_matching(
                    IntersectionGraph::from_edges(n, harness_detail::bipartite_edges(disks, n1)))
                    .size());
        } else if (algo == "build-graph") {
            std::size_t m_ref = 0;  // quadratic reference count
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (disks_intersect(disks[i], disks[j])) ++m_ref;
            rep.oracle = static_cast<double>(m_ref);
        } else if (algo == "density") {
            rep.oracle = static_cast<double>(density_exact(disks));
        } else {
            rep.oracle = static_cast<double>(exact_maximum_matching(build_intersection_graph(disks)).size());
        }

        const double k_opt = *rep.oracle;
        if (algo == "greedy-unit" || algo == "greedy-sweep") {
            rep.pass = rep.pass && rep.value >= std::ceil(k_opt / 2.0);
        } else if (algo == "approx-unit" || algo == "approx-unit-diam" || algo == "color-coding" ||
                   algo == "bipartite") {
            rep.pass = rep.pass && rep.value >= std::ceil((1.0 - *opt.eps) * k_opt);
        } else if (algo == "exact-oracle" || (algo == "small-exact" && have_matching)) {
            rep.pass = rep.pass && rep.value == k_opt;
        } else if (algo == "estimate-unit" || algo == "estimate-separator") {
            rep.pass = rep.value <= (1.0 + *opt.eps) * k_opt;  // the high-probability side
        } else if (algo == "build-graph") {
            rep.pass = rep.value == k_opt;
        } else if (algo == "density") {
            rep.pass = rep.value >= k_opt && rep.value <= 4.0 * k_opt;
        }
    }
    return rep;
}

/// One benchmark series: an algorithm over an n-ladder of one instance family.
struct BenchSeries {
    std::string algorithm;
    InstanceKind kind = InstanceKind::kUniformUnit;
    std::vector<int> ns;
    double box_factor = 0.0;  // box side = factor * sqrt(n); 0 = fixed box
    double box_side = 0.0;
    double r_min = 1.0, r_max = 1.0;
    std::optional<int> group_size;
    std::optional<double> eps;
    std::vector<std::uint64_t> seeds = {1};
    int repetitions = 3;
    bool with_oracle = false;
};

struct BenchResult {
    std::vector<RunReport> rows;                // sorted by (algorithm, n, seed)
    std::map<std::string, double> slopes;       // log-log slope of median time vs n
};

namespace harness_detail {

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

inline int harness_threads() {
    if (const char* env = std::getenv("DISKMATCH_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

}  // namespace harness_detail

inline BenchResult run_benchmark(const std::vector<BenchSeries>& series) {
    struct Task {
        const BenchSeries* s;
        int n;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& s : series)
        for (int n : s.ns)
            for (auto seed : s.seeds) tasks.push_back(Task{&s, n, seed});

    auto run_task = [](const Task& t) {
        const BenchSeries& s = *t.s;
        InstanceSpec spec;
        spec.kind = s.kind;
        spec.n = t.n;
        spec.box_side = s.box_factor > 0.0 ? s.box_factor * std::sqrt(static_cast<double>(t.n))
                                           : (s.box_side > 0.0 ? s.box_side : 1.0);
        spec.r_min = s.r_min;
        spec.r_max = s.r_max;
        spec.group_size = s.group_size;
        spec.seed = t.seed;
        const auto disks = generate_instance(spec);

        RunOptions opt;
        opt.eps = s.eps;
        opt.seed = t.seed;
        opt.with_oracle = s.with_oracle;
        opt.instance_label = std::string(to_string(s.kind)) + "/n=" + std::to_string(t.n);

        std::vector<RunReport> reps;
        run_algorithm(s.algorithm, disks, opt);  // warm-up, discarded
        for (int r = 0; r < std::max(1, s.repetitions); ++r)
            reps.push_back(run_algorithm(s.algorithm, disks, opt));
        RunReport best = reps.front();
        std::vector<double> times;
        for (const auto& r : reps) times.push_back(r.wall_ms);
        best.wall_ms = harness_detail::median(times);
        for (const auto& r : reps) best.pass = best.pass && r.pass;
        return best;
    };

    BenchResult out;
    const int threads = harness_detail::harness_threads();
    if (threads <= 1) {
        for (const auto& t : tasks) out.rows.push_back(run_task(t));
    } else {
        std::vector<std::future<RunReport>> futs;
        std::size_t next = 0;
        while (next < tasks.size() || !futs.empty()) {
            while (next < tasks.size() && static_cast<int>(futs.size()) < threads)
                futs.push_back(std::async(std::launch::async, run_task, tasks[next++]));
            out.rows.push_back(futs.front().get());
            futs.erase(futs.begin());
        }
    }
    std::sort(out.rows.begin(), out.rows.end(), [](const RunReport& a, const RunReport& b) {
        return std::tie(a.algorithm, a.n, a.seed) < std::tie(b.algorithm, b.n, b.seed);
    });

    // log-log least squares on median time per n
    std::map<std::string, std::map<int, std::vector<double>>> by_algo_n;
    for (const auto& r : out.rows) by_algo_n[r.algorithm][r.n].push_back(r.wall_ms);
    for (const auto& [algo, per_n] : by_algo_n) {
        if (per_n.size() < 2) continue;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (const auto& [n, times] : per_n) {
            const double x = std::log(static_cast<double>(n));
            const double y = std::log(std::max(harness_detail::median(times), 1e-6));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++cnt;
        }
        const double denom = cnt * sxx - sx * sx;
        if (denom > 0) out.slopes[algo] = (cnt * sxy - sx * sy) / denom;
    }
    return out;
}

inline std::string report_csv_row(const RunReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.algorithm << ',' << r.n << ',' << (r.eps ? *r.eps : 0.0) << ',' << r.seed << ','
       << r.wall_ms << ',' << r.value << ',' << (r.oracle ? std::to_string(*r.oracle) : "") << ','
       << (r.pass ? "pass" : "fail");
    return os.str();
}

inline std::string bench_csv(const BenchResult& result) {
    std::string out = "algorithm,n,eps,seed,time_ms,value,reference,status\n";
    for (const auto& r : result.rows) out += report_csv_row(r) + "\n";
    return out;
}

}  // namespace diskmatch

#endif  // DISKMATCH_HARNESS_HPP
