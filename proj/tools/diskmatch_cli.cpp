// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

// Command-line front end: instance generation, single runs with optional
// oracle verification, and scaling benchmarks with CSV/JSON reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskmatch/diskmatch.hpp"

namespace {

using diskmatch::RunReport;
using json = nlohmann::json;

json report_to_json(const RunReport& r) {
    json j{{"algorithm", r.algorithm}, {"instance", r.instance},  {"n", r.n},
           {"value", r.value},         {"is_estimate", r.is_estimate},
           {"seed", r.seed},           {"time_ms", r.wall_ms},
           {"validated", r.validated}, {"pass", r.pass},          {"detail", r.detail}};
    if (r.eps) j["eps"] = *r.eps;
    if (r.oracle) j["oracle"] = *r.oracle;
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

std::vector<diskmatch::BenchSeries> parse_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    std::vector<diskmatch::BenchSeries> series;
    if (!cfg.contains("runs")) return series;
    for (const auto& row : cfg.at("runs")) {
        diskmatch::BenchSeries s;
        s.algorithm = row.at("algorithm").get<std::string>();
        const auto kind = diskmatch::instance_kind_from_string(
            row.value("kind", std::string("uniform-unit")));
        if (!kind) throw std::runtime_error("config: unknown instance kind in " + path);
        s.kind = *kind;
        s.ns = row.at("n").get<std::vector<int>>();
        s.box_factor = row.value("box_factor", 0.0);
        s.box_side = row.value("box", 0.0);
        s.r_min = row.value("r_min", 1.0);
        s.r_max = row.value("r_max", 1.0);
        if (row.contains("group")) s.group_size = row.at("group").get<int>();
        if (row.contains("eps")) s.eps = row.at("eps").get<double>();
        if (row.contains("seeds")) s.seeds = row.at("seeds").get<std::vector<std::uint64_t>>();
        s.repetitions = row.value("repetitions", 3);
        s.with_oracle = row.value("oracle", false);
        series.push_back(std::move(s));
    }
    return series;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matching algorithms and estimators for disk intersection graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string gen_kind = "uniform-unit", gen_out;
    int gen_n = 0;
    double gen_box = 10.0, gen_rmin = 1.0, gen_rmax = 1.0;
    std::optional<int> gen_group;
    std::uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind,
                    "uniform-unit | uniform-mixed-radius | clustered | stacked-towers | planted-matching");
    gen->add_option("--n", gen_n, "number of disks")->required();
    gen->add_option("--box", gen_box, "box side length");
    gen->add_option("--rmin", gen_rmin, "minimum radius");
    gen->add_option("--rmax", gen_rmax, "maximum radius");
    gen->add_option("--group", gen_group,
                    "disks per tower / planted pairs / cluster count, depending on kind");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output path (default: stdout)");

    // run / verify
    std::string run_algo, run_in, run_out, run_format = "json";
    std::optional<double> run_eps;
    std::uint64_t run_seed = 1;
    bool run_oracle = false;
    auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--algo", run_algo, "algorithm id (see --list)")->required();
        cmd->add_option("--in", run_in, "instance file")->required();
        cmd->add_option("--eps", run_eps, "approximation / estimation parameter");
        cmd->add_option("--seed", run_seed, "seed for randomized algorithms");
        cmd->add_option("--out", run_out, "report path (default: stdout)");
        cmd->add_option("--format", run_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto* run = app.add_subcommand("run", "run one algorithm on an instance");
    add_run_options(run);
    run->add_flag("--oracle", run_oracle, "also compute the exact reference and check the bound");
    auto* verify = app.add_subcommand("verify", "run with oracle checking; exit 1 on failure");
    add_run_options(verify);

    // bench
    auto* bench = app.add_subcommand("bench", "timed series from a JSON config");
    std::string bench_config, bench_out = "bench_report";
    bench->add_option("--config", bench_config, "JSON benchmark configuration")->required();
    bench->add_option("--out", bench_out, "output prefix (writes <out>.csv and <out>.json)");

    bool list_algos = false;
    app.add_flag("--list", list_algos, "print the known algorithm ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (list_algos) {
            for (const auto& id : diskmatch::algorithm_ids()) std::cout << id << '\n';
            return 0;
        }
        if (gen->parsed()) {
            const auto kind = diskmatch::instance_kind_from_string(gen_kind);
            if (!kind) throw std::invalid_argument("unknown instance kind: " + gen_kind);
            diskmatch::InstanceSpec spec;
            spec.kind = *kind;
            spec.n = gen_n;
            spec.box_side = gen_box;
            spec.r_min = gen_rmin;
            spec.r_max = gen_rmax;
            spec.group_size = gen_group;
            spec.seed = gen_seed;
            const auto disks = diskmatch::generate_instance(spec);
            std::ostringstream os;
            diskmatch::write_instance(os, disks);
            emit(os.str(), gen_out);
            return 0;
        }
        if (run->parsed() || verify->parsed()) {
            const auto disks = diskmatch::load_instance(run_in);
            diskmatch::RunOptions opt;
            opt.eps = run_eps;
            opt.seed = run_seed;
            opt.with_oracle = run_oracle || verify->parsed();
            opt.instance_label = run_in;
            const auto rep = diskmatch::run_algorithm(run_algo, disks, opt);
            if (run_format == "csv") {
                emit("algorithm,n,eps,seed,time_ms,value,reference,status\n" +
                         diskmatch::report_csv_row(rep) + "\n",
                     run_out);
            } else {
                emit(report_to_json(rep).dump(2) + "\n", run_out);
            }
            return rep.pass ? 0 : 1;
        }
        if (bench->parsed()) {
            const auto series = parse_bench_config(bench_config);
            const auto result = diskmatch::run_benchmark(series);
            std::ofstream csv(bench_out + ".csv");
            if (!csv) throw std::runtime_error("cannot open " + bench_out + ".csv");
            csv << diskmatch::bench_csv(result);
            json summary;
            summary["runs"] = json::array();
            for (const auto& r : result.rows) summary["runs"].push_back(report_to_json(r));
            summary["slopes"] = result.slopes;
            std::ofstream js(bench_out + ".json");
            if (!js) throw std::runtime_error("cannot open " + bench_out + ".json");
            js << summary.dump(2) << '\n';
            bool all_pass = true;
            for (const auto& r : result.rows) all_pass = all_pass && r.pass;
            return all_pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
