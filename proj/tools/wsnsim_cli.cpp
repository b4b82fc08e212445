// Copyright 2026 The wsnsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// wsnsim: run experiment plans and compare their summaries.
//
//   wsnsim run --config plan.ini [--out dir] [--jobs k]
//   wsnsim compare --summary dir/summary.csv --metric first_death --a pc-kmax-means++ --b sep
//   wsnsim list-protocols
//
// Exit status: 0 success, 1 invalid input, 2 file system error.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "wsnsim/errors.hpp"
#include "wsnsim/harness.hpp"
#include "wsnsim/protocol.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

void print_summary(const wsnsim::SummaryTable& table) {
    std::printf("%-20s %5s %16s %16s %14s %14s\n", "protocol", "runs", "first_death",
                "half_death", "J/round", "residual/round");
    for (const auto& row : table.rows) {
        std::printf("%-20s %5d %8.1f +- %5.1f %8.1f +- %5.1f %14.6f %14.4f\n",
                    row.protocol.c_str(), row.runs, row.first_death.mean, row.first_death.stddev,
                    row.half_death.mean, row.half_death.stddev, row.avg_joules_per_round.mean,
                    row.avg_residual_per_round.mean);
    }
}

int run_command(const std::string& config_path, const std::string& out_dir, unsigned jobs) {
    auto plan = wsnsim::load_plan(config_path);
    if (!out_dir.empty()) {
        plan.output_dir = out_dir;
    }
    const auto outcome = wsnsim::run_plan(plan, jobs);
    print_summary(outcome.summary);
    std::printf("wrote %zu runs to %s\n", outcome.runs.size(), plan.output_dir.string().c_str());
    return 0;
}

int compare_command(const std::string& summary_path, const std::string& metric_name,
                    const std::string& a, const std::string& b, double confidence) {
    const auto metric = wsnsim::parse_metric(metric_name);
    if (!metric) {
        std::fprintf(stderr, "error: unknown metric '%s'\n", metric_name.c_str());
        return kExitInvalid;
    }
    const auto summary = wsnsim::load_summary(summary_path);
    const auto c = wsnsim::compare(summary, *metric, a, b, confidence);
    std::printf("metric      %s\n", std::string(wsnsim::to_string(c.metric)).c_str());
    std::printf("mean(a)     %.6g  [%s]\n", c.mean_a, c.protocol_a.c_str());
    std::printf("mean(b)     %.6g  [%s]\n", c.mean_b, c.protocol_b.c_str());
    std::printf("difference  %.6g\n", c.difference);
    std::printf("t           %.4f  (dof %.0f)\n", c.t_statistic, c.dof);
    std::printf("p(a>b)      %.3g\n", c.p_a_greater);
    std::printf("p(b>a)      %.3g\n", c.p_b_greater);
    std::printf("verdict     %s at %.0f%%\n", std::string(wsnsim::to_string(c.verdict)).c_str(),
                confidence * 100.0);
    return 0;
}

void list_protocols() {
    const auto matrix = wsnsim::protocol_matrix().size();
    const auto& all = wsnsim::known_protocols();
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::printf("%s%s\n", all[i].name.c_str(), i < matrix ? "" : "  (ablation)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-based wireless sensor network clustering simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* run = app.add_subcommand("run", "Run an experiment plan and write CSV results");
    run->add_option("--config", config_path, "Plan file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

    std::string summary_path;
    std::string metric_name;
    std::string proto_a;
    std::string proto_b;
    double confidence = 0.95;
    auto* cmp = app.add_subcommand("compare", "Two-sample test of mean(a) > mean(b)");
    cmp->add_option("--summary", summary_path, "summary.csv written by run")->required();
    cmp->add_option("--metric", metric_name,
                    "first_death, half_death, avg_joules_per_round, avg_residual_per_round "
                    "or final_alive")
        ->required();
    cmp->add_option("--a", proto_a, "Protocol a")->required();
    cmp->add_option("--b", proto_b, "Protocol b")->required();
    cmp->add_option("--confidence", confidence, "Confidence level")
        ->check(CLI::Range(0.5, 0.9999));

    auto* list = app.add_subcommand("list-protocols", "Print known protocol names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*run) {
            return run_command(config_path, out_dir, jobs);
        }
        if (*cmp) {
            return compare_command(summary_path, metric_name, proto_a, proto_b, confidence);
        }
        if (*list) {
            list_protocols();
        }
        return 0;
    } catch (const wsnsim::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const wsnsim::ParseError& e) {
        std::fprintf(stderr, "error: %s: %s\n",
                     (*run ? config_path : summary_path).c_str(), e.what());
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
}
