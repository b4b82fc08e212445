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

#ifndef WSNSIM_HARNESS_HPP
#define WSNSIM_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/net_model.hpp"
#include "wsnsim/protocol.hpp"

/**
 * @file harness.hpp
 *
 * Experiment plans: configuration text, replicated runs across protocols and
 * seeds, per-run CSV series, summary tables and two-sample comparisons.
 *
 * Configuration format (one `key = value` per line, `#` starts a comment):
 *
 *     [network]
 *     n = 100             a = 100          bs = 50, 50
 *     nu = 0.1            b = 1            eps0 = 0.5
 *     packet_bits = 4000  max_rounds = 3000
 *     [radio]
 *     eps_elec = 5e-8     eps_fs = 1e-11   eps_mp = 1.3e-15
 *     [experiment]
 *     protocols = sep, pc-kmax-means++     # or "matrix" for all nine
 *     seeds = 30          base_seed = 1    # or: seed_list = 4, 8, 15
 *     output_dir = out    lloyd_iterations = 0   pc_replaces_d2 = false
 *
 * Every key is optional except `protocols`; missing keys take the defaults
 * shown. When `bs` is absent the base station sits at the field center.
 */

namespace wsnsim {

struct ExperimentPlan {
    NetworkConfig config;
    std::vector<ProtocolSpec> protocols;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path output_dir = "wsnsim-out";
    EngineOptions engine;
};

/// Throws ParseError (with line number) or ConfigError (with field name).
ExperimentPlan parse_config(std::string_view text);

/// Reads and parses a file. Throws IoError if it cannot be read.
ExperimentPlan load_plan(const std::filesystem::path& path);

/// Throws ConfigError on empty/duplicate seeds, no protocols, or bad config.
void validate(const ExperimentPlan& plan);

/// Seed for one (seed value, protocol) run; protocols never share streams.
std::uint64_t run_seed(std::uint64_t seed, std::string_view protocol_name);

enum class Metric : std::uint8_t {
    FirstDeath,
    HalfDeath,
    AvgJoulesPerRound,
    AvgResidualPerRound,
    FinalAlive,
};

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

/// Per-run scalar for `metric`. Undefined death rounds count as max_rounds;
/// a run with no rounds has all n nodes alive.
double metric_value(const SimulationResult& result, Metric metric, const NetworkConfig& config);

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;  ///< sample (n - 1) standard deviation, 0 for n = 1
};

SampleStats sample_stats(const std::vector<double>& values);

struct SummaryRow {
    std::string protocol;
    std::int32_t runs = 0;
    SampleStats first_death;
    SampleStats half_death;
    SampleStats avg_joules_per_round;
    SampleStats avg_residual_per_round;
    SampleStats final_alive;

    const SampleStats& stats(Metric metric) const;
};

struct SummaryTable {
    std::vector<SummaryRow> rows;

    const SummaryRow* find(std::string_view protocol) const;
};

struct RunRecord {
    std::string protocol;
    std::size_t seed_index = 0;
    std::uint64_t seed = 0;
    SimulationResult result;
};

struct PlanOutcome {
    SummaryTable summary;
    std::vector<RunRecord> runs;  ///< sorted by (protocol order, seed index)
};

/// Runs every (protocol, seed) pair with up to `jobs` worker threads and
/// aggregates. Writes nothing.
PlanOutcome execute_plan(const ExperimentPlan& plan, unsigned jobs = 1);

/// execute_plan plus one CSV per run and summary.csv under plan.output_dir.
/// Throws IoError with the offending path.
PlanOutcome run_plan(const ExperimentPlan& plan, unsigned jobs = 1);

SummaryTable summarize(const std::vector<RunRecord>& runs, const ExperimentPlan& plan);

/// File name of one run's CSV inside the output directory.
std::string run_file_name(std::string_view protocol, std::size_t seed_index);

/// Header: round,alive,total_residual_j,heads,consumed_j. Doubles are written
/// in shortest round-trip form.
std::string format_round_csv(const std::vector<RoundMetrics>& rounds);
std::vector<RoundMetrics> parse_round_csv(std::string_view text);

std::string format_summary(const SummaryTable& table, const ExperimentPlan& plan);
SummaryTable parse_summary(std::string_view text);
SummaryTable load_summary(const std::filesystem::path& path);

enum class Verdict : std::uint8_t { AGreater, BGreater, Indistinguishable };

std::string_view to_string(Verdict verdict);

struct Comparison {
    Metric metric = Metric::FirstDeath;
    std::string protocol_a;
    std::string protocol_b;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double difference = 0.0;  ///< mean_a - mean_b
    double t_statistic = 0.0;
    double dof = 0.0;
    double p_a_greater = 1.0;  ///< one-sided p-value for mean_a > mean_b
    double p_b_greater = 1.0;
    Verdict verdict = Verdict::Indistinguishable;
};

/**
 * Pooled-variance two-sample t-test of mean(a) > mean(b) (and the reverse)
 * at the given confidence. Throws std::invalid_argument for an unknown
 * protocol.
 */
Comparison compare(const SummaryTable& summary, Metric metric, std::string_view protocol_a,
                   std::string_view protocol_b, double confidence = 0.95);

Comparison compare_stats(const SampleStats& a, std::int32_t runs_a, const SampleStats& b,
                         std::int32_t runs_b, double confidence = 0.95);

}  // namespace wsnsim

#endif  // WSNSIM_HARNESS_HPP
