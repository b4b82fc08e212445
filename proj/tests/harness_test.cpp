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


#include "wsnsim/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wsnsim/errors.hpp"

namespace wsnsim {
namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    explicit TempDir(const std::string& tag)
        : path_(fs::temp_directory_path() /
                ("wsnsim-test-" + tag + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
        fs::remove_all(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t parse_error_line(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::string config_error_field(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

TEST(ParseConfig, EmptyFileDemandsProtocols) {
    EXPECT_EQ(config_error_field(""), "protocols");
    EXPECT_EQ(config_error_field("# just a comment\n\n"), "protocols");
}

TEST(ParseConfig, DefaultsFilled) {
    const auto plan = parse_config("[experiment]\nprotocols = sep\n");
    const auto& c = plan.config;
    EXPECT_EQ(c.n, 100);
    EXPECT_EQ(c.a, 100.0);
    EXPECT_EQ(c.base_station(), (Position{50, 50}));
    EXPECT_EQ(c.eps0, 0.5);
    EXPECT_EQ(c.nu, 0.1);
    EXPECT_EQ(c.b, 1);
    EXPECT_EQ(c.packet_bits, 4000);
    EXPECT_EQ(c.radio.eps_elec, 5e-8);
    EXPECT_EQ(c.radio.eps_fs, 1e-11);
    EXPECT_EQ(c.radio.eps_mp, 1.3e-15);
    EXPECT_EQ(c.max_rounds, 3000);
    ASSERT_EQ(plan.seeds.size(), 30u);
    EXPECT_EQ(plan.seeds.front(), 1u);
    EXPECT_EQ(plan.seeds.back(), 30u);
    ASSERT_EQ(plan.protocols.size(), 1u);
    EXPECT_EQ(plan.protocols[0].name, "sep");
}

TEST(ParseConfig, FullFile) {
    const auto plan = parse_config(R"(# plan
[network]
n = 100
nu = 0.1
bs = 10, 175.5
a = 200
b = 2
eps0 = 0.25
packet_bits = 2000
max_rounds = 50
[radio]
eps_elec = 4e-8
eps_fs = 2e-11
eps_mp = 1e-15   # trailing comment
[experiment]
protocols = matrix
seed_list = 4, 8, 15
output_dir = results/x
lloyd_iterations = 1
pc_replaces_d2 = true
)");
    EXPECT_EQ(deploy(plan.config).size(), 100u);
    int advanced = 0;
    for (const auto& s : deploy(plan.config)) {
        advanced += s.kind == NodeKind::Advanced;
    }
    EXPECT_EQ(advanced, 10);
    EXPECT_EQ(plan.config.base_station(), (Position{10, 175.5}));
    EXPECT_EQ(plan.config.a, 200.0);
    EXPECT_EQ(plan.config.b, 2);
    EXPECT_EQ(plan.config.radio.eps_mp, 1e-15);
    EXPECT_EQ(plan.protocols, protocol_matrix());
    EXPECT_EQ(plan.seeds, (std::vector<std::uint64_t>{4, 8, 15}));
    EXPECT_EQ(plan.output_dir, fs::path("results/x"));
    EXPECT_EQ(plan.engine.lloyd_iterations, 1);
    EXPECT_TRUE(plan.engine.weight_replaces_d2);
}

TEST(ParseConfig, CountAndBaseSeed) {
    const auto plan = parse_config("[experiment]\nprotocols=leach\nseeds=3\nbase_seed=100\n");
    EXPECT_EQ(plan.seeds, (std::vector<std::uint64_t>{100, 101, 102}));
}

TEST(ParseConfig, ValidationNamesField) {
    EXPECT_EQ(config_error_field("[network]\nnu=1.5\n[experiment]\nprotocols=sep\n"), "nu");
    EXPECT_EQ(config_error_field("[network]\nn=0\n[experiment]\nprotocols=sep\n"), "n");
    EXPECT_EQ(config_error_field("[radio]\neps_fs=-1\n[experiment]\nprotocols=sep\n"), "eps_fs");
    EXPECT_EQ(config_error_field("[experiment]\nprotocols=sep, teen\n"), "protocols");
    EXPECT_EQ(config_error_field("[experiment]\nprotocols=sep, sep\n"), "protocols");
    EXPECT_EQ(config_error_field("[experiment]\nprotocols=sep\nseed_list=1,1\n"), "seeds");
    EXPECT_EQ(config_error_field("[experiment]\nprotocols=sep\nseeds=0\n"), "seeds");
    EXPECT_EQ(config_error_field("[experiment]\nprotocols=sep\nseeds=2\nseed_list=1\n"), "seeds");
    EXPECT_EQ(config_error_field("[experiment]\nprotocols=sep\nlloyd_iterations=-2\n"),
              "lloyd_iterations");
}

TEST(ParseConfig, ParseErrorsCarryLine) {
    EXPECT_EQ(parse_error_line("n = 5\n"), 1u);
    EXPECT_EQ(parse_error_line("[network]\n\nfoo = 1\n"), 3u);
    EXPECT_EQ(parse_error_line("[network]\nn = abc\n"), 2u);
    EXPECT_EQ(parse_error_line("[network]\nn = 5\nn = 6\n"), 3u);
    EXPECT_EQ(parse_error_line("[nettwork]\n"), 1u);
    EXPECT_EQ(parse_error_line("[network]\nn 5\n"), 2u);
    EXPECT_EQ(parse_error_line("[network]\nbs = 5\n"), 2u);
    EXPECT_EQ(parse_error_line("[experiment]\npc_replaces_d2 = yes\n"), 2u);
    EXPECT_EQ(parse_error_line("[network\n"), 1u);
}

TEST(ParseConfig, MissingFileIsIoError) {
    EXPECT_THROW(load_plan("/nonexistent/wsnsim/plan.ini"), IoError);
}

TEST(RunSeed, IndependentPerProtocol) {
    EXPECT_NE(run_seed(1, "sep"), run_seed(1, "leach"));
    EXPECT_NE(run_seed(1, "sep"), run_seed(2, "sep"));
    EXPECT_EQ(run_seed(7, "sep"), run_seed(7, "sep"));
}

TEST(Metrics, NamesRoundTrip) {
    for (auto m : {Metric::FirstDeath, Metric::HalfDeath, Metric::AvgJoulesPerRound,
                   Metric::AvgResidualPerRound, Metric::FinalAlive}) {
        EXPECT_EQ(parse_metric(to_string(m)), m);
    }
    EXPECT_FALSE(parse_metric("lifetime"));
}

TEST(Metrics, CensoredAtMaxRounds) {
    NetworkConfig c;
    c.max_rounds = 77;
    SimulationResult r;
    EXPECT_EQ(metric_value(r, Metric::FirstDeath, c), 77.0);
    EXPECT_EQ(metric_value(r, Metric::FinalAlive, c), 100.0);
    r.first_death_round = 12;
    EXPECT_EQ(metric_value(r, Metric::FirstDeath, c), 12.0);
}

TEST(SampleStats, Values) {
    const auto s = sample_stats({2, 4, 4, 4, 5, 5, 7, 9});
    EXPECT_DOUBLE_EQ(s.mean, 5.0);
    EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(32.0 / 7.0));
    EXPECT_EQ(sample_stats({3.5}).stddev, 0.0);
}

TEST(RoundCsv, RoundTripsExactly) {
    NetworkConfig c;
    c.n = 30;
    const auto r = run_simulation(c, *find_protocol("pc-kmax-means++"), 5);
    const auto text = format_round_csv(r.per_round);
    EXPECT_EQ(text.rfind("round,alive,total_residual_j,heads,consumed_j\n", 0), 0u);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(parse_round_csv(text), r.per_round);
}

TEST(RoundCsv, RejectsMalformed) {
    EXPECT_THROW(parse_round_csv("round,alive\n1,2\n"), ParseError);
    EXPECT_THROW(parse_round_csv("round,alive,total_residual_j,heads,consumed_j\n1,2,3\n"),
                 ParseError);
    EXPECT_THROW(parse_round_csv("round,alive,total_residual_j,heads,consumed_j\n1,2,x,4,5\n"),
                 ParseError);
}

ExperimentPlan small_plan(const fs::path& out, std::size_t seeds) {
    auto plan = parse_config("[network]\nn = 40\n[experiment]\nprotocols = matrix\n");
    plan.seeds.resize(seeds);
    plan.output_dir = out;
    return plan;
}

TEST(RunPlan, SingleRun) {
    TempDir dir("single");
    auto plan = parse_config("[network]\nn=30\n[experiment]\nprotocols=sep\nseeds=1\n");
    plan.output_dir = dir.path();
    const auto outcome = run_plan(plan);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir.path())) {
        files += e.path().extension() == ".csv";
    }
    EXPECT_EQ(files, 2u);  // one run plus summary.csv
    ASSERT_EQ(outcome.summary.rows.size(), 1u);
    const auto& row = outcome.summary.rows[0];
    EXPECT_EQ(row.runs, 1);
    EXPECT_EQ(row.first_death.stddev, 0.0);
    EXPECT_EQ(row.avg_joules_per_round.stddev, 0.0);
}

TEST(RunPlan, CountsAndRecomputedSummary) {
    TempDir dir("counts");
    const auto plan = small_plan(dir.path(), 4);
    const auto outcome = run_plan(plan, 3);
    EXPECT_EQ(outcome.runs.size(), 36u);
    EXPECT_EQ(outcome.summary.rows.size(), 9u);

    // Rebuild every run from its CSV alone and summarize again.
    std::vector<RunRecord> reread;
    for (const auto& p : plan.protocols) {
        for (std::size_t i = 0; i < plan.seeds.size(); ++i) {
            RunRecord rec;
            rec.protocol = p.name;
            rec.seed_index = i;
            rec.result = summarize_series(
                parse_round_csv(slurp(dir.path() / run_file_name(p.name, i))), plan.config.n);
            reread.push_back(std::move(rec));
        }
    }
    const auto again = summarize(reread, plan);
    const auto from_disk = load_summary(dir.path() / "summary.csv");
    ASSERT_EQ(again.rows.size(), outcome.summary.rows.size());
    ASSERT_EQ(from_disk.rows.size(), outcome.summary.rows.size());
    for (std::size_t r = 0; r < again.rows.size(); ++r) {
        for (auto m : {Metric::FirstDeath, Metric::HalfDeath, Metric::AvgJoulesPerRound,
                       Metric::AvgResidualPerRound, Metric::FinalAlive}) {
            const auto& want = outcome.summary.rows[r].stats(m);
            for (const auto* got : {&again.rows[r].stats(m), &from_disk.rows[r].stats(m)}) {
                EXPECT_TRUE(oracle::close_rel(got->mean, want.mean, 1e-9));
                EXPECT_TRUE(oracle::close_rel(got->stddev, want.stddev, 1e-9));
            }
        }
        EXPECT_EQ(from_disk.rows[r].runs, 4);
    }
}

TEST(RunPlan, RerunIsByteIdentical) {
    TempDir a("rerun-a");
    TempDir b("rerun-b");
    run_plan(small_plan(a.path(), 3), 1);
    run_plan(small_plan(b.path(), 3), 4);
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(a.path())) {
        const auto other = b.path() / e.path().filename();
        ASSERT_TRUE(fs::exists(other)) << other;
        EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
        ++compared;
    }
    EXPECT_EQ(compared, 28u);
}

TEST(RunPlan, SummaryRecordsParameters) {
    TempDir dir("params");
    auto plan = small_plan(dir.path(), 2);
    plan.protocols.resize(1);
    run_plan(plan);
    const auto text = slurp(dir.path() / "summary.csv");
    for (const char* line : {"# n=40\n", "# eps_mp=1.3e-15\n", "# seeds=1,2\n", "# bs=50,50\n"}) {
        EXPECT_NE(text.find(line), std::string::npos) << line;
    }
}

TEST(RunPlan, UnwritableOutputIsIoError) {
    TempDir dir("unwritable");
    fs::create_directories(dir.path());
    std::ofstream(dir.path() / "blocker") << "x";
    auto plan = small_plan(dir.path() / "blocker" / "out", 1);
    plan.protocols.resize(1);
    try {
        run_plan(plan);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(e.path().find("blocker"), std::string::npos);
    }
}

TEST(Compare, SelfComparisonIsIndistinguishable) {
    SummaryTable t;
    SummaryRow row;
    row.protocol = "sep";
    row.runs = 30;
    row.first_death = {999.0, 20.0};
    t.rows.push_back(row);
    const auto c = compare(t, Metric::FirstDeath, "sep", "sep");
    EXPECT_EQ(c.difference, 0.0);
    EXPECT_EQ(c.verdict, Verdict::Indistinguishable);
    EXPECT_THROW(compare(t, Metric::FirstDeath, "sep", "leach"), std::invalid_argument);
}

TEST(Compare, PooledTStatistic) {
    const SampleStats a{10.0, 1.0};
    const SampleStats b{9.0, 2.0};
    const auto c = compare_stats(a, 30, b, 20);
    const double pooled = (29 * 1.0 + 19 * 4.0) / 48.0;
    EXPECT_NEAR(c.t_statistic, 1.0 / std::sqrt(pooled * (1.0 / 30 + 1.0 / 20)), 1e-12);
    EXPECT_EQ(c.dof, 48.0);
    EXPECT_NEAR(c.p_a_greater + c.p_b_greater, 1.0, 1e-12);
    EXPECT_EQ(c.verdict, Verdict::AGreater);
}

TEST(Compare, TabulatedPValue) {
    // t = 2 with 10 degrees of freedom has a one-sided tail of 0.036694.
    const SampleStats a{2.0 * std::sqrt(2.0 / 6.0), 1.0};
    const SampleStats b{0.0, 1.0};
    const auto c = compare_stats(a, 6, b, 6);
    EXPECT_NEAR(c.t_statistic, 2.0, 1e-12);
    EXPECT_NEAR(c.p_a_greater, 0.036694, 1e-6);
    EXPECT_EQ(c.verdict, Verdict::AGreater);
    EXPECT_EQ(compare_stats(a, 6, b, 6, 0.99).verdict, Verdict::Indistinguishable);
    EXPECT_EQ(compare_stats(b, 6, a, 6).verdict, Verdict::BGreater);
}

TEST(Compare, DegenerateSamples) {
    EXPECT_EQ(compare_stats({5, 0}, 3, {4, 0}, 3).verdict, Verdict::AGreater);
    EXPECT_EQ(compare_stats({5, 0}, 3, {5, 0}, 3).verdict, Verdict::Indistinguishable);
    EXPECT_EQ(compare_stats({5, 0}, 1, {4, 0}, 1).verdict, Verdict::Indistinguishable);
    EXPECT_THROW(compare_stats({5, 0}, 3, {4, 0}, 3, 1.5), std::invalid_argument);
}

}  // namespace
}  // namespace wsnsim
