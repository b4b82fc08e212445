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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every tolerance and budget is a named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "wsnsim/adapt_prob.hpp"
#include "wsnsim/clustering.hpp"
#include "wsnsim/energy_model.hpp"
#include "wsnsim/harness.hpp"
#include "wsnsim/protocol.hpp"

namespace {

using namespace wsnsim;
namespace fs = std::filesystem;

constexpr double kOracleRel = 1e-12;
constexpr double kOracleBudgetS = 1.0;
constexpr int kIdentityTrials = 1000;
constexpr double kIdentityRel = 1e-9;
constexpr int kSeederDraws = 100000;
constexpr double kSeederSigmas = 3.0;
constexpr double kSeederBudgetS = 10.0;
constexpr int kConservationSeeds = 10;
constexpr double kConservationRel = 1e-9;
constexpr double kConservationBudgetS = 120.0;
constexpr int kOrderingSeeds = 30;
constexpr double kConfidence = 0.95;
constexpr double kOrderingBudgetS = 600.0;
constexpr int kDeterminismSeeds = 3;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o, double seconds) {
    std::printf("[%s] criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, seconds);
    if (!o.detail.empty()) {
        std::printf("%s", o.detail.c_str());
    }
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

double timed(const std::function<Outcome()>& body, Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string line(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return std::string("    ") + buf + "\n";
}

SensorNode node_at(NodeId id, double x, double y, double res, double init) {
    SensorNode s;
    s.id = id;
    s.pos = {x, y};
    s.energy_init = init;
    s.energy_res = res;
    s.alive = true;
    return s;
}

// 1 -------------------------------------------------------------------------

Outcome equation_oracles() {
    Outcome o;
    int checks = 0;
    auto check = [&](const char* what, double got, oracle::real want) {
        ++checks;
        if (!oracle::close_rel(got, want, kOracleRel)) {
            o.pass = false;
            o.detail += line("%s: got %.17g want %.17Lg", what, got, want);
        }
    };
    const RadioParams r{50e-9, 10e-12, 0.0013e-12};
    check("distance_threshold(eq)", distance_threshold({50e-9, 2e-12, 2e-12}), 1);
    check("distance_threshold", distance_threshold(r), oracle::crossover(10e-12L, 0.0013e-12L));
    check("distance_threshold(4:1)", distance_threshold({50e-9, 4e-12, 1e-12}), 2);
    check("energy_tx(d=0)", energy_tx(r, 4000, 0), 4000 * 50e-9L);
    check("energy_tx(d=50)", energy_tx(r, 4000, 50), 3.0e-4L);
    check("energy_tx(d=100)", energy_tx(r, 4000, 100), 7.2e-4L);
    check("energy_rx(1)", energy_rx(r, 1), 50e-9L);
    check("energy_rx(4000)", energy_rx(r, 4000), 2.0e-4L);
    check("energy_aggregate(4000)", energy_aggregate(r, 4000), 2.0e-4L);
    check("energy_aggregate(unit)", energy_aggregate({1, 1, 1}, 1), 1);
    const RadioParams unit{50e-9, 1e-12, 2 * std::numbers::pi * 1e-12};
    check("optimal_distance(unit)", optimal_distance(unit, 10, 100, 42), 42);
    check("optimal_distance", optimal_distance(r, 100, 100, 75),
          oracle::d_opt(10e-12L, 0.0013e-12L, 100, 100, 75));
    check("optimal_clusters", optimal_clusters(r, 100, 100, 75),
          oracle::kappa(10e-12L, 0.0013e-12L, 100, 100, 75));
    check("adaptive_probability(eq)", adaptive_probability(7, 7), 1);
    check("adaptive_probability(100)", adaptive_probability(6.221, 100), 0.06221L);
    check("adaptive_probability(50)", adaptive_probability(6.221, 50), 0.12442L);
    ClusterStats avg;
    avg.eps_avg = 0.5;
    auto e = energy_quality(node_at(1, 0, 0, 0.5, 0.5), avg);
    check("energy_quality full", e.p_eta, 1);
    e = energy_quality(node_at(1, 0, 0, 0.25, 0.5), avg);
    check("energy_quality p_xi", e.p_xi, 0.5L);
    check("energy_quality p_rho", e.p_rho, 0.5L);
    check("energy_quality p_eta", e.p_eta, 0.25L);
    e = energy_quality(node_at(1, 0, 0, 0.6, 1.0), avg);
    check("energy_quality clamp p_xi", e.p_xi, 1);
    check("energy_quality clamp p_rho", e.p_rho, 0.6L);
    check("energy_quality clamp p_eta", e.p_eta, 0.6L);
    ClusterStats spread;
    spread.delta_coeff = std::sqrt(131.0);
    spread.sum_sq_dist = 425;
    auto d = distance_quality(0, 16, spread);
    check("distance_quality(d=0)", d.p_psi, 1);
    d = distance_quality(32, 16, ClusterStats{});
    check("distance_quality p_gamma", d.p_gamma, 0.5L);
    d = distance_quality(20, 16, spread);
    check("distance_quality p_sigma", d.p_sigma, 400.0L / 425.0L);
    check("election_probability zero", election_probability(0, 0.5, 0.5).p_c, 0);
    const auto ep = election_probability(0.1, 0.6, 0.5);
    check("election_probability p_c", ep.p_c, 0.03L);
    check("election_probability phi", ep.phi, 0.3L);
    check("election_probability unit", election_probability(1, 1, 1).p_c, 1);
    o.detail += line("%d oracle checks at %.0e relative", checks, kOracleRel);
    return o;
}

// 2 -------------------------------------------------------------------------

Outcome consistency_identity() {
    Outcome o;
    Rng rng(0xC0FFEE);
    double worst = 0.0;
    for (int i = 0; i < kIdentityTrials; ++i) {
        NetworkConfig c;
        c.n = static_cast<std::int32_t>(1 + rng.uniform_index(2000));
        c.a = rng.uniform(1, 2000);
        c.radio = {rng.uniform(1e-9, 1e-6), rng.uniform(1e-13, 1e-9), rng.uniform(1e-18, 1e-13)};
        validate(c);
        const double d_bs = rng.uniform(0.5, 3000);
        const double k = optimal_clusters(c, d_bs);
        const double dopt = optimal_distance(c, d_bs);
        const double implied = c.a * c.a / (2 * std::numbers::pi * dopt * dopt);
        worst = std::max(worst, std::fabs(k - implied) / k);
    }
    o.pass = worst < kIdentityRel;
    o.detail = line("%d configs, worst relative gap %.3e (limit %.0e)", kIdentityTrials, worst,
                    kIdentityRel);
    return o;
}

// 3 -------------------------------------------------------------------------

Outcome seeder_distribution() {
    Outcome o;
    const std::vector<SensorNode> nodes{node_at(1, 0, 0, 0.5, 0.5), node_at(2, 1, 0, 0.5, 0.5),
                                        node_at(3, 2, 0, 0.5, 0.5), node_at(4, 10, 0, 0.5, 0.5)};
    const std::map<NodeId, double> law{{2, 1.0 / 105}, {3, 4.0 / 105}, {4, 100.0 / 105}};
    const auto ctx = cold_start_context(nodes, 16.0);
    Rng rng(20260101);
    std::map<NodeId, int> counts;
    int draws = 0;
    // Condition on the first head being the node at x = 0.
    while (draws < kSeederDraws) {
        const auto heads = seed_heads(nodes, 2, WeightMode::PlainD2, ctx, rng);
        if (heads[0] == 1) {
            ++counts[heads[1]];
            ++draws;
        }
    }
    for (const auto& [id, p] : law) {
        const double expect = draws * p;
        const double sd = std::sqrt(draws * p * (1 - p));
        const double z = (counts[id] - expect) / sd;
        o.pass = o.pass && std::fabs(z) <= kSeederSigmas;
        o.detail += line("node %d: %d of %d (expected %.1f, z = %+.2f)", id, counts[id], draws,
                         expect, z);
    }
    return o;
}

// 4 -------------------------------------------------------------------------

Outcome conservation() {
    Outcome o;
    double worst = 0.0;
    int bad_monotone = 0;
    int bad_participant = 0;
    long rounds = 0;
    for (const auto& protocol : protocol_matrix()) {
        for (int s = 1; s <= kConservationSeeds; ++s) {
            NetworkConfig c;
            c.rng_seed = run_seed(static_cast<std::uint64_t>(s), protocol.name);
            Simulator sim(c, protocol);
            double consumed = 0.0;
            auto prev_alive = sim.alive_count();
            double prev_res = sim.initial_energy();
            while (!sim.finished()) {
                std::set<NodeId> alive;
                for (const auto& n : sim.nodes()) {
                    if (n.alive) {
                        alive.insert(n.id);
                    }
                }
                const auto m = sim.step();
                ++rounds;
                consumed += m.consumed_this_round;
                worst = std::max(worst, std::fabs(sim.initial_energy() - m.total_residual - consumed) /
                                            sim.initial_energy());
                bad_monotone += (m.alive > prev_alive || m.total_residual > prev_res) ? 1 : 0;
                prev_alive = m.alive;
                prev_res = m.total_residual;
                for (const auto& cl : sim.clusters()) {
                    for (NodeId id : cl.member_ids) {
                        bad_participant += alive.count(id) ? 0 : 1;
                    }
                }
            }
        }
    }
    o.pass = worst < kConservationRel && bad_monotone == 0 && bad_participant == 0;
    o.detail = line("%ld rounds over 9 protocols x %d seeds", rounds, kConservationSeeds);
    o.detail += line("worst conservation gap %.3e (limit %.0e)", worst, kConservationRel);
    o.detail += line("monotonicity violations %d, dead participants %d", bad_monotone,
                     bad_participant);
    return o;
}

// 5-7 -----------------------------------------------------------------------

struct Ordering {
    const char* higher;
    const char* lower;
};

Outcome ordering(const SummaryTable& table, Metric metric, const std::vector<Ordering>& chain) {
    Outcome o;
    for (const auto& [hi, lo] : chain) {
        const auto c = compare(table, metric, hi, lo, kConfidence);
        const bool ok = c.verdict == Verdict::AGreater;
        o.pass = o.pass && ok;
        o.detail += line("%-18s %12.4f > %-18s %12.4f  t = %7.3f  p = %.3g  %s", hi, c.mean_a, lo,
                         c.mean_b, c.t_statistic, c.p_a_greater, ok ? "ok" : "NOT SHOWN");
    }
    return o;
}

SummaryTable ordering_experiment(double& seconds) {
    ExperimentPlan plan;
    plan.protocols = protocol_matrix();
    for (int s = 1; s <= kOrderingSeeds; ++s) {
        plan.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto outcome = execute_plan(plan, std::max(1u, std::thread::hardware_concurrency()));
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return outcome.summary;
}

// 8 -------------------------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files[e.path().filename().string()] = ss.str();
    }
    return files;
}

Outcome determinism() {
    Outcome o;
    const auto base = fs::temp_directory_path() / "wsnsim-acceptance";
    fs::remove_all(base);
    ExperimentPlan plan;
    plan.protocols = protocol_matrix();
    for (int s = 1; s <= kDeterminismSeeds; ++s) {
        plan.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    plan.output_dir = base / "first";
    run_plan(plan, 1);
    plan.output_dir = base / "second";
    run_plan(plan, std::max(2u, std::thread::hardware_concurrency()));
    const auto a = snapshot(base / "first");
    const auto b = snapshot(base / "second");
    std::size_t bytes = 0;
    for (const auto& [name, content] : a) {
        bytes += content.size();
    }
    o.pass = a == b && a.size() == plan.protocols.size() * plan.seeds.size() + 1;
    o.detail = line("%zu files, %zu bytes, identical: %s", a.size(), bytes, a == b ? "yes" : "no");
    fs::remove_all(base);
    return o;
}

}  // namespace

int main() {
    Outcome o;
    double s = timed(equation_oracles, o);
    o.pass = o.pass && s < kOracleBudgetS;
    report(1, "equation oracles", o, s);

    s = timed(consistency_identity, o);
    report(2, "optimal cluster count / distance identity", o, s);

    s = timed(seeder_distribution, o);
    o.pass = o.pass && s < kSeederBudgetS;
    report(3, "seeder second-head distribution", o, s);

    s = timed(conservation, o);
    o.pass = o.pass && s < kConservationBudgetS;
    report(4, "conservation and monotonicity", o, s);

    double experiment_s = 0.0;
    const auto table = ordering_experiment(experiment_s);
    std::printf("    ordering experiment: 9 protocols x %d seeds in %.1f s\n", kOrderingSeeds,
                experiment_s);
    const bool in_budget = experiment_s < kOrderingBudgetS;

    o = ordering(table, Metric::FirstDeath,
                 {{"pc-kmax-means++", "eta-kmax-means++"},
                  {"eta-kmax-means++", "psi-kmax-means++"},
                  {"psi-kmax-means++", "sep"}});
    o.pass = o.pass && in_budget;
    report(5, "stability period ordering (first death)", o, experiment_s);

    o = ordering(table, Metric::AvgResidualPerRound,
                 {{"pc-kmax-means++", "eta-kmax-means++"},
                  {"eta-kmax-means++", "psi-kmax-means++"},
                  {"psi-kmax-means++", "sep"}});
    o.pass = o.pass && in_budget;
    report(6, "energy preservation ordering (residual per round)", o, 0.0);

    o = ordering(table, Metric::FirstDeath,
                 {{"eta-kmax-sep", "sep"},
                  {"psi-kmax-means++", "psi-kmax-leach"},
                  {"psi-kmax-leach", "psi-kmax-sep"}});
    report(7, "baseline sub-orderings (first death)", o, 0.0);

    s = timed(determinism, o);
    report(8, "byte-identical reruns", o, s);

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
