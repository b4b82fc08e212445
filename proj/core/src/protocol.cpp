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

#include "wsnsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "wsnsim/energy_model.hpp"
#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

ProtocolSpec threshold(std::string name, Election election, QualityGate gate, bool adaptive) {
    ProtocolSpec p;
    p.name = std::move(name);
    p.election = election;
    p.quality_gate = gate;
    p.adaptive_p = adaptive;
    return p;
}

ProtocolSpec means_pp(std::string name, WeightMode mode) {
    ProtocolSpec p;
    p.name = std::move(name);
    p.election = Election::KmaxMeansPP;
    p.weight_mode = mode;
    return p;
}

std::vector<ProtocolSpec> make_matrix() {
    return {
        threshold("sep", Election::SepThreshold, QualityGate::None, false),
        threshold("leach", Election::LeachThreshold, QualityGate::None, false),
        means_pp("eta-kmax-means++", WeightMode::EnergyEta),
        threshold("eta-kmax-sep", Election::SepThreshold, QualityGate::EnergyEta, true),
        threshold("eta-kmax-leach", Election::LeachThreshold, QualityGate::EnergyEta, true),
        means_pp("psi-kmax-means++", WeightMode::DistancePsi),
        threshold("psi-kmax-sep", Election::SepThreshold, QualityGate::DistancePsi, true),
        threshold("psi-kmax-leach", Election::LeachThreshold, QualityGate::DistancePsi, true),
        means_pp("pc-kmax-means++", WeightMode::CombinedPc),
    };
}

WeightMode gate_mode(QualityGate gate) {
    switch (gate) {
        case QualityGate::EnergyEta: return WeightMode::EnergyEta;
        case QualityGate::DistancePsi: return WeightMode::DistancePsi;
        case QualityGate::CombinedPc: return WeightMode::CombinedPc;
        case QualityGate::None: break;
    }
    return WeightMode::PlainD2;
}

std::vector<SensorNode> alive_nodes(const std::vector<SensorNode>& nodes) {
    std::vector<SensorNode> alive;
    alive.reserve(nodes.size());
    for (const auto& node : nodes) {
        if (node.alive) {
            alive.push_back(node);
        }
    }
    return alive;
}

}  // namespace

const std::vector<ProtocolSpec>& protocol_matrix() {
    static const std::vector<ProtocolSpec> matrix = make_matrix();
    return matrix;
}

const std::vector<ProtocolSpec>& known_protocols() {
    static const std::vector<ProtocolSpec> all = [] {
        auto v = make_matrix();
        v.push_back(means_pp("kmax-means++", WeightMode::PlainD2));
        return v;
    }();
    return all;
}

std::optional<ProtocolSpec> find_protocol(std::string_view name) {
    for (const auto& p : known_protocols()) {
        if (p.name == name) {
            return p;
        }
    }
    return std::nullopt;
}

double threshold_base_probability(Election election, NodeKind kind, double p, double nu,
                                  std::int32_t b) {
    if (election != Election::SepThreshold) {
        return p;
    }
    const double denom = 1.0 + nu * static_cast<double>(b);
    return kind == NodeKind::Advanced ? p * (1.0 + static_cast<double>(b)) / denom : p / denom;
}

namespace {

std::int32_t epoch_length(double p) {
    if (!(p > 0.0)) {
        return std::numeric_limits<std::int32_t>::max();
    }
    if (p >= 1.0) {
        return 1;
    }
    return static_cast<std::int32_t>(std::ceil(1.0 / p));
}

}  // namespace

double threshold_value(double p, std::int32_t round_index) {
    if (!(p > 0.0)) {
        return 0.0;
    }
    const std::int32_t epoch = epoch_length(p);
    const double denom = 1.0 - p * static_cast<double>(round_index % epoch);
    if (denom <= 0.0) {
        return 1.0;
    }
    return std::clamp(p / denom, 0.0, 1.0);
}

std::vector<NodeId> elect_heads_threshold(std::span<const SensorNode> alive,
                                          const ProtocolSpec& protocol, double p,
                                          std::int32_t round_index, const NetworkConfig& config,
                                          const SeedingContext& context, ThresholdMemory& memory,
                                          Rng& rng) {
    if (alive.empty()) {
        throw SimulationError("threshold election needs at least one alive node");
    }
    const WeightMode gate = gate_mode(protocol.quality_gate);
    std::vector<NodeId> heads;
    for (const auto& node : alive) {
        const auto id = static_cast<std::size_t>(node.id);
        if (id >= memory.elected_in_epoch.size()) {
            memory.elected_in_epoch.resize(id + 1, false);
            memory.epoch_length.resize(id + 1, 0);
        }
        const double p_node =
            threshold_base_probability(protocol.election, node.kind, p, config.nu, config.b);
        const std::int32_t epoch = epoch_length(p_node);
        if (memory.epoch_length[id] != epoch || round_index % epoch == 0) {
            memory.epoch_length[id] = epoch;
            memory.elected_in_epoch[id] = false;
        }
        if (memory.elected_in_epoch[id]) {
            continue;
        }
        double t = threshold_value(p_node, round_index);
        if (gate != WeightMode::PlainD2) {
            t *= quality_weight(node, gate, context);
        }
        if (rng.bernoulli(t)) {
            memory.elected_in_epoch[id] = true;
            heads.push_back(node.id);
        }
    }
    if (heads.empty()) {
        const auto best = std::max_element(
            alive.begin(), alive.end(), [](const SensorNode& lhs, const SensorNode& rhs) {
                if (lhs.energy_res != rhs.energy_res) {
                    return lhs.energy_res < rhs.energy_res;
                }
                return lhs.id > rhs.id;
            });
        memory.elected_in_epoch[static_cast<std::size_t>(best->id)] = true;
        heads.push_back(best->id);
    }
    return heads;
}

Simulator::Simulator(NetworkConfig config, ProtocolSpec protocol, EngineOptions options)
    : config_(std::move(config)),
      protocol_(std::move(protocol)),
      options_(options),
      nodes_(deploy(config_)),
      initial_energy_(total_initial_energy(nodes_)),
      rng_(derive_seed(config_.rng_seed, "rounds")),
      memory_(nodes_.size()),
      history_(nodes_.size() + 1) {
    if (options_.lloyd_iterations < 0) {
        throw ConfigError("lloyd_iterations", "must be non-negative");
    }
}

bool Simulator::finished() const {
    return round_ >= config_.max_rounds || alive_count() == 0;
}

std::int32_t Simulator::alive_count() const {
    return static_cast<std::int32_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const SensorNode& s) { return s.alive; }));
}

RoundPlan Simulator::plan_round(std::span<const SensorNode> alive) const {
    RoundPlan plan;
    plan.zeta = static_cast<std::int32_t>(alive.size());
    const Position bs = config_.base_station();
    double d_bs = 0.0;
    for (const auto& node : alive) {
        d_bs += distance(node.pos, bs);
    }
    d_bs /= static_cast<double>(alive.size());
    // A lone node sitting on the base station would make every quantity blow up.
    d_bs = std::max(d_bs, 1e-9);
    plan.optimality = optimality(config_.radio, config_.a, plan.zeta, d_bs);
    const double kappa = plan.optimality.kappa_max;
    plan.k = static_cast<std::int32_t>(
        std::clamp<double>(std::llround(kappa), 1.0, static_cast<double>(plan.zeta)));
    plan.p_adp = adaptive_probability(kappa, plan.zeta);
    if (protocol_.adaptive_p) {
        plan.p_threshold = plan.p_adp;
    } else {
        plan.p_threshold = fixed_p_.value_or(std::min(kappa / config_.n, 1.0));
    }
    return plan;
}

std::vector<Cluster> Simulator::form_clusters(std::span<const SensorNode> alive,
                                              const RoundPlan& plan,
                                              const SeedingContext& context) {
    if (protocol_.election != Election::KmaxMeansPP) {
        const auto heads = elect_heads_threshold(alive, protocol_, plan.p_threshold, round_ - 1,
                                                 config_, context, memory_, rng_);
        return assign_nearest(alive, heads);
    }
    SeedingOptions seeding;
    seeding.weight_replaces_d2 = options_.weight_replaces_d2;
    auto heads = seed_heads(alive, plan.k, protocol_.weight_mode, context, rng_, seeding);
    auto clusters =
        assign_members(alive, heads, plan.optimality.d_opt, protocol_.weight_mode, context);
    for (std::int32_t it = 0; it < options_.lloyd_iterations; ++it) {
        const auto centroids = recenter(clusters, alive);
        heads = heads_nearest_to(centroids, alive);
        clusters =
            assign_members(alive, heads, plan.optimality.d_opt, protocol_.weight_mode, context);
    }
    return clusters;
}

double Simulator::charge(std::span<const Cluster> clusters) {
    const auto& radio = config_.radio;
    const auto bits = config_.packet_bits;
    const Position bs = config_.base_station();
    const double per_member_at_head = energy_rx(radio, bits) + energy_aggregate(radio, bits);

    std::vector<double> cost(nodes_.size() + 1, 0.0);
    for (const auto& cluster : clusters) {
        const auto& head = nodes_[static_cast<std::size_t>(cluster.head_id - 1)];
        const auto members = static_cast<double>(cluster.member_ids.size() - 1);
        cost[static_cast<std::size_t>(head.id)] +=
            members * per_member_at_head + energy_tx(radio, bits, distance(head.pos, bs));
        for (NodeId id : cluster.member_ids) {
            if (id == cluster.head_id) {
                continue;
            }
            const auto& member = nodes_[static_cast<std::size_t>(id - 1)];
            cost[static_cast<std::size_t>(id)] +=
                energy_tx(radio, bits, distance(member.pos, head.pos));
        }
    }

    double consumed = 0.0;
    for (auto& node : nodes_) {
        const double c = cost[static_cast<std::size_t>(node.id)];
        if (!node.alive || c <= 0.0) {
            continue;
        }
        const double drained = std::min(c, node.energy_res);
        node.energy_res -= drained;
        consumed += drained;
        if (node.energy_res <= 0.0) {
            node.energy_res = 0.0;
            node.alive = false;
        }
    }
    return consumed;
}

void Simulator::remember(std::span<const Cluster> clusters, double d_opt) {
    std::vector<SensorNode> members;
    for (const auto& cluster : clusters) {
        members.clear();
        for (NodeId id : cluster.member_ids) {
            members.push_back(nodes_[static_cast<std::size_t>(id - 1)]);
        }
        const auto& head = nodes_[static_cast<std::size_t>(cluster.head_id - 1)];
        const auto stats = cluster_stats(members, head, d_opt, cluster.id);
        for (const auto& m : members) {
            history_[static_cast<std::size_t>(m.id)] = NodeHistory{stats, distance(m.pos, head.pos)};
        }
    }
}

RoundMetrics Simulator::step() {
    const auto alive = alive_nodes(nodes_);
    if (alive.empty()) {
        throw SimulationError("no alive nodes remain");
    }
    ++round_;

    plan_ = plan_round(alive);
    if (!protocol_.adaptive_p && !fixed_p_) {
        fixed_p_ = plan_.p_threshold;
    }

    SeedingContext context = cold_start_context(alive, plan_.optimality.d_opt, plan_.p_adp);
    context.history = history_;

    clusters_ = form_clusters(alive, plan_, context);

    RoundMetrics m;
    m.round = round_;
    m.heads = static_cast<std::int32_t>(clusters_.size());
    m.consumed_this_round = charge(clusters_);
    remember(clusters_, plan_.optimality.d_opt);
    m.alive = alive_count();
    for (const auto& node : nodes_) {
        m.total_residual += node.energy_res;
    }
    return m;
}

SimulationResult summarize_series(std::vector<RoundMetrics> per_round, std::int32_t n) {
    SimulationResult result;
    result.per_round = std::move(per_round);
    for (const auto& m : result.per_round) {
        if (!result.first_death_round && m.alive < n) {
            result.first_death_round = m.round;
        }
        if (!result.half_death_round && 2 * m.alive <= n) {
            result.half_death_round = m.round;
        }
        if (!result.last_death_round && m.alive == 0) {
            result.last_death_round = m.round;
        }
    }
    const std::size_t window = result.first_death_round
                                   ? static_cast<std::size_t>(*result.first_death_round)
                                   : result.per_round.size();
    if (window > 0) {
        double consumed = 0.0;
        double residual = 0.0;
        for (std::size_t i = 0; i < window; ++i) {
            consumed += result.per_round[i].consumed_this_round;
            residual += result.per_round[i].total_residual;
        }
        result.avg_joules_per_round = consumed / static_cast<double>(window);
        result.avg_residual_per_round = residual / static_cast<double>(window);
    }
    return result;
}

SimulationResult run_simulation(NetworkConfig config, const ProtocolSpec& protocol,
                                std::uint64_t seed, const EngineOptions& options) {
    config.rng_seed = seed;
    Simulator sim(std::move(config), protocol, options);
    std::vector<RoundMetrics> rounds;
    rounds.reserve(static_cast<std::size_t>(sim.config().max_rounds));
    while (!sim.finished()) {
        rounds.push_back(sim.step());
    }
    return summarize_series(std::move(rounds), sim.config().n);
}

}  // namespace wsnsim
