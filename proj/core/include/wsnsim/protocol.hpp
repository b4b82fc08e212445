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

#ifndef WSNSIM_PROTOCOL_HPP
#define WSNSIM_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/adapt_prob.hpp"
#include "wsnsim/clustering.hpp"
#include "wsnsim/net_model.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

enum class Election : std::uint8_t {
    LeachThreshold,  ///< LEACH T(s), one p for every node
    SepThreshold,    ///< SEP T(s), p split by node kind
    KmaxMeansPP,     ///< round(kappa_max) heads by weighted k-means++ seeding
};

/// Scales a threshold protocol's T(s) by a quality probability.
enum class QualityGate : std::uint8_t { None, EnergyEta, DistancePsi, CombinedPc };

struct ProtocolSpec {
    std::string name;
    Election election = Election::SepThreshold;
    WeightMode weight_mode = WeightMode::PlainD2;  ///< KmaxMeansPP only
    QualityGate quality_gate = QualityGate::None;  ///< threshold protocols only
    /// Threshold protocols: take p = P_adp every round. When false, p is fixed
    /// at kappa_max / n from the first round (classic LEACH and SEP).
    bool adaptive_p = true;

    friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;
};

/// The nine compared protocols, in a fixed order.
const std::vector<ProtocolSpec>& protocol_matrix();

/// Every known protocol: the matrix plus the unweighted kmax-means++ ablation.
const std::vector<ProtocolSpec>& known_protocols();

std::optional<ProtocolSpec> find_protocol(std::string_view name);

/// Knobs that are off by default and exist for ablation runs.
struct EngineOptions {
    std::int32_t lloyd_iterations = 0;
    bool weight_replaces_d2 = false;

    friend bool operator==(const EngineOptions&, const EngineOptions&) = default;
};

struct RoundMetrics {
    std::int32_t round = 0;
    std::int32_t alive = 0;
    double total_residual = 0.0;
    std::int32_t heads = 0;
    double consumed_this_round = 0.0;

    friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

/// Round-level quantities computed before cluster formation.
struct RoundPlan {
    std::int32_t zeta = 0;
    OptimalityParams optimality;
    std::int32_t k = 0;  ///< max(1, round(kappa_max)), capped at zeta
    double p_adp = 0.0;
    double p_threshold = 0.0;  ///< p handed to T(s)
};

struct SimulationResult {
    std::vector<RoundMetrics> per_round;
    std::optional<std::int32_t> first_death_round;
    std::optional<std::int32_t> half_death_round;
    std::optional<std::int32_t> last_death_round;
    /// Mean energy consumed per round over rounds 1..first_death_round, or over
    /// all simulated rounds when nobody died.
    double avg_joules_per_round = 0.0;
    /// Mean total residual energy per round over the same window.
    double avg_residual_per_round = 0.0;
};

/// Per-node epoch bookkeeping for T(s) election, indexed by node id.
struct ThresholdMemory {
    std::vector<bool> elected_in_epoch;
    std::vector<std::int32_t> epoch_length;

    explicit ThresholdMemory(std::size_t max_id = 0)
        : elected_in_epoch(max_id + 1, false), epoch_length(max_id + 1, 0) {}
};

/// Election probability for `kind` under SEP weighting; LEACH ignores kind.
double threshold_base_probability(Election election, NodeKind kind, double p, double nu,
                                  std::int32_t b);

/// T(s) = p / (1 - p (r mod ceil(1/p))), clamped to [0, 1].
double threshold_value(double p, std::int32_t round_index);

/**
 * Independent T(s) draws for each eligible node, in id order.
 *
 * `round_index` is 0-based. A node is eligible unless it was elected earlier
 * in its current epoch of ceil(1/p) rounds; epochs restart when r mod the
 * epoch length is 0 or when the length changes. With a gate, the draw
 * probability is T(s) times the node's quality probability. If no node is
 * elected the alive node with the most residual energy is taken.
 */
std::vector<NodeId> elect_heads_threshold(std::span<const SensorNode> alive,
                                          const ProtocolSpec& protocol, double p,
                                          std::int32_t round_index, const NetworkConfig& config,
                                          const SeedingContext& context, ThresholdMemory& memory,
                                          Rng& rng);

/**
 * One deployment evolving round by round under one protocol.
 *
 * Deployment and every round draw come from streams derived from
 * config.rng_seed. Energy is charged per round for one packet per member:
 * members transmit to their head; heads receive and aggregate each member
 * packet and transmit one packet to the base station. Nodes whose charge
 * exceeds their residual are drained to zero and die at round end.
 */
class Simulator {
public:
    Simulator(NetworkConfig config, ProtocolSpec protocol, EngineOptions options = {});

    /// Runs one round. Throws SimulationError when no node is alive.
    RoundMetrics step();

    /// True once every node is dead or max_rounds rounds have run.
    bool finished() const;

    std::int32_t round() const { return round_; }
    std::int32_t alive_count() const;
    const NetworkConfig& config() const { return config_; }
    const ProtocolSpec& protocol() const { return protocol_; }
    const std::vector<SensorNode>& nodes() const { return nodes_; }
    /// Clusters formed in the last round, before its deaths were applied.
    const std::vector<Cluster>& clusters() const { return clusters_; }
    const RoundPlan& last_plan() const { return plan_; }
    double initial_energy() const { return initial_energy_; }

private:
    RoundPlan plan_round(std::span<const SensorNode> alive) const;
    std::vector<Cluster> form_clusters(std::span<const SensorNode> alive, const RoundPlan& plan,
                                       const SeedingContext& context);
    double charge(std::span<const Cluster> clusters);
    void remember(std::span<const Cluster> clusters, double d_opt);

    NetworkConfig config_;
    ProtocolSpec protocol_;
    EngineOptions options_;
    std::vector<SensorNode> nodes_;
    double initial_energy_ = 0.0;
    Rng rng_;
    std::int32_t round_ = 0;
    std::optional<double> fixed_p_;
    ThresholdMemory memory_;
    std::vector<std::optional<NodeHistory>> history_;
    std::vector<Cluster> clusters_;
    RoundPlan plan_;
};

/// Deploys with `seed` (overriding config.rng_seed) and runs until
/// max_rounds or until every node is dead.
SimulationResult run_simulation(NetworkConfig config, const ProtocolSpec& protocol,
                                std::uint64_t seed, const EngineOptions& options = {});

/// Death milestones and averages recomputed from a per-round series.
SimulationResult summarize_series(std::vector<RoundMetrics> per_round, std::int32_t n);

}  // namespace wsnsim

#endif  // WSNSIM_PROTOCOL_HPP
