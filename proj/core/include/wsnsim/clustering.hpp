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

#ifndef WSNSIM_CLUSTERING_HPP
#define WSNSIM_CLUSTERING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsnsim/adapt_prob.hpp"
#include "wsnsim/net_model.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

/// Per-node weight applied to the D^2 term of k-means++ seeding.
enum class WeightMode : std::uint8_t {
    PlainD2,      ///< w = 1
    EnergyEta,    ///< w = P_eta
    DistancePsi,  ///< w = P_psi
    CombinedPc,   ///< w = P_eta * P_psi (P_adp cancels under normalization)
};

std::string_view to_string(WeightMode mode);

struct Cluster {
    std::int32_t id = 0;
    NodeId head_id = 0;
    std::vector<NodeId> member_ids;  ///< sorted, includes the head
    Position centroid;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// What a node remembers from the previous round: the statistics of the
/// cluster it belonged to and its distance from that cluster's head.
struct NodeHistory {
    ClusterStats stats;
    double head_distance = 0.0;
};

/**
 * Inputs to quality-weighted seeding and association.
 *
 * `history` is indexed by node id; a node without an entry falls back to the
 * cold-start description, whose distance is d_opt and whose spread
 * coefficient is d_opt as well, so the distance quality starts at 1.
 */
struct SeedingContext {
    double d_opt = 0.0;
    double p_adp = 1.0;
    std::vector<std::optional<NodeHistory>> history;
    NodeHistory cold;

    const NodeHistory& history_of(NodeId id) const;
};

/// Context with no history. The cold-start energy average is the mean
/// residual energy of `alive`.
SeedingContext cold_start_context(std::span<const SensorNode> alive, double d_opt,
                                  double p_adp = 1.0);

/// The per-node weight for `mode` (1 for PlainD2), with the distance quality
/// taken at the node's previous-round distance from its head.
double quality_weight(const SensorNode& node, WeightMode mode, const SeedingContext& context);

/// Same, with the distance quality taken at `head_distance`.
double quality_weight(const SensorNode& node, WeightMode mode, const SeedingContext& context,
                      double head_distance);

struct SeedingOptions {
    /// Use the quality weight alone, without the D^2 factor, for heads after
    /// the first (ablation of the multiplicative reading).
    bool weight_replaces_d2 = false;
};

/**
 * Chooses k distinct heads among `alive`.
 *
 * The first head is uniform for PlainD2 and proportional to the quality
 * weight otherwise. Each further head is drawn with probability proportional
 * to w(s) * D(s, nearest chosen head)^2; if that mass is zero the draw falls
 * back to plain D^2, then to uniform over the unchosen nodes.
 *
 * Energy quality always uses the node's previous-round cluster. Distance
 * quality uses the previous-round cluster spread, and for heads after the
 * first it is measured at D(s, nearest chosen head), the head the node would
 * join if not elected.
 *
 * Throws SimulationError if fewer than k nodes are alive.
 */
std::vector<NodeId> seed_heads(std::span<const SensorNode> alive, std::int32_t k,
                               WeightMode mode, const SeedingContext& context, Rng& rng,
                               const SeedingOptions& options = {});

/**
 * Partitions `alive` among `heads`; cluster i (1-based) is led by heads[i-1].
 *
 * PlainD2 and DistancePsi join the nearest head. EnergyEta and CombinedPc
 * join the head maximizing P_eta(head) * P_psi(member, head), where P_psi is
 * evaluated against the provisional nearest-head cluster of that head. Ties go
 * to the lowest head id.
 */
std::vector<Cluster> assign_members(std::span<const SensorNode> alive,
                                    std::span<const NodeId> heads, double d_opt, WeightMode mode,
                                    const SeedingContext& context);

/// Nearest-head partition, used by threshold protocols as well.
std::vector<Cluster> assign_nearest(std::span<const SensorNode> alive,
                                    std::span<const NodeId> heads);

/// Arithmetic mean of member positions for each cluster.
std::vector<Position> recenter(std::span<const Cluster> clusters,
                               std::span<const SensorNode> nodes);

/// Alive node closest to each centroid, distinct across clusters.
std::vector<NodeId> heads_nearest_to(std::span<const Position> centroids,
                                     std::span<const SensorNode> alive);

}  // namespace wsnsim

#endif  // WSNSIM_CLUSTERING_HPP
