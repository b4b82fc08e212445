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

#include "wsnsim/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

/// Index into `nodes` by node id; -1 where absent.
std::vector<std::int64_t> index_by_id(std::span<const SensorNode> nodes) {
    NodeId max_id = 0;
    for (const auto& node : nodes) {
        max_id = std::max(max_id, node.id);
    }
    std::vector<std::int64_t> index(static_cast<std::size_t>(max_id) + 1, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        index[static_cast<std::size_t>(nodes[i].id)] = static_cast<std::int64_t>(i);
    }
    return index;
}

/// Draws an index with probability score[i] / total. Requires total > 0.
std::size_t draw_proportional(const std::vector<double>& score, double total, Rng& rng) {
    const double target = rng.uniform01() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < score.size(); ++i) {
        if (score[i] <= 0.0) {
            continue;
        }
        cumulative += score[i];
        last_positive = i;
        if (target < cumulative) {
            return i;
        }
    }
    // Rounding can leave target just above the accumulated sum.
    return last_positive;
}

std::size_t draw_uniform_unchosen(const std::vector<bool>& chosen, Rng& rng) {
    const auto remaining =
        static_cast<std::uint64_t>(std::count(chosen.begin(), chosen.end(), false));
    auto pick = rng.uniform_index(remaining);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (!chosen[i] && pick-- == 0) {
            return i;
        }
    }
    throw std::logic_error("no unchosen candidate left");
}

double sum(const std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) {
        total += x;
    }
    return total;
}

Position mean_position(const std::vector<NodeId>& ids, std::span<const SensorNode> nodes,
                       const std::vector<std::int64_t>& index) {
    Position c;
    for (NodeId id : ids) {
        const auto& p = nodes[static_cast<std::size_t>(index[static_cast<std::size_t>(id)])].pos;
        c.x += p.x;
        c.y += p.y;
    }
    if (!ids.empty()) {
        c.x /= static_cast<double>(ids.size());
        c.y /= static_cast<double>(ids.size());
    }
    return c;
}

void require_alive(std::span<const SensorNode> alive) {
    for (const auto& node : alive) {
        if (!node.alive) {
            throw SimulationError("dead node " + std::to_string(node.id) +
                                  " passed as a clustering candidate");
        }
    }
}

/// Positions in `alive` of each head, via the id -> slot index.
std::vector<std::size_t> head_slots(std::span<const NodeId> heads,
                                    const std::vector<std::int64_t>& index) {
    if (heads.empty()) {
        throw std::invalid_argument("at least one head is required");
    }
    std::vector<std::size_t> slots;
    slots.reserve(heads.size());
    for (NodeId h : heads) {
        const auto hi = static_cast<std::size_t>(h);
        if (h < 1 || hi >= index.size() || index[hi] < 0) {
            throw std::invalid_argument("head " + std::to_string(h) + " is not an alive node");
        }
        slots.push_back(static_cast<std::size_t>(index[hi]));
    }
    return slots;
}

std::vector<Cluster> build_clusters(std::span<const SensorNode> alive,
                                    std::span<const NodeId> heads,
                                    const std::vector<std::size_t>& owner,
                                    const std::vector<std::int64_t>& index) {
    std::vector<Cluster> clusters(heads.size());
    for (std::size_t c = 0; c < heads.size(); ++c) {
        clusters[c].id = static_cast<std::int32_t>(c + 1);
        clusters[c].head_id = heads[c];
    }
    for (std::size_t i = 0; i < alive.size(); ++i) {
        clusters[owner[i]].member_ids.push_back(alive[i].id);
    }
    for (auto& cluster : clusters) {
        std::sort(cluster.member_ids.begin(), cluster.member_ids.end());
        cluster.centroid = mean_position(cluster.member_ids, alive, index);
    }
    return clusters;
}

/// owner[i] = cluster slot of alive[i] under nearest-head assignment.
std::vector<std::size_t> nearest_owner(std::span<const SensorNode> alive,
                                       std::span<const NodeId> heads,
                                       const std::vector<std::size_t>& slots) {
    std::vector<std::size_t> owner(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < heads.size(); ++c) {
            const double d2 = distance_sq(alive[i].pos, alive[slots[c]].pos);
            if (d2 < best || (d2 == best && heads[c] < heads[best_c])) {
                best = d2;
                best_c = c;
            }
        }
        owner[i] = best_c;
    }
    // Heads always lead their own cluster, even when co-located with another.
    for (std::size_t c = 0; c < heads.size(); ++c) {
        owner[slots[c]] = c;
    }
    return owner;
}

}  // namespace

std::string_view to_string(WeightMode mode) {
    switch (mode) {
        case WeightMode::PlainD2: return "plain";
        case WeightMode::EnergyEta: return "eta";
        case WeightMode::DistancePsi: return "psi";
        case WeightMode::CombinedPc: return "pc";
    }
    return "unknown";
}

const NodeHistory& SeedingContext::history_of(NodeId id) const {
    const auto i = static_cast<std::size_t>(id);
    if (id >= 0 && i < history.size() && history[i]) {
        return *history[i];
    }
    return cold;
}

SeedingContext cold_start_context(std::span<const SensorNode> alive, double d_opt, double p_adp) {
    SeedingContext ctx;
    ctx.d_opt = d_opt;
    ctx.p_adp = p_adp;
    double energy = 0.0;
    for (const auto& node : alive) {
        energy += node.energy_res;
    }
    const auto n = static_cast<std::int32_t>(alive.size());
    ctx.cold.stats.n_members = n;
    ctx.cold.stats.eps_avg = n > 0 ? energy / n : 0.0;
    ctx.cold.stats.delta_coeff = d_opt;
    ctx.cold.stats.delta_cap = d_opt * d_opt * n;
    ctx.cold.head_distance = d_opt;
    return ctx;
}

double quality_weight(const SensorNode& node, WeightMode mode, const SeedingContext& context) {
    return quality_weight(node, mode, context, context.history_of(node.id).head_distance);
}

double quality_weight(const SensorNode& node, WeightMode mode, const SeedingContext& context,
                      double head_distance) {
    if (mode == WeightMode::PlainD2) {
        return 1.0;
    }
    const auto& h = context.history_of(node.id);
    switch (mode) {
        case WeightMode::EnergyEta:
            return energy_quality(node, h.stats).p_eta;
        case WeightMode::DistancePsi:
            return distance_quality(head_distance, context.d_opt, h.stats).p_psi;
        case WeightMode::CombinedPc:
            return energy_quality(node, h.stats).p_eta *
                   distance_quality(head_distance, context.d_opt, h.stats).p_psi;
        case WeightMode::PlainD2:
            break;
    }
    return 1.0;
}

std::vector<NodeId> seed_heads(std::span<const SensorNode> alive, std::int32_t k,
                               WeightMode mode, const SeedingContext& context, Rng& rng,
                               const SeedingOptions& options) {
    if (k < 1) {
        throw std::invalid_argument("head count must be at least 1");
    }
    if (alive.size() < static_cast<std::size_t>(k)) {
        throw SimulationError("need " + std::to_string(k) + " alive nodes to seed, have " +
                              std::to_string(alive.size()));
    }
    require_alive(alive);

    const std::size_t n = alive.size();
    std::vector<double> weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = quality_weight(alive[i], mode, context);
    }

    const bool distance_weighted =
        mode == WeightMode::DistancePsi || mode == WeightMode::CombinedPc;
    std::vector<bool> chosen(n, false);
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    std::vector<double> score(n);
    std::vector<NodeId> heads;
    heads.reserve(static_cast<std::size_t>(k));

    auto take = [&](std::size_t i) {
        chosen[i] = true;
        heads.push_back(alive[i].id);
        for (std::size_t j = 0; j < n; ++j) {
            min_d2[j] = std::min(min_d2[j], distance_sq(alive[j].pos, alive[i].pos));
        }
    };

    if (mode == WeightMode::PlainD2) {
        take(rng.uniform_index(n));
    } else {
        const double total = sum(weight);
        take(total > 0.0 ? draw_proportional(weight, total, rng) : rng.uniform_index(n));
    }

    while (heads.size() < static_cast<std::size_t>(k)) {
        for (std::size_t j = 0; j < n; ++j) {
            if (chosen[j]) {
                score[j] = 0.0;
                continue;
            }
            // Distance quality is measured toward the nearest head already chosen.
            const double w = distance_weighted
                                 ? quality_weight(alive[j], mode, context, std::sqrt(min_d2[j]))
                                 : weight[j];
            score[j] = options.weight_replaces_d2 ? w : w * min_d2[j];
        }
        double total = sum(score);
        if (!(total > 0.0)) {
            for (std::size_t j = 0; j < n; ++j) {
                score[j] = chosen[j] ? 0.0 : min_d2[j];
            }
            total = sum(score);
        }
        take(total > 0.0 ? draw_proportional(score, total, rng) : draw_uniform_unchosen(chosen, rng));
    }
    return heads;
}

std::vector<Cluster> assign_nearest(std::span<const SensorNode> alive,
                                    std::span<const NodeId> heads) {
    const auto index = index_by_id(alive);
    const auto slots = head_slots(heads, index);
    return build_clusters(alive, heads, nearest_owner(alive, heads, slots), index);
}

std::vector<Cluster> assign_members(std::span<const SensorNode> alive,
                                    std::span<const NodeId> heads, double d_opt, WeightMode mode,
                                    const SeedingContext& context) {
    if (mode == WeightMode::PlainD2 || mode == WeightMode::DistancePsi) {
        return assign_nearest(alive, heads);
    }
    require_alive(alive);

    const auto index = index_by_id(alive);
    const auto slots = head_slots(heads, index);
    const auto provisional = nearest_owner(alive, heads, slots);
    const std::size_t k = heads.size();

    // Statistics of each head's provisional (nearest-head) cluster.
    std::vector<std::vector<SensorNode>> groups(k);
    for (std::size_t i = 0; i < alive.size(); ++i) {
        groups[provisional[i]].push_back(alive[i]);
    }
    std::vector<ClusterStats> stats(k);
    std::vector<double> head_eta(k);
    for (std::size_t c = 0; c < k; ++c) {
        const auto& head = alive[slots[c]];
        stats[c] = cluster_stats(groups[c], head, d_opt, static_cast<std::int32_t>(c + 1));
        head_eta[c] = energy_quality(head, context.history_of(head.id).stats).p_eta;
    }

    std::vector<std::size_t> owner(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        double best = -1.0;
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < k; ++c) {
            const double d = distance(alive[i].pos, alive[slots[c]].pos);
            const double phi = head_eta[c] * distance_quality(d, d_opt, stats[c]).p_psi;
            if (phi > best || (phi == best && heads[c] < heads[best_c])) {
                best = phi;
                best_c = c;
            }
        }
        owner[i] = best_c;
    }
    for (std::size_t c = 0; c < k; ++c) {
        owner[slots[c]] = c;
    }
    return build_clusters(alive, heads, owner, index);
}

std::vector<Position> recenter(std::span<const Cluster> clusters,
                               std::span<const SensorNode> nodes) {
    const auto index = index_by_id(nodes);
    std::vector<Position> centroids;
    centroids.reserve(clusters.size());
    for (const auto& cluster : clusters) {
        for (NodeId id : cluster.member_ids) {
            const auto i = static_cast<std::size_t>(id);
            if (id < 1 || i >= index.size() || index[i] < 0) {
                throw std::invalid_argument("cluster member " + std::to_string(id) + " not found");
            }
        }
        centroids.push_back(mean_position(cluster.member_ids, nodes, index));
    }
    return centroids;
}

std::vector<NodeId> heads_nearest_to(std::span<const Position> centroids,
                                     std::span<const SensorNode> alive) {
    if (alive.size() < centroids.size()) {
        throw SimulationError("more centroids than alive nodes");
    }
    std::vector<bool> taken(alive.size(), false);
    std::vector<NodeId> heads;
    heads.reserve(centroids.size());
    for (const auto& c : centroids) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        bool found = false;
        for (std::size_t i = 0; i < alive.size(); ++i) {
            if (taken[i]) {
                continue;
            }
            const double d2 = distance_sq(alive[i].pos, c);
            if (!found || d2 < best || (d2 == best && alive[i].id < alive[best_i].id)) {
                best = d2;
                best_i = i;
                found = true;
            }
        }
        taken[best_i] = true;
        heads.push_back(alive[best_i].id);
    }
    return heads;
}

}  // namespace wsnsim
