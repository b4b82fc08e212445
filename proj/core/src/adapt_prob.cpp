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

#include "wsnsim/adapt_prob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

void require_d_bs(double d_bs) {
    if (!(d_bs > 0.0)) {
        throw std::invalid_argument("distance to base station must be positive");
    }
}

}  // namespace

double optimal_distance(const RadioParams& radio, double a, double nodes, double d_bs) {
    require_d_bs(d_bs);
    const double ratio = radio.eps_mp * a * a / (2.0 * std::numbers::pi * nodes * radio.eps_fs);
    return std::sqrt(std::sqrt(ratio)) * d_bs;
}

double optimal_clusters(const RadioParams& radio, double a, double nodes, double d_bs) {
    require_d_bs(d_bs);
    return std::sqrt(nodes * radio.eps_fs / (2.0 * std::numbers::pi * radio.eps_mp)) * a /
           (d_bs * d_bs);
}

double optimal_distance(const NetworkConfig& config, double d_bs) {
    return optimal_distance(config.radio, config.a, config.n, d_bs);
}

double optimal_clusters(const NetworkConfig& config, double d_bs) {
    return optimal_clusters(config.radio, config.a, config.n, d_bs);
}

OptimalityParams optimality(const RadioParams& radio, double a, double nodes, double d_bs) {
    return {optimal_clusters(radio, a, nodes, d_bs), optimal_distance(radio, a, nodes, d_bs), d_bs};
}

double adaptive_probability(double kappa_max, std::int64_t zeta) {
    if (zeta < 1) {
        throw std::invalid_argument("alive count must be at least 1");
    }
    if (!(kappa_max > 0.0)) {
        throw std::invalid_argument("kappa_max must be positive");
    }
    return std::min(kappa_max / static_cast<double>(zeta), 1.0);
}

EnergyQuality energy_quality(const SensorNode& node, const ClusterStats& stats) {
    if (!node.alive) {
        throw SimulationError("energy quality requested for dead node " + std::to_string(node.id));
    }
    EnergyQuality q;
    q.p_xi = (stats.eps_avg > 0.0 && node.energy_res < stats.eps_avg)
                 ? node.energy_res / stats.eps_avg
                 : 1.0;
    q.p_rho = std::clamp(node.energy_res / node.energy_init, 0.0, 1.0);
    q.p_eta = q.p_rho * q.p_xi;
    return q;
}

ClusterStats cluster_stats(std::span<const SensorNode> members, const SensorNode& head,
                           double d_opt, std::int32_t cluster_id) {
    if (members.empty()) {
        throw SimulationError("cluster " + std::to_string(cluster_id) + " has no members");
    }
    ClusterStats s;
    s.cluster_id = cluster_id;
    s.n_members = static_cast<std::int32_t>(members.size());
    bool has_head = false;
    double energy = 0.0;
    for (const auto& m : members) {
        has_head = has_head || m.id == head.id;
        energy += m.energy_res;
        const double d2 = distance_sq(m.pos, head.pos);
        const double dev = std::sqrt(d2) - d_opt;
        s.delta_cap += dev * dev;
        s.sum_sq_dist += d2;
    }
    if (!has_head) {
        throw std::invalid_argument("cluster members do not include head " +
                                    std::to_string(head.id));
    }
    s.eps_avg = energy / s.n_members;
    s.delta_coeff = std::sqrt(s.delta_cap / s.n_members);
    return s;
}

DistanceQuality distance_quality(double d, double d_opt, const ClusterStats& stats) {
    DistanceQuality q;
    q.p_gamma = d > d_opt ? d_opt / d : 1.0;
    q.p_sigma = (d > stats.delta_coeff && stats.sum_sq_dist > 0.0)
                    ? std::min(d * d / stats.sum_sq_dist, 1.0)
                    : 1.0;
    q.p_psi = q.p_gamma * q.p_sigma;
    return q;
}

ElectionProduct election_probability(double p_adp, double p_eta, double p_psi) {
    return {p_adp * p_eta * p_psi, p_eta * p_psi};
}

ElectionProbabilities evaluate(const SensorNode& node, double d, const ClusterStats& stats,
                               double d_opt, double p_adp) {
    const auto e = energy_quality(node, stats);
    const auto g = distance_quality(d, d_opt, stats);
    const auto c = election_probability(p_adp, e.p_eta, g.p_psi);
    return {p_adp, e.p_xi, e.p_rho, e.p_eta, g.p_gamma, g.p_sigma, g.p_psi, c.p_c, c.phi};
}

}  // namespace wsnsim
