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

#ifndef WSNSIM_ADAPT_PROB_HPP
#define WSNSIM_ADAPT_PROB_HPP

#include <cstdint>
#include <span>

#include "wsnsim/energy_model.hpp"
#include "wsnsim/net_model.hpp"

/**
 * @file adapt_prob.hpp
 *
 * Round-level optimality quantities (optimal cluster count and optimal
 * member-to-head distance) and the per-node quality probabilities that drive
 * cluster-head election:
 *
 *   P_eta = P_rho * P_xi     energy quality (relative to own initial energy
 *                            and to the cluster average)
 *   P_psi = P_gamma * P_sigma  distance quality (relative to d_opt and to the
 *                            spread of the cluster)
 *   P_c   = P_adp * P_eta * P_psi
 */

namespace wsnsim {

struct OptimalityParams {
    double kappa_max = 0.0;  ///< fractional optimal cluster count
    double d_opt = 0.0;      ///< meters
    double d_bs = 0.0;       ///< representative head-to-BS distance
};

/// Summary of one cluster. Sums include the head, whose own distance is 0.
struct ClusterStats {
    std::int32_t cluster_id = 0;
    std::int32_t n_members = 0;
    double eps_avg = 0.0;      ///< mean residual energy, J
    double delta_cap = 0.0;    ///< sum of (D - d_opt)^2, m^2
    double delta_coeff = 0.0;  ///< sqrt(delta_cap / n_members), m
    double sum_sq_dist = 0.0;  ///< sum of D^2 to the head, m^2
};

struct EnergyQuality {
    double p_xi = 1.0;
    double p_rho = 1.0;
    double p_eta = 1.0;
};

struct DistanceQuality {
    double p_gamma = 1.0;
    double p_sigma = 1.0;
    double p_psi = 1.0;
};

struct ElectionProbabilities {
    double p_adp = 0.0;
    double p_xi = 0.0;
    double p_rho = 0.0;
    double p_eta = 0.0;
    double p_gamma = 0.0;
    double p_sigma = 0.0;
    double p_psi = 0.0;
    double p_c = 0.0;
    double phi = 0.0;  ///< p_eta * p_psi
};

// Core forms take the population explicitly so callers can substitute the
// alive count for n as nodes die.
double optimal_distance(const RadioParams& radio, double a, double nodes, double d_bs);
double optimal_clusters(const RadioParams& radio, double a, double nodes, double d_bs);

/// (eps_mp a^2 / (2 pi n eps_fs))^(1/4) * d_bs
double optimal_distance(const NetworkConfig& config, double d_bs);

/// sqrt(n eps_fs / (2 pi eps_mp)) * a / d_bs^2
double optimal_clusters(const NetworkConfig& config, double d_bs);

OptimalityParams optimality(const RadioParams& radio, double a, double nodes, double d_bs);

/// min(kappa_max / zeta, 1).
double adaptive_probability(double kappa_max, std::int64_t zeta);

/// Throws SimulationError for a dead node.
EnergyQuality energy_quality(const SensorNode& node, const ClusterStats& stats);

/// `members` must contain `head`. Throws SimulationError when empty.
ClusterStats cluster_stats(std::span<const SensorNode> members, const SensorNode& head,
                           double d_opt, std::int32_t cluster_id = 0);

DistanceQuality distance_quality(double d, double d_opt, const ClusterStats& stats);

struct ElectionProduct {
    double p_c = 0.0;
    double phi = 0.0;
};

ElectionProduct election_probability(double p_adp, double p_eta, double p_psi);

/// Every quantity for node at distance `d` from the head of the cluster
/// summarised by `stats`.
ElectionProbabilities evaluate(const SensorNode& node, double d, const ClusterStats& stats,
                               double d_opt, double p_adp);

}  // namespace wsnsim

#endif  // WSNSIM_ADAPT_PROB_HPP
