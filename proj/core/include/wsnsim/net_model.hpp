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

#ifndef WSNSIM_NET_MODEL_HPP
#define WSNSIM_NET_MODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnsim/energy_model.hpp"

namespace wsnsim {

/// Node ids run 1..n.
using NodeId = std::int32_t;

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& p, const Position& q);
double distance_sq(const Position& p, const Position& q);

enum class NodeKind : std::uint8_t { Normal, Advanced };

struct SensorNode {
    NodeId id = 0;
    Position pos;
    NodeKind kind = NodeKind::Normal;
    double energy_init = 0.0;
    double energy_res = 0.0;
    bool alive = true;

    friend bool operator==(const SensorNode&, const SensorNode&) = default;
};

/**
 * Network and radio parameters for one deployment.
 *
 * The defaults are the customary first-order radio values used throughout
 * the LEACH/SEP literature with a 100 m x 100 m field and 100 nodes.
 */
struct NetworkConfig {
    std::int32_t n = 100;
    double a = 100.0;                    ///< field side, meters
    std::optional<Position> bs_pos;      ///< unset means field center
    double nu = 0.1;                     ///< fraction of advanced nodes
    std::int32_t b = 1;                  ///< advanced energy multiplier
    double eps0 = 0.5;                   ///< joules per normal node
    std::int64_t packet_bits = 4000;
    RadioParams radio;
    std::int32_t max_rounds = 3000;
    std::uint64_t rng_seed = 0;

    Position base_station() const { return bs_pos.value_or(Position{a / 2.0, a / 2.0}); }

    /// round(nu * n), rounding halves away from zero.
    std::int32_t advanced_count() const;

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Throws ConfigError naming the first violated field.
void validate(const NetworkConfig& config);

/**
 * Places n nodes uniformly over [0, a) x [0, a) using a stream derived from
 * config.rng_seed. Node j (1-based) consumes the j-th (x, y) draw pair.
 * A seeded Fisher-Yates shuffle of the ids then marks the first
 * round(nu * n) of them Advanced, so heterogeneity is spatially unbiased.
 */
std::vector<SensorNode> deploy(const NetworkConfig& config);

/// Sum of initial energies; equals n * eps0 * (1 + nu_eff * b).
double total_initial_energy(const std::vector<SensorNode>& nodes);

}  // namespace wsnsim

#endif  // WSNSIM_NET_MODEL_HPP
