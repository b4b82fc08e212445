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

#include "wsnsim/net_model.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

double distance_sq(const Position& p, const Position& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

double distance(const Position& p, const Position& q) {
    return std::sqrt(distance_sq(p, q));
}

std::int32_t NetworkConfig::advanced_count() const {
    return static_cast<std::int32_t>(std::llround(nu * static_cast<double>(n)));
}

void validate(const NetworkConfig& config) {
    if (config.n < 1) {
        throw ConfigError("n", "node count must be at least 1");
    }
    if (!(config.a > 0.0) || !std::isfinite(config.a)) {
        throw ConfigError("a", "field dimension must be positive");
    }
    if (!(config.nu >= 0.0 && config.nu <= 1.0)) {
        throw ConfigError("nu", "advanced fraction must lie in [0, 1]");
    }
    if (config.b < 1) {
        throw ConfigError("b", "energy multiplier must be a positive integer");
    }
    if (!(config.eps0 > 0.0) || !std::isfinite(config.eps0)) {
        throw ConfigError("eps0", "initial energy must be positive");
    }
    if (config.packet_bits <= 0) {
        throw ConfigError("packet_bits", "packet size must be positive");
    }
    validate(config.radio);
    if (config.max_rounds < 0) {
        throw ConfigError("max_rounds", "must be non-negative");
    }
    if (config.bs_pos) {
        const auto& bs = *config.bs_pos;
        if (!std::isfinite(bs.x) || !std::isfinite(bs.y)) {
            throw ConfigError("bs", "coordinates must be finite");
        }
    }
}

std::vector<SensorNode> deploy(const NetworkConfig& config) {
    validate(config);

    Rng rng(derive_seed(config.rng_seed, "deploy"));
    std::vector<SensorNode> nodes(static_cast<std::size_t>(config.n));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        auto& node = nodes[j];
        node.id = static_cast<NodeId>(j + 1);
        node.pos.x = rng.uniform(0.0, config.a);
        node.pos.y = rng.uniform(0.0, config.a);
        node.kind = NodeKind::Normal;
        node.energy_init = config.eps0;
    }

    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.uniform_index(i)]);
    }

    const auto advanced = static_cast<std::size_t>(config.advanced_count());
    const double advanced_energy = config.eps0 * (1.0 + static_cast<double>(config.b));
    for (std::size_t i = 0; i < advanced; ++i) {
        auto& node = nodes[order[i]];
        node.kind = NodeKind::Advanced;
        node.energy_init = advanced_energy;
    }
    for (auto& node : nodes) {
        node.energy_res = node.energy_init;
        node.alive = true;
    }
    return nodes;
}

double total_initial_energy(const std::vector<SensorNode>& nodes) {
    double total = 0.0;
    for (const auto& node : nodes) {
        total += node.energy_init;
    }
    return total;
}

}  // namespace wsnsim
