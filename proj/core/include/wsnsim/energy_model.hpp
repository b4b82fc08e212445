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

#ifndef WSNSIM_ENERGY_MODEL_HPP
#define WSNSIM_ENERGY_MODEL_HPP

#include <cstdint>

/**
 * @file energy_model.hpp
 *
 * First-order radio model: electronics cost per bit plus a power amplifier
 * term that is quadratic in distance (free space) up to the crossover
 * distance and quartic (multi-path fading) beyond it.
 */

namespace wsnsim {

struct RadioParams {
    double eps_elec = 50e-9;    ///< J/bit, transmitter and receiver electronics
    double eps_fs = 10e-12;     ///< J/bit/m^2, free-space amplifier
    double eps_mp = 0.0013e-12; ///< J/bit/m^4, multi-path amplifier

    friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

/// Throws ConfigError unless every constant is strictly positive and finite.
void validate(const RadioParams& params);

/// Crossover distance sqrt(eps_fs / eps_mp) in meters.
double distance_threshold(const RadioParams& params);

/// Energy to transmit `bits` over `d` meters. The amplifier branch is picked
/// by comparing `d` against distance_threshold(); both branches agree there.
double energy_tx(const RadioParams& params, std::int64_t bits, double d);

/// Energy to receive `bits`; independent of distance.
double energy_rx(const RadioParams& params, std::int64_t bits);

/// Energy to aggregate one received packet of `bits`. Same as energy_rx.
double energy_aggregate(const RadioParams& params, std::int64_t bits);

}  // namespace wsnsim

#endif  // WSNSIM_ENERGY_MODEL_HPP
