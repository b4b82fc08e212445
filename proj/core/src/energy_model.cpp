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

#include "wsnsim/energy_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

void require_bits(std::int64_t bits) {
    if (bits <= 0) {
        throw std::invalid_argument("packet size must be positive, got " + std::to_string(bits));
    }
}

void require_positive(const char* field, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(field, "must be positive and finite");
    }
}

}  // namespace

void validate(const RadioParams& params) {
    require_positive("eps_elec", params.eps_elec);
    require_positive("eps_fs", params.eps_fs);
    require_positive("eps_mp", params.eps_mp);
}

double distance_threshold(const RadioParams& params) {
    return std::sqrt(params.eps_fs / params.eps_mp);
}

double energy_tx(const RadioParams& params, std::int64_t bits, double d) {
    require_bits(bits);
    if (d < 0.0) {
        throw std::invalid_argument("distance must be non-negative");
    }
    const double l = static_cast<double>(bits);
    const double d2 = d * d;
    if (d <= distance_threshold(params)) {
        return l * params.eps_elec + l * params.eps_fs * d2;
    }
    return l * params.eps_elec + l * params.eps_mp * d2 * d2;
}

double energy_rx(const RadioParams& params, std::int64_t bits) {
    require_bits(bits);
    return static_cast<double>(bits) * params.eps_elec;
}

double energy_aggregate(const RadioParams& params, std::int64_t bits) {
    return energy_rx(params, bits);
}

}  // namespace wsnsim
