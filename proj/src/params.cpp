// Copyright 2026 The fdmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fdmimo/params.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

namespace fdmimo {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_to_watt(double dbm) { return db_to_linear(dbm - 30.0); }

double watt_to_dbm(double watt) { return linear_to_db(watt) + 30.0; }

Resolution Resolution::bits(int b) {
    if (b < 1) {
        throw std::invalid_argument("converter resolution must be >= 1 bit, got " + std::to_string(b));
    }
    Resolution r;
    r.bits_ = b;
    return r;
}

int Resolution::bit_count() const {
    if (!bits_) {
        throw std::logic_error("full-resolution converter has no bit count");
    }
    return *bits_;
}

std::string Resolution::to_string() const { return bits_ ? std::to_string(*bits_) : "full"; }

Resolution Resolution::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "full" || text == "inf") {
        return full();
    }
    int b = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), b);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("invalid resolution '" + std::string(text) + "' (expected integer bits or 'full')");
    }
    return bits(b);
}

double rho_for_bits(int b) {
    // Distortion of an optimal non-uniform quantizer on a Gaussian input.
    static constexpr std::array<double, 5> kTable{0.3634, 0.1175, 0.03454, 0.009497, 0.002499};
    if (b < 1) {
        throw std::invalid_argument("no quantizer is defined for b = " + std::to_string(b) + " bits");
    }
    if (b <= static_cast<int>(kTable.size())) {
        return kTable[static_cast<std::size_t>(b - 1)];
    }
    return std::numbers::pi * std::sqrt(3.0) / 2.0 * std::pow(2.0, -2.0 * b);
}

Quantizer Quantizer::from_resolution(const Resolution& r) {
    Quantizer q;
    q.resolution = r;
    q.rho = r.is_full() ? 0.0 : rho_for_bits(r.bit_count());
    q.alpha = 1.0 - q.rho;
    return q;
}

void SystemParams::validate() const {
    auto require = [](bool ok, const char* key, const std::string& what) {
        if (!ok) throw ConfigError(key, what);
    };
    require(bandwidth_hz > 0.0, "bandwidth_hz", "must be positive");
    require(pathloss_exponent > 2.0, "pathloss_exponent",
            "must satisfy eta > 2, got " + std::to_string(pathloss_exponent));
    require(shadowing_sigma_db >= 0.0, "shadowing_sigma_db", "must be nonnegative");
    require(uplink_power_w > 0.0, "uplink_power_w", "must be positive");
    require(si_power_w > 0.0, "si_power_w", "must be positive");
    require(std::isfinite(si_channel_gain_db), "si_channel_gain_db", "must be finite");
    require(std::isfinite(noise_psd_dbm_hz), "noise_psd_dbm_hz", "must be finite");
    require(std::isfinite(noise_figure_db), "noise_figure_db", "must be finite");
    require(std::isfinite(bs_antenna_gain_db), "bs_antenna_gain_db", "must be finite");
    require(num_antennas >= 1, "num_antennas", "must be >= 1");
    require(users_ul_per_cell >= 1, "users_ul_per_cell", "must be >= 1");
    require(users_dl_per_cell >= 1, "users_dl_per_cell", "must be >= 1");
    require(pilots_per_cell >= users_ul_per_cell, "pilots_per_cell",
            "must be >= users_ul_per_cell (one orthogonal pilot per uplink user)");
    require(overhead_fraction >= 0.0 && overhead_fraction <= 1.0, "overhead_fraction", "must lie in [0, 1]");
    require(coherence_tile >= 1, "coherence_tile", "must be >= 1");
    require(overhead_fraction * pilots_per_cell / coherence_tile < 1.0, "coherence_tile",
            "pilot overhead beta*N_p/N_c must be < 1");
    require(inter_site_distance_m > 0.0, "inter_site_distance_m", "must be positive");
    require(min_ue_bs_distance_m > 0.0, "min_ue_bs_distance_m", "must be positive");
    require(min_ue_bs_distance_m < inter_site_distance_m / 2.0, "min_ue_bs_distance_m",
            "must be smaller than half the inter-site distance");
    require(std::isfinite(pathloss_intercept_db), "pathloss_intercept_db", "must be finite");
    require(power_control.empty() || static_cast<int>(power_control.size()) == users_ul_per_cell,
            "power_control", "must be empty or hold one ratio per uplink user");
    for (double ratio : power_control) {
        require(ratio > 0.0 && ratio <= 1.0, "power_control", "every P_k/P_u must lie in (0, 1]");
    }
    require(num_tiers >= 0, "num_tiers", "must be >= 0");
    require(pilot_reuse_factor == 1 || pilot_reuse_factor == 3, "pilot_reuse_factor", "must be 1 or 3");
}

double SystemParams::power_ratio(int user_index) const {
    if (power_control.empty()) return 1.0;
    return power_control.at(static_cast<std::size_t>(user_index));
}

double noise_power_dbm(const SystemParams& params) {
    return params.noise_psd_dbm_hz + linear_to_db(params.bandwidth_hz) + params.noise_figure_db;
}

double noise_power_w(const SystemParams& params) { return dbm_to_watt(noise_power_dbm(params)); }

double inr(const SystemParams& params) {
    return params.si_power_w * db_to_linear(params.si_channel_gain_db) / noise_power_w(params);
}

double overhead_factor(const SystemParams& params) {
    return 1.0 - params.overhead_fraction * params.pilots_per_cell / params.coherence_tile;
}

}  // namespace fdmimo
