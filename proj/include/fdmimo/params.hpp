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

#ifndef FDMIMO_PARAMS_HPP
#define FDMIMO_PARAMS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdmimo {

// Configuration error naming the offending key. The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// dB <-> linear conversions. Every power ratio in the project goes through these.
double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Converter resolution: a bit count, or full resolution (no quantization).
class Resolution {
public:
    static Resolution bits(int b);
    static Resolution full() { return Resolution{}; }

    bool is_full() const noexcept { return !bits_.has_value(); }
    int bit_count() const;  // throws std::logic_error on full resolution

    // "full" or the decimal bit count.
    std::string to_string() const;
    static Resolution parse(std::string_view text);

    friend bool operator==(const Resolution&, const Resolution&) = default;

private:
    Resolution() = default;
    std::optional<int> bits_;
};

// Quantizer distortion rho for a b-bit converter. b in 1..5 is tabulated; larger b uses
// rho = (pi*sqrt(3)/2) * 2^(-2b).
double rho_for_bits(int b);

// Additive quantization noise model of one converter: y_q = alpha*y + q with alpha = 1 - rho.
struct Quantizer {
    Resolution resolution = Resolution::full();
    double rho = 0.0;
    double alpha = 1.0;

    static Quantizer from_resolution(const Resolution& r);
};

// All scalar system parameters. Defaults reproduce the reference system table.
struct SystemParams {
    double bandwidth_hz = 20e6;
    double pathloss_exponent = 4.0;
    double shadowing_sigma_db = 8.0;
    double uplink_power_w = 0.2;
    double si_power_w = 40.0;
    double si_channel_gain_db = 10.0;
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 3.0;
    double bs_antenna_gain_db = 30.0;
    int num_antennas = 100;
    int users_ul_per_cell = 10;
    int users_dl_per_cell = 10;
    int pilots_per_cell = 30;
    double overhead_fraction = 0.5;
    int coherence_tile = 20000;
    Resolution adc_bits = Resolution::bits(3);
    Resolution dac_bits = Resolution::bits(3);
    double inter_site_distance_m = 500.0;
    double min_ue_bs_distance_m = 10.0;
    double pathloss_intercept_db = -38.46;
    // P_k/P_u per uplink user index k (same index in every cell). Empty means full power.
    std::vector<double> power_control;

    // Lattice shape; not part of the reference table but needed to build degenerate layouts.
    int num_tiers = 2;
    int pilot_reuse_factor = 3;
    bool wraparound = true;

    // Throws ConfigError naming the first violated constraint.
    void validate() const;

    double power_ratio(int user_index) const;
    Quantizer uplink_quantizer() const { return Quantizer::from_resolution(adc_bits); }
    Quantizer downlink_quantizer() const { return Quantizer::from_resolution(dac_bits); }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Thermal noise power over the band including the noise figure, in dBm.
double noise_power_dbm(const SystemParams& params);
double noise_power_w(const SystemParams& params);

// Self-interference-to-noise ratio P_SI * mu_SI^2 / sigma^2 (linear).
double inr(const SystemParams& params);

// Pilot overhead factor 1 - beta * N_p / N_c.
double overhead_factor(const SystemParams& params);

}  // namespace fdmimo

#endif  // FDMIMO_PARAMS_HPP
