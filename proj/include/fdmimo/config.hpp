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

// Config files are JSON objects with one key per system parameter:
//
//   bandwidth_hz            Hz
//   pathloss_exponent       eta, must be > 2
//   shadowing_sigma_db      dB
//   uplink_power_w          W
//   si_power_w              W
//   si_channel_gain_db      mu_SI^2 in dB
//   noise_psd_dbm_hz        dBm/Hz
//   noise_figure_db         dB
//   bs_antenna_gain_db      dB, applied to every UE->BS uplink SNR
//   num_antennas            N_a
//   users_ul_per_cell       K^u
//   users_dl_per_cell       K^d
//   pilots_per_cell         N_p
//   overhead_fraction       beta in [0,1]
//   coherence_tile          N_c
//   adc_bits, dac_bits      integer >= 1 or "full"
//   inter_site_distance_m   m
//   min_ue_bs_distance_m    m
//   pathloss_intercept_db   L_ref in dB
//   power_control           array of P_k/P_u per user index, or [] for full power
//   num_tiers               hexagonal rings around cell 0
//   pilot_reuse_factor      1 or 3
//   wraparound              bool
//
// Missing keys keep their defaults; unknown keys are rejected.
// Environment variables FDMIMO_<KEY> (upper case) override file values, and
// "key=value" overrides (CLI) are applied last.

#ifndef FDMIMO_CONFIG_HPP
#define FDMIMO_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fdmimo/params.hpp"

namespace fdmimo {

inline constexpr std::string_view kEnvPrefix = "FDMIMO_";

const std::vector<std::string>& config_keys();

nlohmann::json params_to_json(const SystemParams& params);

// Applies the keys present in `j` on top of `base`. Does not validate.
SystemParams params_from_json(const nlohmann::json& j, SystemParams base = {});

SystemParams load_params(const std::filesystem::path& path);
void save_params(const SystemParams& params, const std::filesystem::path& path);

// Sets one key from its textual value (same syntax as the JSON scalar or a
// comma-separated list for power_control).
void set_param(SystemParams& params, std::string_view key, std::string_view value);

// Applies "key=value" strings in order.
void apply_overrides(SystemParams& params, const std::vector<std::string>& assignments);

// Applies FDMIMO_<KEY> variables found in the environment.
void apply_env_overrides(SystemParams& params);

}  // namespace fdmimo

#endif  // FDMIMO_CONFIG_HPP
