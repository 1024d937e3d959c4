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

#include "fdmimo/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fdmimo {

using nlohmann::json;

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "bandwidth_hz",       "pathloss_exponent",   "shadowing_sigma_db",  "uplink_power_w",
        "si_power_w",         "si_channel_gain_db",  "noise_psd_dbm_hz",    "noise_figure_db",
        "bs_antenna_gain_db", "num_antennas",        "users_ul_per_cell",   "users_dl_per_cell",
        "pilots_per_cell",    "overhead_fraction",   "coherence_tile",      "adc_bits",
        "dac_bits",           "inter_site_distance_m", "min_ue_bs_distance_m", "pathloss_intercept_db",
        "power_control",      "num_tiers",           "pilot_reuse_factor",  "wraparound"};
    return keys;
}

namespace {

json resolution_to_json(const Resolution& r) {
    if (r.is_full()) return "full";
    return r.bit_count();
}

Resolution resolution_from_json(const json& j, const std::string& key) {
    try {
        if (j.is_string()) return Resolution::parse(j.get<std::string>());
        if (j.is_number_integer()) return Resolution::bits(j.get<int>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
    throw ConfigError(key, "expected an integer bit count or \"full\"");
}

template <typename T>
T get_as(const json& j, const std::string& key) {
    try {
        if constexpr (std::is_same_v<T, int>) {
            if (!j.is_number_integer()) throw ConfigError(key, "expected an integer");
        } else if constexpr (std::is_same_v<T, double>) {
            if (!j.is_number()) throw ConfigError(key, "expected a number");
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!j.is_boolean()) throw ConfigError(key, "expected true or false");
        }
        return j.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(key, e.what());
    }
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

}  // namespace

json params_to_json(const SystemParams& p) {
    return json{
        {"bandwidth_hz", p.bandwidth_hz},
        {"pathloss_exponent", p.pathloss_exponent},
        {"shadowing_sigma_db", p.shadowing_sigma_db},
        {"uplink_power_w", p.uplink_power_w},
        {"si_power_w", p.si_power_w},
        {"si_channel_gain_db", p.si_channel_gain_db},
        {"noise_psd_dbm_hz", p.noise_psd_dbm_hz},
        {"noise_figure_db", p.noise_figure_db},
        {"bs_antenna_gain_db", p.bs_antenna_gain_db},
        {"num_antennas", p.num_antennas},
        {"users_ul_per_cell", p.users_ul_per_cell},
        {"users_dl_per_cell", p.users_dl_per_cell},
        {"pilots_per_cell", p.pilots_per_cell},
        {"overhead_fraction", p.overhead_fraction},
        {"coherence_tile", p.coherence_tile},
        {"adc_bits", resolution_to_json(p.adc_bits)},
        {"dac_bits", resolution_to_json(p.dac_bits)},
        {"inter_site_distance_m", p.inter_site_distance_m},
        {"min_ue_bs_distance_m", p.min_ue_bs_distance_m},
        {"pathloss_intercept_db", p.pathloss_intercept_db},
        {"power_control", p.power_control},
        {"num_tiers", p.num_tiers},
        {"pilot_reuse_factor", p.pilot_reuse_factor},
        {"wraparound", p.wraparound},
    };
}

SystemParams params_from_json(const json& j, SystemParams p) {
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "bandwidth_hz") p.bandwidth_hz = get_as<double>(value, key);
        else if (key == "pathloss_exponent") p.pathloss_exponent = get_as<double>(value, key);
        else if (key == "shadowing_sigma_db") p.shadowing_sigma_db = get_as<double>(value, key);
        else if (key == "uplink_power_w") p.uplink_power_w = get_as<double>(value, key);
        else if (key == "si_power_w") p.si_power_w = get_as<double>(value, key);
        else if (key == "si_channel_gain_db") p.si_channel_gain_db = get_as<double>(value, key);
        else if (key == "noise_psd_dbm_hz") p.noise_psd_dbm_hz = get_as<double>(value, key);
        else if (key == "noise_figure_db") p.noise_figure_db = get_as<double>(value, key);
        else if (key == "bs_antenna_gain_db") p.bs_antenna_gain_db = get_as<double>(value, key);
        else if (key == "num_antennas") p.num_antennas = get_as<int>(value, key);
        else if (key == "users_ul_per_cell") p.users_ul_per_cell = get_as<int>(value, key);
        else if (key == "users_dl_per_cell") p.users_dl_per_cell = get_as<int>(value, key);
        else if (key == "pilots_per_cell") p.pilots_per_cell = get_as<int>(value, key);
        else if (key == "overhead_fraction") p.overhead_fraction = get_as<double>(value, key);
        else if (key == "coherence_tile") p.coherence_tile = get_as<int>(value, key);
        else if (key == "adc_bits") p.adc_bits = resolution_from_json(value, key);
        else if (key == "dac_bits") p.dac_bits = resolution_from_json(value, key);
        else if (key == "inter_site_distance_m") p.inter_site_distance_m = get_as<double>(value, key);
        else if (key == "min_ue_bs_distance_m") p.min_ue_bs_distance_m = get_as<double>(value, key);
        else if (key == "pathloss_intercept_db") p.pathloss_intercept_db = get_as<double>(value, key);
        else if (key == "power_control") {
            if (!value.is_array()) throw ConfigError(key, "expected an array of ratios");
            p.power_control.clear();
            for (const auto& v : value) p.power_control.push_back(get_as<double>(v, key));
        } else if (key == "num_tiers") p.num_tiers = get_as<int>(value, key);
        else if (key == "pilot_reuse_factor") p.pilot_reuse_factor = get_as<int>(value, key);
        else if (key == "wraparound") p.wraparound = get_as<bool>(value, key);
        else throw ConfigError(key, "unknown configuration key");
    }
    return p;
}

SystemParams load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("malformed config: ") + e.what());
    }
    return params_from_json(j);
}

void save_params(const SystemParams& params, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << params_to_json(params).dump(2) << '\n';
}

void set_param(SystemParams& params, std::string_view key, std::string_view value) {
    const std::string k(key);
    if (std::find(config_keys().begin(), config_keys().end(), k) == config_keys().end()) {
        throw ConfigError(k, "unknown configuration key");
    }
    json v;
    if (k == "power_control") {
        v = json::array();
        std::stringstream ss{std::string(value)};
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                v.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ConfigError(k, "invalid ratio '" + item + "'");
            }
        }
    } else if (k == "adc_bits" || k == "dac_bits") {
        v = std::string(value);
    } else {
        try {
            v = json::parse(value);
        } catch (const json::parse_error&) {
            throw ConfigError(k, "invalid value '" + std::string(value) + "'");
        }
    }
    params = params_from_json(json{{k, v}}, params);
}

void apply_overrides(SystemParams& params, const std::vector<std::string>& assignments) {
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) throw ConfigError(a, "override must have the form key=value");
        set_param(params, a.substr(0, eq), std::string_view(a).substr(eq + 1));
    }
}

void apply_env_overrides(SystemParams& params) {
    for (const auto& key : config_keys()) {
        const std::string var = std::string(kEnvPrefix) + upper(key);
        if (const char* value = std::getenv(var.c_str())) {
            set_param(params, key, value);
        }
    }
}

}  // namespace fdmimo
