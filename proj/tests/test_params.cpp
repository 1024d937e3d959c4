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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>

#include "doctest.h"

#include "fdmimo/config.hpp"
#include "fdmimo/params.hpp"

using namespace fdmimo;

TEST_CASE("rho table values") {
    CHECK(rho_for_bits(1) == 0.3634);
    CHECK(rho_for_bits(2) == 0.1175);
    CHECK(rho_for_bits(3) == 0.03454);
    CHECK(rho_for_bits(4) == 0.009497);
    CHECK(rho_for_bits(5) == 0.002499);
}

TEST_CASE("rho tail formula") {
    CHECK(rho_for_bits(12) == doctest::Approx(1.6217e-7).epsilon(1e-4));
    // The high-resolution formula is already close to the tabulated value at b = 5.
    const double formula5 = std::numbers::pi * std::sqrt(3.0) / 2.0 * std::pow(2.0, -10.0);
    CHECK(std::abs(formula5 - rho_for_bits(5)) / rho_for_bits(5) < 0.07);
    CHECK_THROWS_AS(rho_for_bits(0), std::invalid_argument);
}

TEST_CASE("alpha increases with bits and tends to one") {
    double prev = 0.0;
    for (int b = 1; b <= 16; ++b) {
        const double a = Quantizer::from_resolution(Resolution::bits(b)).alpha;
        CHECK(a > prev);
        CHECK(a < 1.0);
        prev = a;
    }
    CHECK(prev > 1.0 - 1e-8);
    CHECK(Quantizer::from_resolution(Resolution::full()).alpha == 1.0);
}

TEST_CASE("resolution parsing") {
    CHECK(Resolution::parse("3") == Resolution::bits(3));
    CHECK(Resolution::parse(" full ") == Resolution::full());
    CHECK(Resolution::bits(4).to_string() == "4");
    CHECK(Resolution::full().to_string() == "full");
    CHECK_THROWS(Resolution::parse("three"));
    CHECK_THROWS(Resolution::parse("3.5"));
}

TEST_CASE("noise power examples") {
    SystemParams p;
    CHECK(noise_power_dbm(p) == doctest::Approx(-97.99).epsilon(1e-4));
    p.bandwidth_hz = 1.0;
    p.noise_figure_db = 0.0;
    CHECK(noise_power_dbm(p) == doctest::Approx(-174.0));
    p.bandwidth_hz = 10e6;
    p.noise_figure_db = 3.0;
    CHECK(noise_power_dbm(p) == doctest::Approx(-101.0).epsilon(1e-4));
}

TEST_CASE("INR examples") {
    SystemParams p;
    CHECK(linear_to_db(inr(p)) == doctest::Approx(154.0).epsilon(1e-4));
    p.si_power_w = 0.0;
    CHECK(inr(p) == 0.0);
    p = SystemParams{};
    p.si_channel_gain_db = -std::numeric_limits<double>::infinity();
    CHECK(inr(p) == 0.0);
}

TEST_CASE("dB conversions round trip") {
    for (double x : {-150.0, -3.0, 0.0, 10.0, 154.0}) {
        CHECK(linear_to_db(db_to_linear(x)) == doctest::Approx(x));
    }
    CHECK(watt_to_dbm(0.2) == doctest::Approx(23.0103).epsilon(1e-5));
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
}

TEST_CASE("overhead factor") {
    SystemParams p;
    CHECK(overhead_factor(p) == doctest::Approx(0.99925));
    p.coherence_tile = 2000;
    CHECK(overhead_factor(p) == doctest::Approx(0.9925));
}

TEST_CASE("validation names the offending key") {
    SystemParams p;
    CHECK_NOTHROW(p.validate());
    p.pathloss_exponent = 2.0;
    try {
        p.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "pathloss_exponent");
        CHECK(std::string(e.what()).find("eta > 2") != std::string::npos);
    }
    p = SystemParams{};
    p.pilots_per_cell = 5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = SystemParams{};
    p.coherence_tile = 10;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = SystemParams{};
    p.power_control = {1.0, 1.5};
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = SystemParams{};
    p.pilot_reuse_factor = 4;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("config json round trip") {
    SystemParams p;
    p.num_antennas = 64;
    p.adc_bits = Resolution::full();
    p.dac_bits = Resolution::bits(5);
    p.power_control = {1.0, 0.5, 0.25};
    p.wraparound = false;
    CHECK(params_from_json(params_to_json(p)) == p);

    const auto path = std::filesystem::temp_directory_path() / "fdmimo_test_config.json";
    save_params(p, path);
    CHECK(load_params(path) == p);
    std::filesystem::remove(path);
}

TEST_CASE("config rejects unknown keys and bad types") {
    CHECK_THROWS_AS(params_from_json(nlohmann::json{{"antennas", 10}}), ConfigError);
    CHECK_THROWS_AS(params_from_json(nlohmann::json{{"num_antennas", "many"}}), ConfigError);
    CHECK_THROWS_AS(params_from_json(nlohmann::json{{"adc_bits", "x"}}), ConfigError);
    CHECK_THROWS_AS(load_params("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("overrides apply in order") {
    SystemParams p;
    apply_overrides(p, {"num_antennas=200", "adc_bits=full", "power_control=1,0.5", "num_antennas=300"});
    CHECK(p.num_antennas == 300);
    CHECK(p.adc_bits.is_full());
    CHECK(p.power_control == std::vector<double>{1.0, 0.5});
    CHECK_THROWS_AS(apply_overrides(p, {"num_antennas"}), ConfigError);
    CHECK_THROWS_AS(set_param(p, "bogus", "1"), ConfigError);
}

TEST_CASE("environment overrides") {
    ::setenv("FDMIMO_SI_POWER_W", "30", 1);
    SystemParams p;
    apply_env_overrides(p);
    ::unsetenv("FDMIMO_SI_POWER_W");
    CHECK(p.si_power_w == 30.0);
}

TEST_CASE("every key is documented and settable") {
    const auto j = params_to_json(SystemParams{});
    CHECK(j.size() == config_keys().size());
    for (const auto& key : config_keys()) CHECK(j.contains(key));
}
