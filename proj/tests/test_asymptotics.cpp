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
#include <sstream>

#include "doctest.h"

#include "fdmimo/asymptotics.hpp"
#include "fdmimo/sqinr.hpp"
#include "fdmimo/validation.hpp"

using namespace fdmimo;

namespace {

LinkBudget single_user(double snr, int antennas) {
    LinkBudget lb;
    lb.cells.push_back({{snr}, {1.0}, false});
    lb.num_antennas = antennas;
    return lb;
}

}  // namespace

TEST_CASE("full-resolution limit examples") {
    CHECK(lemma2_full_resolution_se(single_user(10.0, 100)) == doctest::Approx(6.386).epsilon(1e-4));
    CHECK(lemma2_full_resolution_se(single_user(0.0, 100)) == 0.0);
}

TEST_CASE("high-SNR ceiling examples") {
    CHECK(lemma3_high_snr_se(100, 1.0) == doctest::Approx(std::log2(101.0)));
    CHECK(lemma3_high_snr_se(100, 1.0) == doctest::Approx(6.6582).epsilon(1e-5));
    const double a3 = Quantizer::from_resolution(Resolution::bits(3)).alpha;
    CHECK(lemma3_high_snr_se(100, a3) == doctest::Approx(6.660).epsilon(1e-4));
    for (int b = 1; b <= 8; ++b) {
        const double a = Quantizer::from_resolution(Resolution::bits(b)).alpha;
        CHECK(lemma3_high_snr_sqinr(100, a) > lemma3_high_snr_sqinr(100, 1.0));
    }
}

TEST_CASE("power-scaling limit examples") {
    CHECK(lemma4_power_scaling_se(1.0, 1.0, 1.0, 10, 0.0) == doctest::Approx(1.0));
    CHECK(lemma4_power_scaling_se(10.0, 1.0, 1.0, 10, 1.0) == doctest::Approx(std::log2(1.0 + 100.0 / 11.0)));
    CHECK(lemma4_power_scaling_se(10.0, 1.0, 1.0, 10, 1.0) == doctest::Approx(3.335).epsilon(1e-4));
    CHECK(lemma4_power_scaling_se(0.0, 0.9, 0.9, 10, 1.0) == 0.0);
}

TEST_CASE("antenna-ratio limit") {
    CHECK_FALSE(lemma5_antenna_ratio_sqinr(single_user(10.0, 100)).has_value());
    CHECK_FALSE(lemma5_antenna_ratio_se(single_user(10.0, 100)).has_value());
    const LinkBudget lb = oracle_reference_budget();
    const auto lim = lemma5_antenna_ratio_sqinr(lb);
    REQUIRE(lim.has_value());
    LinkBudget big = lb;
    big.num_antennas = 100000000;
    CHECK(std::abs(sqinr_hardening(big).sqinr - *lim) / *lim < 1e-3);
}

TEST_CASE("default schedule") {
    const auto s = default_schedule();
    REQUIRE(s.size() == 7);
    CHECK(s.front() == 1e2);
    CHECK(s.back() == 1e8);
}

TEST_CASE("probes") {
    const auto reports = run_all_probes();
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) {
        CAPTURE(to_string(r.id));
        CHECK_FALSE(r.probes.empty());
        if (r.assertable) CHECK(r.converged);
        if (r.id == LimitId::lemma4_power_scaling || r.id == LimitId::lemma3_estimated_csi) {
            CHECK_FALSE(r.assertable);
            CHECK_FALSE(r.converged);
        }
    }
    std::ostringstream os;
    write_limit_reports_csv(reports, os);
    CHECK(os.str().rfind("limit_id,limit_value,last_probe,gap,asserted,converged\n", 0) == 0);
    CHECK(os.str().find("lemma4_power_scaling") != std::string::npos);
}

TEST_CASE("gaps shrink along the schedule") {
    const LinkBudget lb = oracle_reference_budget();
    const auto r = convergence_probe(LimitId::lemma5_antenna_ratio, lb, default_schedule());
    double prev = INFINITY;
    for (const auto& [x, v] : r.probes) {
        const double gap = std::abs(v - r.limit_value);
        CHECK(gap <= prev);
        prev = gap;
    }
}
