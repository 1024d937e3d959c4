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

#include "doctest.h"

#include "fdmimo/oracle.hpp"
#include "fdmimo/sqinr.hpp"
#include "fdmimo/validation.hpp"

using namespace fdmimo;

namespace {

LinkBudget small_budget() {
    LinkBudget lb = oracle_reference_budget();
    lb.num_antennas = 32;
    return lb;
}

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= static_cast<double>(v.size() - 1);
    return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace

TEST_CASE("matrix helpers") {
    ComplexMatrix a(2, 2);
    a(0, 0) = {1, 0};
    a(0, 1) = {0, 1};
    a(1, 0) = {2, 0};
    a(1, 1) = {0, 0};
    const ComplexVector x{{1, 0}, {1, 1}};
    const auto y = a * x;
    CHECK(y[0] == cdouble(0, 1));
    CHECK(y[1] == cdouble(2, 0));
    const auto z = a.left_multiply_conj(x);  // x^H A
    CHECK(z[0] == cdouble(3, -2));
    CHECK(z[1] == cdouble(0, 1));
    CHECK(inner(x, x) == cdouble(3, 0));
    CHECK(squared_norm(x) == 3.0);
}

TEST_CASE("channel statistics") {
    const LinkBudget lb = small_budget();
    Rng rng(1);
    double h_power = 0.0;
    double si_power = 0.0;
    int h_entries = 0;
    int si_entries = 0;
    for (int i = 0; i < 200; ++i) {
        const auto r = draw_realization(lb, rng);
        REQUIRE(r.h.size() == lb.cells.size());
        for (const auto& cell : r.h) {
            for (const auto& v : cell) {
                h_power += squared_norm(v);
                h_entries += static_cast<int>(v.size());
            }
        }
        REQUIRE(r.h_si.rows() == lb.num_antennas);
        for (const auto& e : r.h_si.data()) si_power += std::norm(e);
        si_entries += static_cast<int>(r.h_si.data().size());
        REQUIRE(r.precoders.size() == static_cast<std::size_t>(lb.num_dl_users));
    }
    // Exponential entry powers: relative standard error 1/sqrt(n).
    CHECK(std::abs(h_power / h_entries - 1.0) < 3.0 / std::sqrt(h_entries));
    const double mu2 = lb.si_channel_gain;
    CHECK(std::abs(si_power / si_entries - mu2) < 3.0 * mu2 / std::sqrt(si_entries));
}

TEST_CASE("no SI matrix without SI") {
    LinkBudget lb = small_budget();
    lb.inr = 0.0;
    Rng rng(2);
    CHECK(draw_realization(lb, rng).h_si.empty());
}

TEST_CASE("matched filter") {
    LinkBudget lb = small_budget();
    Rng rng(3);
    const auto r = draw_realization(lb, rng);
    CHECK(build_matched_filter(r, lb).size() == static_cast<std::size_t>(lb.num_antennas));
    lb.cells[0].snr[static_cast<std::size_t>(lb.user)] = 0.0;
    CHECK_THROWS_AS(build_matched_filter(r, lb), std::invalid_argument);
}

TEST_CASE("full resolution has no quantization noise") {
    LinkBudget lb = small_budget();
    lb.alpha_u = lb.alpha_d = 1.0;
    Rng rng(4);
    const auto r = draw_realization(lb, rng);
    const auto q = sample_aqnm(r, lb, rng);
    for (const auto& x : q.q_u) CHECK(x == cdouble(0.0, 0.0));
    for (const auto& x : q.q_d) CHECK(x == cdouble(0.0, 0.0));
}

TEST_CASE("DAC noise covariance is diagonal with the AQNM variance") {
    const LinkBudget lb = small_budget();
    Rng rng(5);
    std::vector<double> p0, p1, re01, im01;
    for (int i = 0; i < 4000; ++i) {
        const auto r = draw_realization(lb, rng);
        const auto q = sample_aqnm(r, lb, rng);
        p0.push_back(std::norm(q.q_d[0]));
        p1.push_back(std::norm(q.q_d[1]));
        const cdouble c = q.q_d[0] * std::conj(q.q_d[1]);
        re01.push_back(c.real());
        im01.push_back(c.imag());
    }
    // E|q_d,i|^2 = a_d (1 - a_d) E sum_k |f_k,i|^2 = a_d (1 - a_d) K^d.
    const double expected = lb.alpha_d * (1.0 - lb.alpha_d) * lb.num_dl_users;
    for (const auto& v : {p0, p1}) {
        const auto [m, se] = mean_se(v);
        CHECK(std::abs(m - expected) < 4.0 * se);
    }
    for (const auto& v : {re01, im01}) {
        const auto [m, se] = mean_se(v);
        CHECK(std::abs(m) < 4.0 * se);
    }
}

TEST_CASE("zeroed sources give zero terms") {
    LinkBudget lb = small_budget();
    lb.alpha_u = lb.alpha_d = 1.0;
    lb.inr = 0.0;
    for (auto& c : lb.cells) c.pilot_reuse = false;
    const auto samples = simulate_terms(lb, 200, 6);
    const auto p = term_powers(samples, lb);
    CHECK(p.pilot_contam == 0.0);
    CHECK(p.si_fd == 0.0);
    CHECK(p.aqnm_aggregate == 0.0);
    CHECK(p.desired > 0.0);
    CHECK(p.noise > 0.0);
}

TEST_CASE("predicted terms sum to the closed-form denominator") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const LinkBudget lb = random_link_budget(rng);
        const auto b = sqinr_hardening(lb);
        const auto p = predicted_term_powers(lb);
        CHECK(p.interference() == doctest::Approx(b.den.sum()).epsilon(1e-12));
        CHECK(p.desired == doctest::Approx(b.numerator).epsilon(1e-12));
    }
}

TEST_CASE("SI power is linear in the downlink user count") {
    LinkBudget lb = small_budget();
    lb.num_dl_users = 5;
    const double p5 = term_powers(simulate_terms(lb, 3000, 8), lb).si_fd;
    lb.num_dl_users = 10;
    const double p10 = term_powers(simulate_terms(lb, 3000, 8), lb).si_fd;
    CHECK(p10 / p5 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("desired term is uncorrelated with every other term") {
    const LinkBudget lb = small_budget();
    const auto samples = simulate_terms(lb, 4000, 9);
    cdouble g{};
    for (const auto& t : samples) g += t.own_gain;
    g /= static_cast<double>(samples.size());
    const double amp = lb.alpha_u * std::sqrt(lb.own());

    using Getter = cdouble (*)(const TermSample&);
    const Getter getters[] = {
        [](const TermSample& t) { return t.intra_cell; },   [](const TermSample& t) { return t.pilot_contam; },
        [](const TermSample& t) { return t.inter_cell; },   [](const TermSample& t) { return t.si_fd; },
        [](const TermSample& t) { return t.aqnm_aggregate; }, [](const TermSample& t) { return t.noise; },
    };
    for (const Getter get : getters) {
        std::vector<double> re, im;
        for (const auto& t : samples) {
            const cdouble c = amp * g * t.own_symbol * std::conj(get(t));
            re.push_back(c.real());
            im.push_back(c.imag());
        }
        for (const auto& v : {re, im}) {
            const auto [m, se] = mean_se(v);
            CHECK(std::abs(m) < 3.5 * se);
        }
    }
}

TEST_CASE("terms are independent of the thread count") {
    const LinkBudget lb = small_budget();
    OracleOptions one;
    one.threads = 1;
    OracleOptions four;
    four.threads = 4;
    const auto a = simulate_terms(lb, 600, 10, one);
    const auto b = simulate_terms(lb, 600, 10, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].own_gain == b[i].own_gain);
        CHECK(a[i].si_fd == b[i].si_fd);
    }
}

TEST_CASE("empirical SQINR agrees with the closed form") {
    const LinkBudget lb = small_budget();
    const auto e = empirical_sqinr(lb, 3000, 11);
    CHECK(e.standard_error > 0.0);
    CHECK(std::abs(e.sqinr - sqinr_hardening(lb).sqinr) / sqinr_hardening(lb).sqinr < 0.2);
    CHECK_THROWS_AS(empirical_sqinr(lb, 999, 11), std::invalid_argument);
}

TEST_CASE("filter moments on a small draw") {
    const LinkBudget lb = moments_reference_budget();
    const auto m = filter_moments(lb, 20000, 12);
    const double n = lb.num_antennas;
    CHECK(m.norm2 == doctest::Approx(n).epsilon(0.05));
    CHECK(m.norm4 == doctest::Approx(n * n + n).epsilon(0.05));
    CHECK(m.independent == doctest::Approx(n).epsilon(0.05));
    CHECK(m.draws == 20000);
}
