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

#include "fdmimo/validation.hpp"

#include <algorithm>
#include <cmath>

#include "fdmimo/asymptotics.hpp"
#include "fdmimo/oracle.hpp"
#include "fdmimo/sqinr.hpp"

namespace fdmimo {

namespace {

double rel_error(double predicted, double observed) {
    if (predicted == 0.0) return std::abs(observed);
    return std::abs(observed - predicted) / std::abs(predicted);
}

CheckResult make_check(std::string suite, std::string name, double predicted, double observed, double tol) {
    CheckResult c;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.predicted = predicted;
    c.observed = observed;
    c.relative_error = rel_error(predicted, observed);
    c.tolerance = tol;
    c.passed = c.relative_error <= tol;
    return c;
}

double log_uniform_db(Rng& rng, double lo_db, double hi_db) {
    std::uniform_real_distribution<double> u(lo_db, hi_db);
    return db_to_linear(u(rng));
}

}  // namespace

LinkBudget random_link_budget(Rng& rng) {
    std::uniform_int_distribution<int> n_cells(1, 5);
    std::uniform_int_distribution<int> n_users(1, 6);
    std::uniform_int_distribution<int> n_ant(1, 512);
    std::uniform_int_distribution<int> n_dl(1, 20);
    std::uniform_int_distribution<int> bits(0, 8);
    std::uniform_real_distribution<double> ratio(0.05, 1.0);
    std::bernoulli_distribution coin(0.5);

    LinkBudget lb;
    const int cells = n_cells(rng);
    const int users = n_users(rng);
    lb.user = std::uniform_int_distribution<int>(0, users - 1)(rng);
    for (int c = 0; c < cells; ++c) {
        CellLinks links;
        for (int k = 0; k < users; ++k) {
            links.snr.push_back(log_uniform_db(rng, -20.0, 40.0));
            links.power_ratio.push_back(coin(rng) ? 1.0 : ratio(rng));
        }
        links.pilot_reuse = c > 0 && coin(rng);
        lb.cells.push_back(std::move(links));
    }
    lb.num_antennas = n_ant(rng);
    lb.num_dl_users = n_dl(rng);
    lb.inr = log_uniform_db(rng, -30.0, 30.0);
    const int b = bits(rng);
    const double alpha = b == 0 ? 1.0 : Quantizer::from_resolution(Resolution::bits(b)).alpha;
    lb.alpha_u = alpha;
    lb.alpha_d = coin(rng) ? alpha : Quantizer::from_resolution(Resolution::bits(bits(rng) + 1)).alpha;
    return lb;
}

LinkBudget oracle_reference_budget() {
    LinkBudget lb;
    lb.user = 0;
    lb.cells.push_back({{10.0, 4.0, 20.0, 1.5}, {1.0, 1.0, 1.0, 1.0}, false});
    lb.cells.push_back({{0.8, 0.3, 1.2, 0.5}, {1.0, 1.0, 1.0, 1.0}, true});
    lb.cells.push_back({{0.4, 0.6, 0.2, 0.9}, {1.0, 1.0, 1.0, 1.0}, false});
    lb.num_antennas = 128;
    lb.num_dl_users = 4;
    lb.inr = 0.01;
    lb.si_channel_gain = db_to_linear(-110.0);
    lb.uplink_to_si_power = 0.2 / 40.0;
    lb.alpha_u = lb.alpha_d = Quantizer::from_resolution(Resolution::bits(3)).alpha;
    return lb;
}

LinkBudget moments_reference_budget() {
    LinkBudget lb;
    lb.user = 1;
    lb.cells.push_back({{3.0, 5.0, 2.0, 8.0}, {1.0, 1.0, 1.0, 1.0}, false});
    lb.cells.push_back({{0.5, 2.0, 0.3, 1.0}, {1.0, 1.0, 1.0, 1.0}, true});
    lb.cells.push_back({{0.2, 0.7, 0.4, 0.1}, {1.0, 1.0, 1.0, 1.0}, true});
    lb.num_antennas = 100;
    lb.num_dl_users = 10;
    return lb;
}

std::vector<CheckResult> run_moment_checks(const ValidationOptions& options) {
    const LinkBudget lb = moments_reference_budget();
    const int draws = options.quick ? 20000 : 100000;
    const double tol = options.quick ? 0.05 : 0.02;
    const auto m = filter_moments(lb, draws, options.seed, options.threads);
    const double n = lb.num_antennas;
    const double s = lb.pilot_set().front();
    const double d = lb.estimate_normalizer();

    std::vector<CheckResult> out;
    out.push_back(make_check("moments", "E||w||^2", n, m.norm2, tol));
    out.push_back(make_check("moments", "E||w||^4", n * n + n, m.norm4, tol));
    out.push_back(make_check("moments", "E|w^H h|^2 independent", n, m.independent, tol));
    out.push_back(make_check("moments", "E|w^H h|^2 pilot-shared", n + n * n * s / d, m.pilot_shared, tol));
    return out;
}

std::vector<CheckResult> run_identity_checks(const ValidationOptions& options) {
    Rng rng(derive_seed(options.seed, Stream::oracle, 0xd1ULL));
    double worst_lemma2 = 0.0;
    double worst_fullres = 0.0;
    double worst_nocontam = 0.0;
    for (int i = 0; i < 1000; ++i) {
        LinkBudget lb = random_link_budget(rng);
        lb.alpha_u = lb.alpha_d = 1.0;
        worst_lemma2 = std::max(worst_lemma2, rel_error(lemma2_full_resolution_sqinr(lb), sqinr_hardening(lb).sqinr));

        lb.inr = 0.0;
        worst_fullres = std::max(worst_fullres, rel_error(sinr_hd_full_res(lb), sqinr_hardening(lb).sqinr));

        for (auto& c : lb.cells) c.pilot_reuse = false;
        worst_nocontam = std::max(worst_nocontam, rel_error(sinr_no_contamination(lb), sinr_hd_full_res(lb)));
    }
    constexpr double tol = 1e-12;
    std::vector<CheckResult> out;
    out.push_back(make_check("identities", "hardening(alpha=1) == full-resolution form", 0.0, worst_lemma2, tol));
    out.push_back(make_check("identities", "hardening(alpha=1, INR=0) == HD full-resolution", 0.0, worst_fullres, tol));
    out.push_back(make_check("identities", "HD full-resolution(C empty) == no-contamination", 0.0, worst_nocontam, tol));
    return out;
}

std::vector<CheckResult> run_oracle_checks(const ValidationOptions& options) {
    const int n = options.quick ? 2000 : 10000;
    OracleOptions opts;
    opts.threads = options.threads;

    std::vector<CheckResult> out;
    const LinkBudget lb = oracle_reference_budget();
    const auto q = empirical_sqinr(lb, n, options.seed, opts);
    const auto pred = predicted_term_powers(lb);
    const double tol_q = options.quick ? 0.20 : 0.10;
    out.push_back(make_check("oracle", "SQINR b=3 full-duplex", sqinr_hardening(lb).sqinr, q.sqinr, tol_q));
    out.push_back(make_check("oracle", "SI term b=3", pred.si_fd, q.powers.si_fd, tol_q));
    out.push_back(make_check("oracle", "AQNM term b=3", pred.aqnm_aggregate, q.powers.aqnm_aggregate, tol_q));

    LinkBudget full = lb;
    full.alpha_u = full.alpha_d = 1.0;
    full.inr = 0.0;
    const auto f = empirical_sqinr(full, n, options.seed + 1, opts);
    const double tol_f = options.quick ? 0.10 : 0.05;
    out.push_back(make_check("oracle", "SINR full resolution, no SI", sinr_hd_full_res(full), f.sqinr, tol_f));
    return out;
}

std::vector<CheckResult> run_limit_checks() {
    std::vector<CheckResult> out;
    for (const auto& r : run_all_probes()) {
        CheckResult c;
        c.suite = "limits";
        c.name = to_string(r.id);
        c.predicted = r.limit_value;
        c.observed = r.probes.empty() ? 0.0 : r.probes.back().second;
        c.relative_error = r.relative_gap;
        c.tolerance = r.tolerance;
        c.asserted = r.assertable;
        c.passed = r.assertable ? r.converged : true;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    std::vector<CheckResult> all;
    for (auto&& part : {run_moment_checks(options), run_identity_checks(options), run_oracle_checks(options),
                        run_limit_checks()}) {
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace fdmimo
