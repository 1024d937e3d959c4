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

#include "fdmimo/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fdmimo/sqinr.hpp"

namespace fdmimo {

double lemma2_full_resolution_sqinr(const LinkBudget& lb) {
    lb.validate();
    const double n = lb.num_antennas;
    const double s = lb.own();
    const double d = lb.estimate_normalizer();
    return (s * s * n / d) /
           (1.0 + lb.total_sum() + n * lb.pilot_square_sum() / d + n * lb.num_dl_users * lb.inr);
}

double lemma2_full_resolution_se(const LinkBudget& lb) { return std::log2(1.0 + lemma2_full_resolution_sqinr(lb)); }

double lemma3_high_snr_sqinr(int num_antennas, double alpha_u) {
    if (!(alpha_u > 0.0 && alpha_u <= 1.0)) throw std::invalid_argument("alpha_u must lie in (0, 1]");
    return num_antennas / (alpha_u * (2.0 - alpha_u));
}

double lemma3_high_snr_se(int num_antennas, double alpha_u) {
    return std::log2(1.0 + lemma3_high_snr_sqinr(num_antennas, alpha_u));
}

double lemma4_power_scaling_se(double e_ratio_snr, double alpha_u, double alpha_d, int num_dl_users, double inr) {
    if (e_ratio_snr < 0.0 || alpha_u < 0.0 || alpha_d < 0.0 || num_dl_users < 0 || inr < 0.0) {
        throw std::invalid_argument("power-scaling limit needs nonnegative inputs");
    }
    const double den = 1.0 + alpha_d * (alpha_u * num_dl_users + 1.0 - alpha_u) * inr;
    return std::log2(1.0 + alpha_u * e_ratio_snr * e_ratio_snr / den);
}

std::optional<double> lemma5_antenna_ratio_sqinr(const LinkBudget& lb) {
    lb.validate();
    const double au = lb.alpha_u;
    const double s = lb.own();
    const double d = lb.estimate_normalizer();
    const double den = au * lb.pilot_square_sum() / d + lb.alpha_d * (au * lb.num_dl_users + 1.0 - au) * lb.inr;
    if (den <= 0.0) return std::nullopt;
    return (au * s * s / d) / den;
}

std::optional<double> lemma5_antenna_ratio_se(const LinkBudget& lb) {
    const auto x = lemma5_antenna_ratio_sqinr(lb);
    if (!x) return std::nullopt;
    return std::log2(1.0 + *x);
}

std::string to_string(LimitId id) {
    switch (id) {
        case LimitId::lemma1_hd_high_snr: return "lemma1_hd_high_snr";
        case LimitId::lemma2_identity: return "lemma2_identity";
        case LimitId::lemma3_perfect_csi: return "lemma3_perfect_csi";
        case LimitId::lemma3_estimated_csi: return "lemma3_estimated_csi";
        case LimitId::lemma4_power_scaling: return "lemma4_power_scaling";
        case LimitId::lemma5_antenna_ratio: return "lemma5_antenna_ratio";
    }
    return "unknown";
}

std::vector<double> default_schedule() { return {1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8}; }

namespace {

void set_own_effective_snr(LinkBudget& lb, double value) {
    auto& cell = lb.cells.at(0);
    const auto k = static_cast<std::size_t>(lb.user);
    cell.snr[k] = value / cell.power_ratio[k];
}

void scale_all_snrs(LinkBudget& lb, double factor) {
    for (auto& c : lb.cells) {
        for (auto& v : c.snr) v *= factor;
    }
}

double relative(double achieved, double limit) { return std::abs(achieved - limit) / std::abs(limit); }

}  // namespace

LimitReport convergence_probe(LimitId id, const LinkBudget& base, const std::vector<double>& schedule) {
    if (schedule.empty()) throw std::invalid_argument("empty driver schedule");
    LimitReport r;
    r.id = id;

    switch (id) {
        case LimitId::lemma1_hd_high_snr: {
            r.assertable = true;
            r.tolerance = 1e-3;
            r.limit_value = base.num_antennas;
            for (double x : schedule) {
                LinkBudget lb = base;
                set_own_effective_snr(lb, x);
                r.probes.emplace_back(x, sinr_hd_full_res(lb));
            }
            break;
        }
        case LimitId::lemma2_identity: {
            // Identity rather than a limit: the worst relative error over the schedule.
            r.assertable = true;
            r.tolerance = 1e-12;
            double worst = 0.0;
            for (double x : schedule) {
                LinkBudget lb = base;
                lb.alpha_u = 1.0;
                lb.alpha_d = 1.0;
                scale_all_snrs(lb, x / schedule.front());
                const double closed = sqinr_hardening(lb).sqinr;
                const double limit = lemma2_full_resolution_sqinr(lb);
                worst = std::max(worst, relative(closed, limit));
                r.probes.emplace_back(x, closed);
                r.limit_value = limit;
            }
            r.relative_gap = worst;
            r.converged = worst <= r.tolerance;
            return r;
        }
        case LimitId::lemma3_perfect_csi:
        case LimitId::lemma3_estimated_csi: {
            r.assertable = id == LimitId::lemma3_perfect_csi;
            r.tolerance = 5e-3;
            r.limit_value = lemma3_high_snr_sqinr(base.num_antennas, base.alpha_u);
            for (double x : schedule) {
                LinkBudget lb = base;
                set_own_effective_snr(lb, x);
                const double v = id == LimitId::lemma3_perfect_csi ? sqinr_perfect_csi(lb) : sqinr_hardening(lb).sqinr;
                r.probes.emplace_back(x, v);
            }
            break;
        }
        case LimitId::lemma4_power_scaling: {
            // Budget SNRs and INR are read as the values at total energy E; at N_a
            // antennas every power is E / N_a.
            r.assertable = false;
            r.limit_value = std::exp2(lemma4_power_scaling_se(base.own(), base.alpha_u, base.alpha_d,
                                                              base.num_dl_users, base.inr)) - 1.0;
            for (double x : schedule) {
                LinkBudget lb = base;
                lb.num_antennas = static_cast<int>(x);
                scale_all_snrs(lb, 1.0 / x);
                lb.inr = base.inr / x;
                r.probes.emplace_back(x, sqinr_hardening(lb).sqinr);
            }
            break;
        }
        case LimitId::lemma5_antenna_ratio: {
            r.assertable = true;
            r.tolerance = 1e-3;
            const auto limit = lemma5_antenna_ratio_sqinr(base);
            if (!limit) throw std::invalid_argument("antenna-ratio limit is unbounded for this budget");
            r.limit_value = *limit;
            for (double x : schedule) {
                LinkBudget lb = base;
                lb.num_antennas = static_cast<int>(x);
                r.probes.emplace_back(x, sqinr_hardening(lb).sqinr);
            }
            break;
        }
    }

    r.relative_gap = relative(r.probes.back().second, r.limit_value);
    r.converged = r.assertable && r.relative_gap <= r.tolerance;
    return r;
}

namespace {

// Three cells, four uplink users each; cell 1 reuses cell 0's pilots.
LinkBudget reference_budget() {
    LinkBudget lb;
    lb.user = 0;
    lb.cells = {
        CellLinks{{20.0, 8.0, 3.5, 12.0}, {1.0, 1.0, 1.0, 1.0}, false},
        CellLinks{{0.6, 0.2, 0.9, 0.4}, {1.0, 1.0, 1.0, 1.0}, true},
        CellLinks{{0.3, 0.7, 0.1, 0.5}, {1.0, 1.0, 1.0, 1.0}, false},
    };
    lb.num_antennas = 100;
    lb.num_dl_users = 10;
    lb.inr = 1e-3;
    lb.si_channel_gain = 10.0;
    lb.uplink_to_si_power = 0.2 / 40.0;
    lb.alpha_u = 1.0 - rho_for_bits(3);
    lb.alpha_d = lb.alpha_u;
    return lb;
}

// Single cell, single user, no self-interference, 3-bit ADC. N_a = 1000 keeps the
// (N_a + 1) / N_a finite-array offset of the perfect-CSI form at 0.1%.
LinkBudget single_user_budget() {
    LinkBudget lb;
    lb.cells = {CellLinks{{10.0}, {1.0}, false}};
    lb.num_antennas = 1000;
    lb.num_dl_users = 10;
    lb.inr = 0.0;
    lb.alpha_u = 1.0 - rho_for_bits(3);
    lb.alpha_d = lb.alpha_u;
    return lb;
}

}  // namespace

std::vector<LimitReport> run_all_probes() {
    const auto schedule = default_schedule();
    const LinkBudget ref = reference_budget();
    const LinkBudget single = single_user_budget();
    return {
        convergence_probe(LimitId::lemma1_hd_high_snr, ref, schedule),
        convergence_probe(LimitId::lemma2_identity, ref, {1.0, 1e1, 1e2, 1e3, 1e4}),
        convergence_probe(LimitId::lemma3_perfect_csi, single, schedule),
        convergence_probe(LimitId::lemma3_estimated_csi, single, schedule),
        convergence_probe(LimitId::lemma4_power_scaling, ref, schedule),
        convergence_probe(LimitId::lemma5_antenna_ratio, ref, schedule),
    };
}

void write_limit_reports_csv(const std::vector<LimitReport>& reports, std::ostream& out) {
    out << "limit_id,limit_value,last_probe,gap,asserted,converged\n";
    for (const auto& r : reports) {
        out << to_string(r.id) << ',' << r.limit_value << ',' << r.probes.back().second << ',' << r.relative_gap
            << ',' << (r.assertable ? "yes" : "report-only") << ',' << (r.converged ? "yes" : "no") << '\n';
    }
}

}  // namespace fdmimo
