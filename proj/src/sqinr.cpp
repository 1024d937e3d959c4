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

#include "fdmimo/sqinr.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fdmimo {

namespace {

DenominatorTerms hardening_denominator(const LinkBudget& lb) {
    const double n = lb.num_antennas;
    const double au = lb.alpha_u;
    const double ad = lb.alpha_d;
    const double kd = lb.num_dl_users;
    const double s = lb.own();

    DenominatorTerms d;
    d.noise_and_interf = au * au * n * (1.0 + lb.total_sum());
    d.pilot_contam = au * au * n * n * lb.pilot_square_sum() / lb.estimate_normalizer();
    d.si_dac_distortion = au * au * ad * (1.0 - ad) * kd * n * n * lb.inr;
    d.si_residual = au * au * ad * ad * kd * n * n * lb.inr;
    // The own user enters the bracket twice (factor 2), the others once.
    const double bracket = 2.0 * s + lb.own_cell_others_sum() + lb.other_cells_sum() + ad * n * lb.inr + 1.0;
    d.adc_distortion_bracket = n * au * (1.0 - au) * bracket;
    return d;
}

}  // namespace

SqinrBreakdown sqinr_hardening(const LinkBudget& lb) {
    lb.validate();
    const double n = lb.num_antennas;
    const double s = lb.own();

    SqinrBreakdown out;
    out.numerator = lb.alpha_u * lb.alpha_u * s * s * n * n / lb.estimate_normalizer();
    out.den = hardening_denominator(lb);
    out.sqinr = out.numerator / out.den.sum();
    return out;
}

double sqinr_perfect_csi(const LinkBudget& lb) {
    lb.validate();
    const double n = lb.num_antennas;
    const double s = lb.own();
    DenominatorTerms d = hardening_denominator(lb);
    d.pilot_contam = 0.0;
    return s * s * (n * n + n) / ((1.0 + s) * d.sum());
}

double sinr_hd_full_res(const LinkBudget& lb) {
    lb.validate();
    const double n = lb.num_antennas;
    const double s = lb.own();
    const double weight = n / lb.estimate_normalizer();
    return weight * s * s / (1.0 + lb.total_sum() + weight * lb.pilot_square_sum());
}

double sinr_no_contamination(const LinkBudget& lb) {
    lb.validate();
    const double s = lb.own();
    return lb.num_antennas * s * s / ((1.0 + s) * (1.0 + lb.total_sum()));
}

double corollary2_ratio_se(double x_mean, double y_mean) {
    if (!(y_mean > 0.0)) throw std::invalid_argument("E[y] must be positive");
    if (x_mean < 0.0) throw std::invalid_argument("E[x] must be nonnegative");
    return std::log2(1.0 + x_mean / y_mean);
}

double spectral_efficiency(double sqinr) { return std::log2(1.0 + sqinr); }

void write_breakdown_csv(const std::vector<LinkBudget>& budgets, std::ostream& out) {
    out << "user,numerator,noise_and_interf,pilot_contam,si_dac_distortion,si_residual,adc_distortion_bracket,sqinr\n";
    for (const auto& lb : budgets) {
        const auto b = sqinr_hardening(lb);
        out << lb.user << ',' << b.numerator << ',' << b.den.noise_and_interf << ',' << b.den.pilot_contam << ','
            << b.den.si_dac_distortion << ',' << b.den.si_residual << ',' << b.den.adc_distortion_bracket << ','
            << b.sqinr << '\n';
    }
}

}  // namespace fdmimo
