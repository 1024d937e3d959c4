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

#include "fdmimo/linkbudget.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fdmimo {

std::vector<double> LinkBudget::pilot_set() const {
    std::vector<double> out;
    const auto k = static_cast<std::size_t>(user);
    for (std::size_t l = 1; l < cells.size(); ++l) {
        if (cells[l].pilot_reuse) out.push_back(cells[l].effective(k));
    }
    return out;
}

double LinkBudget::pilot_sum() const {
    double s = 0.0;
    for (double v : pilot_set()) s += v;
    return s;
}

double LinkBudget::pilot_square_sum() const {
    double s = 0.0;
    for (double v : pilot_set()) s += v * v;
    return s;
}

double LinkBudget::total_sum() const {
    double s = 0.0;
    for (const auto& c : cells) {
        for (std::size_t k = 0; k < c.snr.size(); ++k) s += c.effective(k);
    }
    return s;
}

double LinkBudget::own_cell_others_sum() const {
    double s = 0.0;
    const auto& c = cells.at(0);
    for (std::size_t k = 0; k < c.snr.size(); ++k) {
        if (k != static_cast<std::size_t>(user)) s += c.effective(k);
    }
    return s;
}

double LinkBudget::other_cells_sum() const {
    double s = 0.0;
    for (std::size_t l = 1; l < cells.size(); ++l) {
        for (std::size_t k = 0; k < cells[l].snr.size(); ++k) s += cells[l].effective(k);
    }
    return s;
}

void LinkBudget::validate() const {
    if (cells.empty()) throw std::invalid_argument("link budget has no cells");
    if (user < 0 || static_cast<std::size_t>(user) >= cells[0].snr.size()) {
        throw std::invalid_argument("user index out of range");
    }
    for (std::size_t l = 0; l < cells.size(); ++l) {
        const auto& c = cells[l];
        if (c.snr.size() != c.power_ratio.size()) throw std::invalid_argument("SNR/power-ratio size mismatch");
        if (c.pilot_reuse && c.snr.size() <= static_cast<std::size_t>(user)) {
            throw std::invalid_argument("pilot-reuse cell lacks the pilot-sharing user");
        }
        for (std::size_t k = 0; k < c.snr.size(); ++k) {
            if (!(c.snr[k] >= 0.0)) throw std::invalid_argument("negative SNR in link budget");
            if (!(c.power_ratio[k] > 0.0 && c.power_ratio[k] <= 1.0)) {
                throw std::invalid_argument("power ratio outside (0, 1]");
            }
        }
    }
    if (num_antennas < 1) throw std::invalid_argument("N_a must be >= 1");
    if (num_dl_users < 0) throw std::invalid_argument("K^d must be >= 0");
    if (!(inr >= 0.0)) throw std::invalid_argument("negative INR");
    if (!(alpha_u > 0.0 && alpha_u <= 1.0) || !(alpha_d > 0.0 && alpha_d <= 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1]");
    }
}

double large_scale_gain(double r, double chi, double lref, double eta, double min_distance) {
    if (r < min_distance || !(r > 0.0)) {
        throw std::domain_error("link distance " + std::to_string(r) + " m is below the minimum distance");
    }
    if (!(chi > 0.0)) throw std::domain_error("shadowing coefficient must be positive");
    return lref * chi / std::pow(r, eta);
}

double large_scale_gain(double r, double chi, const SystemParams& params) {
    return large_scale_gain(r, chi, db_to_linear(params.pathloss_intercept_db), params.pathloss_exponent,
                            params.min_ue_bs_distance_m);
}

double snr_of_link(double gain, const SystemParams& params) {
    if (gain < 0.0) throw std::domain_error("negative large-scale gain");
    return gain * params.uplink_power_w * db_to_linear(params.bs_antenna_gain_db) / noise_power_w(params);
}

LinkBudget make_budget_scalars(const SystemParams& params) {
    LinkBudget lb;
    lb.num_antennas = params.num_antennas;
    lb.num_dl_users = params.users_dl_per_cell;
    lb.inr = inr(params);
    lb.si_channel_gain = db_to_linear(params.si_channel_gain_db);
    lb.uplink_to_si_power = params.uplink_power_w / params.si_power_w;
    lb.alpha_u = params.uplink_quantizer().alpha;
    lb.alpha_d = params.downlink_quantizer().alpha;
    return lb;
}

std::vector<LinkBudget> assemble_link_budgets(const NetworkDrop& drop, const SystemParams& params) {
    const CellLattice& lat = *drop.lattice;
    const Point bs = lat.site(CellLattice::cell_of_interest);
    const std::vector<int> reuse = pilot_reuse_set(lat);

    LinkBudget base = make_budget_scalars(params);
    base.cells.resize(drop.ul_users.size());
    for (std::size_t l = 0; l < drop.ul_users.size(); ++l) {
        auto& cell = base.cells[l];
        for (const int c : reuse) cell.pilot_reuse = cell.pilot_reuse || c == static_cast<int>(l);
        const auto& users = drop.ul_users[l];
        for (std::size_t k = 0; k < users.size(); ++k) {
            const double r = distance(lat, bs, users[k].position);
            const double chi = db_to_linear(users[k].shadowing_db[CellLattice::cell_of_interest]);
            cell.snr.push_back(snr_of_link(large_scale_gain(r, chi, params), params));
            cell.power_ratio.push_back(params.power_ratio(static_cast<int>(k)));
        }
    }

    std::vector<LinkBudget> budgets;
    const auto num_users = drop.ul_users.at(0).size();
    for (std::size_t k = 0; k < num_users; ++k) {
        budgets.push_back(base);
        budgets.back().user = static_cast<int>(k);
    }
    return budgets;
}

void write_budgets_csv(const std::vector<LinkBudget>& budgets, std::ostream& out) {
    out << "user,own_snr_db,pilot_sum,pilot_square_sum,total_sum,inr_db,alpha_u,alpha_d\n";
    for (const auto& lb : budgets) {
        out << lb.user << ',' << linear_to_db(lb.own()) << ',' << lb.pilot_sum() << ',' << lb.pilot_square_sum()
            << ',' << lb.total_sum() << ',' << linear_to_db(lb.inr) << ',' << lb.alpha_u << ',' << lb.alpha_d << '\n';
    }
}

}  // namespace fdmimo
