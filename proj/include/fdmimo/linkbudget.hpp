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

#ifndef FDMIMO_LINKBUDGET_HPP
#define FDMIMO_LINKBUDGET_HPP

#include <iosfwd>
#include <vector>

#include "fdmimo/geometry.hpp"
#include "fdmimo/params.hpp"

namespace fdmimo {

// Uplink users of one cell as seen at the BS of interest.
struct CellLinks {
    std::vector<double> snr;          // SNR^u_{l,k}, linear, antenna gain included
    std::vector<double> power_ratio;  // P_{l,k}/P_u
    bool pilot_reuse = false;         // cell belongs to the pilot-reuse set C

    double effective(std::size_t k) const { return power_ratio[k] * snr[k]; }
};

// Scalar inputs of the hardening SQINR for one uplink user k of cell 0.
//
// cells[0] is the cell of interest. "Effective" SNRs carry the power control
// ratio, i.e. (P_{l,k}/P_u) * SNR^u_{l,k}.
struct LinkBudget {
    int user = 0;
    std::vector<CellLinks> cells;
    int num_antennas = 1;
    int num_dl_users = 1;       // K^d of the serving BS
    double inr = 0.0;           // P_SI * mu_SI^2 / sigma^2
    double si_channel_gain = 0.0;     // mu_SI^2 (linear); only the oracle needs it
    double uplink_to_si_power = 0.0;  // P_u / P_SI; only the oracle needs it
    double alpha_u = 1.0;
    double alpha_d = 1.0;

    // (P_k/P_u) SNR^u_k
    double own() const { return cells.at(0).effective(static_cast<std::size_t>(user)); }
    // Effective SNRs of user k in every pilot-reuse cell.
    std::vector<double> pilot_set() const;
    double pilot_sum() const;
    double pilot_square_sum() const;
    // 1 + own + sum over C: the channel-estimate normalizer.
    double estimate_normalizer() const { return 1.0 + own() + pilot_sum(); }
    // Sum over every cell and every uplink user (own user included).
    double total_sum() const;
    // Cell-0 users other than k.
    double own_cell_others_sum() const;
    // Every user of every cell l != 0.
    double other_cells_sum() const;
    int num_cells() const { return static_cast<int>(cells.size()); }

    // Throws std::invalid_argument on negative SNRs, ratios outside (0,1], bad alphas or N_a < 1.
    void validate() const;
};

// G = L_ref * chi / r^eta with L_ref and chi linear. Throws std::domain_error
// for r below `min_distance`.
double large_scale_gain(double r, double chi, double lref, double eta, double min_distance = 0.0);
double large_scale_gain(double r, double chi, const SystemParams& params);

// G * P_u * G_ant / sigma^2 (linear).
double snr_of_link(double gain, const SystemParams& params);

// One budget per uplink user of cell 0, built from the drop's geometry and shadowing.
std::vector<LinkBudget> assemble_link_budgets(const NetworkDrop& drop, const SystemParams& params);

// Budget with every scalar taken from params except the SNR table.
LinkBudget make_budget_scalars(const SystemParams& params);

// CSV: user,own_snr_db,pilot_sum,pilot_square_sum,total_sum,inr_db,alpha_u,alpha_d
void write_budgets_csv(const std::vector<LinkBudget>& budgets, std::ostream& out);

}  // namespace fdmimo

#endif  // FDMIMO_LINKBUDGET_HPP
