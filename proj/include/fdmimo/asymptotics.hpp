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

#ifndef FDMIMO_ASYMPTOTICS_HPP
#define FDMIMO_ASYMPTOTICS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdmimo/linkbudget.hpp"

namespace fdmimo {

// Full-resolution limit (alpha_u = alpha_d = 1): the SQINR inside the log and
// the spectral efficiency in bits/s/Hz.
double lemma2_full_resolution_sqinr(const LinkBudget& lb);
double lemma2_full_resolution_se(const LinkBudget& lb);

// High-SNR ceiling N_a / (alpha_u (2 - alpha_u)) and its log2(1 + .).
double lemma3_high_snr_sqinr(int num_antennas, double alpha_u);
double lemma3_high_snr_se(int num_antennas, double alpha_u);

// Power scaling with P = E/N_a:
// log2(1 + a_u (E-SNR)^2 / (1 + a_d (a_u Kd + 1 - a_u) INR)).
double lemma4_power_scaling_se(double e_ratio_snr, double alpha_u, double alpha_d, int num_dl_users, double inr);

// Limit SQINR as N_a/K grows. nullopt when the limiting denominator vanishes
// (no pilot contamination and no self-interference): the limit is unbounded.
std::optional<double> lemma5_antenna_ratio_sqinr(const LinkBudget& lb);
std::optional<double> lemma5_antenna_ratio_se(const LinkBudget& lb);

enum class LimitId {
    lemma1_hd_high_snr,      // half-duplex SINR -> N_a as own SNR grows
    lemma2_identity,         // hardening SQINR at alpha = 1 == full-resolution form
    lemma3_perfect_csi,      // perfect-CSI SQINR -> N_a / (a_u (2 - a_u))
    lemma3_estimated_csi,    // same limit against the estimated-CSI form (report only)
    lemma4_power_scaling,    // report only
    lemma5_antenna_ratio,    // hardening SQINR as N_a grows
};

std::string to_string(LimitId id);

struct LimitReport {
    LimitId id{};
    double limit_value = 0.0;  // SQINR (linear)
    std::vector<std::pair<double, double>> probes;  // (driver value, achieved SQINR)
    double relative_gap = 0.0;  // |last probe - limit| / limit
    bool assertable = false;
    double tolerance = 0.0;     // pass threshold on relative_gap when assertable
    bool converged = false;     // relative_gap <= tolerance (always false when not assertable)
};

// Driver schedule 10^2, 10^3, ..., 10^8.
std::vector<double> default_schedule();

// Evaluates the closed form driven toward `id`'s limit, starting from `base`:
// the own SNR is driven for lemma 1 and 3, N_a for lemma 4 and 5; lemma 2 is
// checked at every schedule point by scaling all SNRs.
LimitReport convergence_probe(LimitId id, const LinkBudget& base, const std::vector<double>& schedule);

// Runs every probe on representative budgets.
std::vector<LimitReport> run_all_probes();

// CSV: limit_id,limit_value,last_probe,gap,asserted,converged
void write_limit_reports_csv(const std::vector<LimitReport>& reports, std::ostream& out);

}  // namespace fdmimo

#endif  // FDMIMO_ASYMPTOTICS_HPP
