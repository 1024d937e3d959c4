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

// Closed-form uplink SQINR of a matched-filter massive-MIMO receiver under
// channel hardening, with pilot contamination, full-duplex self-interference
// and AQNM-modeled ADC/DAC quantization.
//
// Notation used below, for user k of cell 0:
//   S    = (P_k/P_u) SNR_k                       own effective SNR
//   s_l  = (P_{l,k}/P_u) SNR_{l,k}, l in C       pilot-sharing users
//   D    = 1 + S + sum_C s_l                     estimate normalizer
//   T    = sum over all cells and users          (includes S)
//   N    = N_a, Kd = K^d

#ifndef FDMIMO_SQINR_HPP
#define FDMIMO_SQINR_HPP

#include <iosfwd>
#include <vector>

#include "fdmimo/linkbudget.hpp"

namespace fdmimo {

// The five denominator groups of the hardening SQINR.
struct DenominatorTerms {
    double noise_and_interf = 0.0;        // a_u^2 N (1 + T)
    double pilot_contam = 0.0;            // a_u^2 N^2 sum_C s_l^2 / D
    double si_dac_distortion = 0.0;       // a_u^2 a_d (1 - a_d) Kd N^2 INR
    double si_residual = 0.0;             // a_u^2 a_d^2 Kd N^2 INR
    double adc_distortion_bracket = 0.0;  // N a_u (1 - a_u) [2S + ... + a_d N INR + 1]

    double sum() const {
        return noise_and_interf + pilot_contam + si_dac_distortion + si_residual + adc_distortion_bracket;
    }
};

struct SqinrBreakdown {
    double numerator = 0.0;  // a_u^2 S^2 N^2 / D
    DenominatorTerms den;
    double sqinr = 0.0;      // numerator / den.sum()
};

// Hardening SQINR (estimated CSI).
SqinrBreakdown sqinr_hardening(const LinkBudget& lb);

// Perfect-CSI form: S^2 (N^2 + N) / ((1 + S) den'), den' being the hardening
// denominator with the pilot-contamination group removed.
double sqinr_perfect_csi(const LinkBudget& lb);

// Half-duplex full-resolution SINR; quantizers and INR are ignored.
double sinr_hd_full_res(const LinkBudget& lb);

// N S^2 / ((1 + S)(1 + T)): the half-duplex SINR with pilot contamination dropped.
double sinr_no_contamination(const LinkBudget& lb);

// log2(1 + E[x]/E[y]) as an approximation of E[log2(1 + x/y)] for independent x, y.
double corollary2_ratio_se(double x_mean, double y_mean);

// log2(1 + sqinr), bits/s/Hz.
double spectral_efficiency(double sqinr);

// CSV of the breakdown for each budget:
// user,numerator,noise_and_interf,pilot_contam,si_dac_distortion,si_residual,adc_distortion_bracket,sqinr
void write_breakdown_csv(const std::vector<LinkBudget>& budgets, std::ostream& out);

}  // namespace fdmimo

#endif  // FDMIMO_SQINR_HPP
