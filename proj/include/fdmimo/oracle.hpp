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

// Sample-based small-scale-fading simulator of the BS of interest. It draws
// explicit Rayleigh channels, the self-interference matrix, downlink precoders,
// AQNM noise and data symbols, applies the matched filter of user k and splits
// the filter output into its labeled terms, so every closed form can be checked
// against sample averages.
//
// All powers are normalized by the thermal noise power sigma^2, so an uplink
// user enters with amplitude sqrt((P/P_u) SNR) and the SI loop with amplitude
// sqrt(P_SI / sigma^2) = sqrt(INR / mu_SI^2).

#ifndef FDMIMO_ORACLE_HPP
#define FDMIMO_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdmimo/linkbudget.hpp"
#include "fdmimo/random.hpp"

namespace fdmimo {

using ComplexVector = std::vector<cdouble>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    cdouble& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    cdouble operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::vector<cdouble>& data() noexcept { return data_; }
    const std::vector<cdouble>& data() const noexcept { return data_; }

    ComplexVector operator*(const ComplexVector& x) const;
    // Row vector x^H A.
    ComplexVector left_multiply_conj(const ComplexVector& x) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> data_;
};

// x^H y
cdouble inner(const ComplexVector& x, const ComplexVector& y);
double squared_norm(const ComplexVector& x);

// Which power multiplies the SI channel inside the AQNM covariance Q.
enum class QuantizerSiPower {
    uplink_power,  // Q = P_u H_SI (...) H_SI^*, as written in the AQNM model
    si_power,      // Q = P_SI H_SI (...) H_SI^*
};

struct OracleOptions {
    QuantizerSiPower q_power = QuantizerSiPower::uplink_power;
    unsigned threads = 0;
    int batch_size = 250;  // realizations per seeded batch
};

// One small-scale realization seen at the BS of interest.
struct ChannelRealization {
    std::vector<std::vector<ComplexVector>> h;  // [cell][user], entries CN(0, 1)
    ComplexMatrix h_si;                         // entries CN(0, mu_SI^2); empty without SI
    std::vector<ComplexVector> precoders;       // K^d conjugate-matched precoders, entries CN(0, 1)
    ComplexVector estimation_noise;             // v'_k, entries CN(0, 1 / S)
    ComplexVector thermal_noise;                // v, entries CN(0, 1)

    const ComplexVector& h_own(int user) const { return h.at(0).at(static_cast<std::size_t>(user)); }
};

ChannelRealization draw_realization(const LinkBudget& lb, Rng& rng);

// Matched filter sqrt(S/D) (h_k + sum_C sqrt(s_l/S) h_{l,k} + v'_k); E||w||^2 = N_a.
// Throws std::invalid_argument when the own SNR is zero.
ComplexVector build_matched_filter(const ChannelRealization& realization, const LinkBudget& lb);

struct AqnmSample {
    ComplexVector q_u;
    ComplexVector q_d;
};

// Draws q_d ~ CN(0, a_d (1 - a_d) diag(F F^*)) and
// q_u ~ CN(0, a_u (1 - a_u) diag(sum P H H^* + Q + sigma^2 I)).
AqnmSample sample_aqnm(const ChannelRealization& realization, const LinkBudget& lb, Rng& rng,
                       QuantizerSiPower q_power = QuantizerSiPower::uplink_power);

// Complex filter-output terms of one realization with sampled data symbols.
// The desired and estimation-error terms need the ensemble mean of w^H h_k, so
// the raw correlation and symbol are kept instead.
struct TermSample {
    cdouble own_gain;    // w^H h_k
    cdouble own_symbol;  // s_k
    cdouble intra_cell;
    cdouble pilot_contam;
    cdouble inter_cell;
    cdouble si_fd;
    cdouble aqnm_aggregate;
    cdouble noise;
};

TermSample assemble_received_terms(const ChannelRealization& realization, const AqnmSample& aqnm,
                                   const LinkBudget& lb, Rng& rng);

struct TermPowers {
    double desired = 0.0;
    double est_error = 0.0;
    double intra_cell = 0.0;
    double pilot_contam = 0.0;
    double inter_cell = 0.0;
    double si_fd = 0.0;
    double aqnm_aggregate = 0.0;
    double noise = 0.0;

    double interference() const {
        return est_error + intra_cell + pilot_contam + inter_cell + si_fd + aqnm_aggregate + noise;
    }
    double sqinr() const { return desired / interference(); }
};

// Runs `num_realizations` independent realizations (seeded per batch, so the
// result does not depend on the thread count).
std::vector<TermSample> simulate_terms(const LinkBudget& lb, int num_realizations, std::uint64_t seed,
                                       const OracleOptions& options = {});

// Sample mean powers; E[w^H h_k] is the sample mean of own_gain.
TermPowers term_powers(const std::vector<TermSample>& samples, const LinkBudget& lb);

// Closed-form expectation of each term, grouped so that the non-desired terms
// sum to the hardening SQINR denominator.
TermPowers predicted_term_powers(const LinkBudget& lb);

struct EmpiricalSqinr {
    double sqinr = 0.0;
    double standard_error = 0.0;  // batch means over 20 batches
    TermPowers powers;
    int num_realizations = 0;
};

// Throws std::invalid_argument for fewer than 1000 realizations.
EmpiricalSqinr empirical_sqinr(const LinkBudget& lb, int num_realizations, std::uint64_t seed,
                               const OracleOptions& options = {});

struct FilterMoments {
    double norm2 = 0.0;          // E||w||^2
    double norm4 = 0.0;          // E||w||^4
    double independent = 0.0;    // E|w^H h|^2, h independent of w
    double pilot_shared = 0.0;   // E|w^H h_{l,k}|^2 for the first pilot-reuse cell (0 if none)
    int draws = 0;
};

FilterMoments filter_moments(const LinkBudget& lb, int draws, std::uint64_t seed, unsigned threads = 0);

}  // namespace fdmimo

#endif  // FDMIMO_ORACLE_HPP
