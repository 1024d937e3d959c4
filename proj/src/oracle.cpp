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

#include "fdmimo/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fdmimo/parallel.hpp"
#include "fdmimo/sqinr.hpp"

namespace fdmimo {

ComplexVector ComplexMatrix::operator*(const ComplexVector& x) const {
    ComplexVector y(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        cdouble acc{};
        const cdouble* row = &data_[static_cast<std::size_t>(r) * cols_];
        for (int c = 0; c < cols_; ++c) acc += row[c] * x[static_cast<std::size_t>(c)];
        y[static_cast<std::size_t>(r)] = acc;
    }
    return y;
}

ComplexVector ComplexMatrix::left_multiply_conj(const ComplexVector& x) const {
    ComplexVector y(static_cast<std::size_t>(cols_));
    for (int r = 0; r < rows_; ++r) {
        const cdouble xr = std::conj(x[static_cast<std::size_t>(r)]);
        const cdouble* row = &data_[static_cast<std::size_t>(r) * cols_];
        for (int c = 0; c < cols_; ++c) y[static_cast<std::size_t>(c)] += xr * row[c];
    }
    return y;
}

cdouble inner(const ComplexVector& x, const ComplexVector& y) {
    cdouble acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double squared_norm(const ComplexVector& x) {
    double acc = 0.0;
    for (const auto& v : x) acc += std::norm(v);
    return acc;
}

namespace {

// Plain (unconjugated) product u^T f.
cdouble dot(const ComplexVector& u, const ComplexVector& f) {
    cdouble acc{};
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * f[i];
    return acc;
}

bool has_self_interference(const LinkBudget& lb) { return lb.inr > 0.0 && lb.si_channel_gain > 0.0; }

// sqrt(P_SI / sigma^2)
double si_amplitude(const LinkBudget& lb) {
    return has_self_interference(lb) ? std::sqrt(lb.inr / lb.si_channel_gain) : 0.0;
}

ComplexVector draw_vector(Rng& rng, int n, double variance) {
    ComplexVector v(static_cast<std::size_t>(n));
    ComplexNormal(variance).fill(rng, v);
    return v;
}

}  // namespace

ChannelRealization draw_realization(const LinkBudget& lb, Rng& rng) {
    const int n = lb.num_antennas;
    ChannelRealization r;
    r.h.resize(lb.cells.size());
    for (std::size_t l = 0; l < lb.cells.size(); ++l) {
        for (std::size_t k = 0; k < lb.cells[l].snr.size(); ++k) r.h[l].push_back(draw_vector(rng, n, 1.0));
    }
    if (has_self_interference(lb)) {
        r.h_si = ComplexMatrix(n, n);
        ComplexNormal(lb.si_channel_gain).fill(rng, r.h_si.data());
        for (int k = 0; k < lb.num_dl_users; ++k) r.precoders.push_back(draw_vector(rng, n, 1.0));
    }
    const double s = lb.own();
    r.estimation_noise = draw_vector(rng, n, s > 0.0 ? 1.0 / s : 0.0);
    r.thermal_noise = draw_vector(rng, n, 1.0);
    return r;
}

ComplexVector build_matched_filter(const ChannelRealization& realization, const LinkBudget& lb) {
    const double s = lb.own();
    if (!(s > 0.0)) throw std::invalid_argument("matched filter is undefined for a zero own SNR");
    const auto k = static_cast<std::size_t>(lb.user);
    const double scale = std::sqrt(s / lb.estimate_normalizer());

    ComplexVector w = realization.h_own(lb.user);
    for (std::size_t l = 1; l < lb.cells.size(); ++l) {
        if (!lb.cells[l].pilot_reuse) continue;
        const double weight = std::sqrt(lb.cells[l].effective(k) / s);
        const auto& h = realization.h[l][k];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += weight * h[i];
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = scale * (w[i] + realization.estimation_noise[i]);
    return w;
}

AqnmSample sample_aqnm(const ChannelRealization& realization, const LinkBudget& lb, Rng& rng,
                       QuantizerSiPower q_power) {
    const auto n = static_cast<std::size_t>(lb.num_antennas);
    const double au = lb.alpha_u;
    const double ad = lb.alpha_d;

    // diag(F F^*)
    std::vector<double> ff(n, 0.0);
    for (const auto& f : realization.precoders) {
        for (std::size_t i = 0; i < n; ++i) ff[i] += std::norm(f[i]);
    }
    std::vector<double> var_qd(n);
    for (std::size_t i = 0; i < n; ++i) var_qd[i] = ad * (1.0 - ad) * ff[i];

    // diag(sum_l sum_k P H H^*) / sigma^2
    std::vector<double> received(n, 1.0);
    for (std::size_t l = 0; l < lb.cells.size(); ++l) {
        for (std::size_t k = 0; k < lb.cells[l].snr.size(); ++k) {
            const double rho = lb.cells[l].effective(k);
            const auto& h = realization.h[l][k];
            for (std::size_t i = 0; i < n; ++i) received[i] += rho * std::norm(h[i]);
        }
    }
    // diag(Q) / sigma^2
    if (!realization.h_si.empty()) {
        const double p_si = lb.inr / lb.si_channel_gain;
        const double p = q_power == QuantizerSiPower::uplink_power ? lb.uplink_to_si_power * p_si : p_si;
        std::vector<double> q(n, 0.0);
        for (const auto& f : realization.precoders) {
            const ComplexVector hf = realization.h_si * f;
            for (std::size_t i = 0; i < n; ++i) q[i] += ad * ad * std::norm(hf[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                q[i] += std::norm(realization.h_si(static_cast<int>(i), static_cast<int>(j))) * var_qd[j];
            }
            received[i] += p * q[i];
        }
    }

    AqnmSample out{ComplexVector(n), ComplexVector(n)};
    for (std::size_t i = 0; i < n; ++i) out.q_d[i] = ComplexNormal(var_qd[i])(rng);
    for (std::size_t i = 0; i < n; ++i) out.q_u[i] = ComplexNormal(au * (1.0 - au) * received[i])(rng);
    return out;
}

TermSample assemble_received_terms(const ChannelRealization& realization, const AqnmSample& aqnm,
                                   const LinkBudget& lb, Rng& rng) {
    const ComplexVector w = build_matched_filter(realization, lb);
    const double au = lb.alpha_u;
    const auto user = static_cast<std::size_t>(lb.user);
    ComplexNormal symbol;

    TermSample t{};
    for (std::size_t l = 0; l < lb.cells.size(); ++l) {
        for (std::size_t k = 0; k < lb.cells[l].snr.size(); ++k) {
            const cdouble s = symbol(rng);
            const cdouble g = inner(w, realization.h[l][k]);
            if (l == 0 && k == user) {
                t.own_gain = g;
                t.own_symbol = s;
                continue;
            }
            const cdouble term = au * std::sqrt(lb.cells[l].effective(k)) * g * s;
            if (l == 0) {
                t.intra_cell += term;
            } else if (lb.cells[l].pilot_reuse && k == user) {
                t.pilot_contam += term;
            } else {
                t.inter_cell += term;
            }
        }
    }

    if (!realization.h_si.empty()) {
        const double amp = si_amplitude(lb);
        const ComplexVector u = realization.h_si.left_multiply_conj(w);  // w^H H_SI
        for (const auto& f : realization.precoders) {
            t.si_fd += au * lb.alpha_d * amp * dot(u, f) * symbol(rng);
        }
        t.aqnm_aggregate += au * amp * dot(u, aqnm.q_d);
    }
    t.aqnm_aggregate += inner(w, aqnm.q_u);
    t.noise = au * inner(w, realization.thermal_noise);
    return t;
}

std::vector<TermSample> simulate_terms(const LinkBudget& lb, int num_realizations, std::uint64_t seed,
                                       const OracleOptions& options) {
    lb.validate();
    if (num_realizations < 1) throw std::invalid_argument("need at least one realization");
    const int batch = std::max(1, options.batch_size);
    const int num_batches = (num_realizations + batch - 1) / batch;
    std::vector<TermSample> samples(static_cast<std::size_t>(num_realizations));
    parallel_for(num_batches, options.threads, [&](int b) {
        Rng rng(derive_seed(seed, Stream::oracle, static_cast<std::uint64_t>(b)));
        const int end = std::min(num_realizations, (b + 1) * batch);
        for (int i = b * batch; i < end; ++i) {
            const ChannelRealization real = draw_realization(lb, rng);
            const AqnmSample q = sample_aqnm(real, lb, rng, options.q_power);
            samples[static_cast<std::size_t>(i)] = assemble_received_terms(real, q, lb, rng);
        }
    });
    return samples;
}

namespace {

cdouble mean_own_gain(const std::vector<TermSample>& samples) {
    cdouble acc{};
    for (const auto& t : samples) acc += t.own_gain;
    return acc / static_cast<double>(samples.size());
}

TermPowers powers_over(const std::vector<TermSample>& samples, std::size_t begin, std::size_t end, cdouble mean_gain,
                       const LinkBudget& lb) {
    const double amp = lb.alpha_u * std::sqrt(lb.own());
    TermPowers p;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& t = samples[i];
        p.desired += std::norm(amp * mean_gain * t.own_symbol);
        p.est_error += std::norm(amp * (t.own_gain - mean_gain) * t.own_symbol);
        p.intra_cell += std::norm(t.intra_cell);
        p.pilot_contam += std::norm(t.pilot_contam);
        p.inter_cell += std::norm(t.inter_cell);
        p.si_fd += std::norm(t.si_fd);
        p.aqnm_aggregate += std::norm(t.aqnm_aggregate);
        p.noise += std::norm(t.noise);
    }
    const double n = static_cast<double>(end - begin);
    for (double* v : {&p.desired, &p.est_error, &p.intra_cell, &p.pilot_contam, &p.inter_cell, &p.si_fd,
                      &p.aqnm_aggregate, &p.noise}) {
        *v /= n;
    }
    return p;
}

}  // namespace

TermPowers term_powers(const std::vector<TermSample>& samples, const LinkBudget& lb) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    return powers_over(samples, 0, samples.size(), mean_own_gain(samples), lb);
}

TermPowers predicted_term_powers(const LinkBudget& lb) {
    const SqinrBreakdown b = sqinr_hardening(lb);
    const double n = lb.num_antennas;
    const double a2 = lb.alpha_u * lb.alpha_u;
    TermPowers p;
    p.desired = b.numerator;
    p.est_error = a2 * n * lb.own();
    p.intra_cell = a2 * n * lb.own_cell_others_sum();
    p.pilot_contam = a2 * n * lb.pilot_sum() + b.den.pilot_contam;
    p.inter_cell = a2 * n * (lb.other_cells_sum() - lb.pilot_sum());
    p.si_fd = b.den.si_residual;
    p.aqnm_aggregate = b.den.si_dac_distortion + b.den.adc_distortion_bracket;
    p.noise = a2 * n;
    return p;
}

EmpiricalSqinr empirical_sqinr(const LinkBudget& lb, int num_realizations, std::uint64_t seed,
                               const OracleOptions& options) {
    if (num_realizations < 1000) throw std::invalid_argument("empirical SQINR needs at least 1000 realizations");
    const auto samples = simulate_terms(lb, num_realizations, seed, options);
    const cdouble g = mean_own_gain(samples);

    EmpiricalSqinr out;
    out.num_realizations = num_realizations;
    out.powers = powers_over(samples, 0, samples.size(), g, lb);
    out.sqinr = out.powers.sqinr();

    constexpr int kBatches = 20;
    std::vector<double> batch_values;
    for (int b = 0; b < kBatches; ++b) {
        const auto begin = samples.size() * static_cast<std::size_t>(b) / kBatches;
        const auto end = samples.size() * static_cast<std::size_t>(b + 1) / kBatches;
        batch_values.push_back(powers_over(samples, begin, end, g, lb).sqinr());
    }
    const double mean = std::accumulate(batch_values.begin(), batch_values.end(), 0.0) / kBatches;
    double var = 0.0;
    for (double v : batch_values) var += (v - mean) * (v - mean);
    var /= (kBatches - 1);
    out.standard_error = std::sqrt(var / kBatches);
    return out;
}

FilterMoments filter_moments(const LinkBudget& lb, int draws, std::uint64_t seed, unsigned threads) {
    lb.validate();
    if (draws < 1) throw std::invalid_argument("need at least one draw");
    const int n = lb.num_antennas;
    const auto k = static_cast<std::size_t>(lb.user);
    const double s = lb.own();
    int first_pilot = -1;
    for (std::size_t l = 1; l < lb.cells.size() && first_pilot < 0; ++l) {
        if (lb.cells[l].pilot_reuse) first_pilot = static_cast<int>(l);
    }

    constexpr int kBatch = 1000;
    const int num_batches = (draws + kBatch - 1) / kBatch;
    std::vector<FilterMoments> partial(static_cast<std::size_t>(num_batches));
    parallel_for(num_batches, threads, [&](int b) {
        Rng rng(derive_seed(seed, Stream::moments, static_cast<std::uint64_t>(b)));
        auto& acc = partial[static_cast<std::size_t>(b)];
        const int end = std::min(draws, (b + 1) * kBatch);
        // Only the channels the filter touches are drawn.
        ChannelRealization r;
        r.h.resize(lb.cells.size());
        for (std::size_t l = 0; l < lb.cells.size(); ++l) r.h[l].resize(lb.cells[l].snr.size());
        for (int i = b * kBatch; i < end; ++i) {
            r.h[0][k] = draw_vector(rng, n, 1.0);
            for (std::size_t l = 1; l < lb.cells.size(); ++l) {
                if (lb.cells[l].pilot_reuse) r.h[l][k] = draw_vector(rng, n, 1.0);
            }
            r.estimation_noise = draw_vector(rng, n, 1.0 / s);
            const ComplexVector independent = draw_vector(rng, n, 1.0);

            const ComplexVector w = build_matched_filter(r, lb);
            const double w2 = squared_norm(w);
            acc.norm2 += w2;
            acc.norm4 += w2 * w2;
            acc.independent += std::norm(inner(w, independent));
            if (first_pilot >= 0) acc.pilot_shared += std::norm(inner(w, r.h[static_cast<std::size_t>(first_pilot)][k]));
            ++acc.draws;
        }
    });

    FilterMoments m;
    for (const auto& p : partial) {
        m.norm2 += p.norm2;
        m.norm4 += p.norm4;
        m.independent += p.independent;
        m.pilot_shared += p.pilot_shared;
        m.draws += p.draws;
    }
    m.norm2 /= m.draws;
    m.norm4 /= m.draws;
    m.independent /= m.draws;
    m.pilot_shared /= m.draws;
    return m;
}

}  // namespace fdmimo
