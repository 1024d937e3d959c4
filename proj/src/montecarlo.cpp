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

#include "fdmimo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "fdmimo/geometry.hpp"
#include "fdmimo/parallel.hpp"
#include "fdmimo/random.hpp"
#include "fdmimo/sqinr.hpp"

namespace fdmimo {

std::vector<CdfPoint> empirical_cdf(const std::vector<double>& linear_samples) {
    std::vector<double> sorted = linear_samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<CdfPoint> cdf;
    cdf.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cdf.push_back({linear_to_db(sorted[i]), static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double quantile_db(const std::vector<double>& linear_samples, double p) {
    if (linear_samples.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1]");
    std::vector<double> sorted = linear_samples;
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    idx = std::clamp<std::size_t>(idx, 1, n);
    return linear_to_db(sorted[idx - 1]);
}

double effective_se(double gross_se, double beta, int pilots, int coherence_tile) {
    if (coherence_tile <= 0) throw std::invalid_argument("coherence tile must be positive");
    const double overhead = beta * pilots / coherence_tile;
    if (overhead >= 1.0) throw std::invalid_argument("pilot overhead beta*N_p/N_c must be < 1");
    return (1.0 - overhead) * gross_se;
}

std::vector<std::vector<double>> evaluate_drops(const SystemParams& params, int num_drops, std::uint64_t seed,
                                                unsigned threads, const DropEvaluator& evaluate) {
    if (num_drops < 1) throw std::invalid_argument("num_drops must be >= 1");
    params.validate();
    auto lattice = std::make_shared<const CellLattice>(build_lattice(params));

    std::vector<std::vector<double>> results(static_cast<std::size_t>(num_drops));
    parallel_for(num_drops, threads, [&](int d) {
        const auto drop_seed = derive_seed(seed, Stream::drop, static_cast<std::uint64_t>(d));
        const NetworkDrop drop = drop_users(lattice, params, drop_seed);
        results[static_cast<std::size_t>(d)] = evaluate(assemble_link_budgets(drop, params));
    });
    return results;
}

std::vector<double> drop_sqinrs(const std::vector<LinkBudget>& budgets, Duplex duplex) {
    std::vector<double> out;
    out.reserve(budgets.size());
    for (const auto& lb : budgets) {
        if (duplex == Duplex::half) {
            LinkBudget hd = lb;
            hd.inr = 0.0;
            out.push_back(sqinr_hardening(hd).sqinr);
        } else {
            out.push_back(sqinr_hardening(lb).sqinr);
        }
    }
    return out;
}

namespace {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

SqinrReport aggregate(const SystemParams& params, int num_drops, std::uint64_t seed, const EngineOptions& options,
                      const std::vector<std::vector<double>>& per_drop) {
    SqinrReport r;
    r.config = params;
    r.seed = seed;
    r.num_drops = num_drops;
    r.duplex = options.duplex;
    r.aggregation = options.aggregation;
    for (const auto& users : per_drop) {
        if (options.aggregation == Aggregation::cell_mean) {
            r.samples.push_back(mean(users));
        } else {
            r.samples.insert(r.samples.end(), users.begin(), users.end());
        }
    }
    const double prelog = options.duplex == Duplex::half ? options.hd_prelog : 1.0;
    double se = 0.0;
    for (double x : r.samples) se += prelog * spectral_efficiency(x);
    r.se_gross = se / static_cast<double>(r.samples.size());
    r.se_effective = effective_se(r.se_gross, params.overhead_fraction, params.pilots_per_cell, params.coherence_tile);
    r.cdf = empirical_cdf(r.samples);
    return r;
}

}  // namespace

SqinrReport run_cdf_experiment(const SystemParams& params, int num_drops, std::uint64_t seed,
                               const EngineOptions& options) {
    const Duplex duplex = options.duplex;
    const auto per_drop = evaluate_drops(params, num_drops, seed, options.threads,
                                         [duplex](const std::vector<LinkBudget>& b) { return drop_sqinrs(b, duplex); });
    return aggregate(params, num_drops, seed, options, per_drop);
}

SqinrReport run_hd_baseline(const SystemParams& params, int num_drops, std::uint64_t seed, EngineOptions options) {
    options.duplex = Duplex::half;
    return run_cdf_experiment(params, num_drops, seed, options);
}

std::vector<BitsPoint> sweep_bits(const SystemParams& params, const std::vector<Resolution>& bits, int num_drops,
                                  std::uint64_t seed, const EngineOptions& options) {
    if (bits.empty()) throw std::invalid_argument("bits list must not be empty");
    std::vector<double> alphas;
    for (const auto& b : bits) alphas.push_back(Quantizer::from_resolution(b).alpha);

    const Duplex duplex = options.duplex;
    // One drop, every resolution: results are laid out [resolution][user].
    const auto per_drop = evaluate_drops(params, num_drops, seed, options.threads,
                                         [&alphas, duplex](const std::vector<LinkBudget>& budgets) {
                                             std::vector<double> out;
                                             for (double a : alphas) {
                                                 auto copy = budgets;
                                                 for (auto& lb : copy) lb.alpha_u = lb.alpha_d = a;
                                                 const auto v = drop_sqinrs(copy, duplex);
                                                 out.insert(out.end(), v.begin(), v.end());
                                             }
                                             return out;
                                         });

    const auto users = static_cast<std::size_t>(params.users_ul_per_cell);
    std::vector<BitsPoint> points;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        std::vector<std::vector<double>> slice;
        slice.reserve(per_drop.size());
        for (const auto& d : per_drop) {
            slice.emplace_back(d.begin() + static_cast<std::ptrdiff_t>(i * users),
                               d.begin() + static_cast<std::ptrdiff_t>((i + 1) * users));
        }
        SystemParams p = params;
        p.adc_bits = p.dac_bits = bits[i];
        points.push_back({bits[i], aggregate(p, num_drops, seed, options, slice)});
    }
    return points;
}

void write_cdf_csv(const SqinrReport& report, std::ostream& out) {
    out << "sqinr_db,cdf\n" << std::setprecision(12);
    for (const auto& p : report.cdf) out << p.value_db << ',' << p.probability << '\n';
}

void write_sweep_csv(const std::vector<BitsPoint>& points, std::ostream& out) {
    out << "bits,se_gross,se_effective,p5_db,p50_db,p95_db\n" << std::setprecision(12);
    for (const auto& pt : points) {
        const auto& s = pt.report.samples;
        out << pt.resolution.to_string() << ',' << pt.report.se_gross << ',' << pt.report.se_effective << ','
            << quantile_db(s, 0.05) << ',' << quantile_db(s, 0.50) << ',' << quantile_db(s, 0.95) << '\n';
    }
}

}  // namespace fdmimo
