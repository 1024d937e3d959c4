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

#ifndef FDMIMO_MONTECARLO_HPP
#define FDMIMO_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "fdmimo/linkbudget.hpp"
#include "fdmimo/params.hpp"

namespace fdmimo {

enum class Duplex { full, half };

enum class Aggregation {
    cell_mean,  // one sample per drop: mean linear SQINR over cell-0 uplink users
    per_user,   // one sample per user per drop
};

struct EngineOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
    Duplex duplex = Duplex::full;
    Aggregation aggregation = Aggregation::cell_mean;
    double hd_prelog = 0.5;  // spectral-efficiency prelog of the half-duplex baseline
};

struct CdfPoint {
    double value_db = 0.0;
    double probability = 0.0;
};

// Right-continuous empirical CDF of linear samples, reported in dB: one point per
// sample, sorted ascending, probability i/n for the i-th (1-based) point.
std::vector<CdfPoint> empirical_cdf(const std::vector<double>& linear_samples);

// Empirical quantile (inverse CDF, lower) in dB of linear samples, p in (0, 1].
double quantile_db(const std::vector<double>& linear_samples, double p);

struct SqinrReport {
    std::vector<double> samples;  // linear SQINR per drop (cell mean) or per user
    std::vector<CdfPoint> cdf;
    double se_gross = 0.0;      // bits/s/Hz, mean over samples of prelog * log2(1 + sqinr)
    double se_effective = 0.0;  // overhead factor * se_gross
    SystemParams config;
    std::uint64_t seed = 0;
    int num_drops = 0;
    Duplex duplex = Duplex::full;
    Aggregation aggregation = Aggregation::cell_mean;
};

// (1 - beta N_p / N_c) * gross. Throws std::invalid_argument if the overhead is >= 1.
double effective_se(double gross_se, double beta, int pilots, int coherence_tile);

// Evaluates `evaluate` on the link budgets of every drop in parallel; drop d uses
// seed derive_seed(master, drop, d), and results are returned in drop order.
// The callback must be thread-safe.
using DropEvaluator = std::function<std::vector<double>(const std::vector<LinkBudget>&)>;
std::vector<std::vector<double>> evaluate_drops(const SystemParams& params, int num_drops, std::uint64_t seed,
                                                unsigned threads, const DropEvaluator& evaluate);

// Per-user SQINR values of one drop under the given duplex mode.
std::vector<double> drop_sqinrs(const std::vector<LinkBudget>& budgets, Duplex duplex);

SqinrReport run_cdf_experiment(const SystemParams& params, int num_drops, std::uint64_t seed,
                               const EngineOptions& options = {});

// Half-duplex baseline: INR forced to 0, quantization kept, prelog applied to SE.
SqinrReport run_hd_baseline(const SystemParams& params, int num_drops, std::uint64_t seed,
                            EngineOptions options = {});

struct BitsPoint {
    Resolution resolution;
    SqinrReport report;
};

// Same drops for every resolution (ADC and DAC set together).
std::vector<BitsPoint> sweep_bits(const SystemParams& params, const std::vector<Resolution>& bits, int num_drops,
                                  std::uint64_t seed, const EngineOptions& options = {});

// cdf.csv: sqinr_db,cdf
void write_cdf_csv(const SqinrReport& report, std::ostream& out);
// sweep.csv: bits,se_gross,se_effective,p5_db,p50_db,p95_db
void write_sweep_csv(const std::vector<BitsPoint>& points, std::ostream& out);

}  // namespace fdmimo

#endif  // FDMIMO_MONTECARLO_HPP
