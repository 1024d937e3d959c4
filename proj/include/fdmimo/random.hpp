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

#ifndef FDMIMO_RANDOM_HPP
#define FDMIMO_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace fdmimo {

using Rng = std::mt19937_64;
using cdouble = std::complex<double>;

// Independent stream identifiers mixed into derived seeds.
enum class Stream : std::uint64_t { drop = 1, oracle = 2, moments = 3 };

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for work item `index` of `stream`; depends only on its arguments.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index) {
    return mix64(mix64(master ^ mix64(static_cast<std::uint64_t>(stream))) + index);
}

// Circularly-symmetric complex Gaussian sampler CN(0, variance).
class ComplexNormal {
public:
    explicit ComplexNormal(double variance = 1.0) : scale_(std::sqrt(variance / 2.0)) {}

    // A zero variance still consumes two draws and returns exactly 0.
    cdouble operator()(Rng& rng) {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {scale_ * re, scale_ * im};
    }

    void fill(Rng& rng, std::vector<cdouble>& out) {
        for (auto& x : out) x = (*this)(rng);
    }

private:
    double scale_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fdmimo

#endif  // FDMIMO_RANDOM_HPP
