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

#include "fdmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "fdmimo/random.hpp"

namespace fdmimo {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr long kMaxDropAttempts = 1'000'000;

// Axial (i, j) -> Cartesian with basis (D, 0) and (D/2, D*sqrt(3)/2).
Point axial_to_point(int i, int j, double d) { return {d * (i + 0.5 * j), d * (kSqrt3 / 2.0) * j}; }

int hex_ring(int i, int j) { return (std::abs(i) + std::abs(j) + std::abs(i + j)) / 2; }

Point rotate(Point p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace

double norm(Point p) { return std::hypot(p.x, p.y); }

CellLattice::CellLattice(double inter_site_distance, bool wraparound, int tiers, int reuse_factor)
    : isd_(inter_site_distance), wraparound_(wraparound), tiers_(tiers), reuse_factor_(reuse_factor) {
    if (!(inter_site_distance > 0.0)) throw std::invalid_argument("inter-site distance must be positive");
    if (tiers < 0) throw std::invalid_argument("number of tiers must be >= 0");
    if (reuse_factor != 1 && reuse_factor != 3) throw std::invalid_argument("pilot reuse factor must be 1 or 3");

    struct Site {
        int ring;
        double angle;
        int i;
        int j;
    };
    std::vector<Site> cells;
    for (int i = -tiers; i <= tiers; ++i) {
        for (int j = -tiers; j <= tiers; ++j) {
            const int ring = hex_ring(i, j);
            if (ring > tiers) continue;
            const Point p = axial_to_point(i, j, 1.0);
            double angle = ring == 0 ? 0.0 : std::atan2(p.y, p.x);
            if (angle < -1e-12) angle += 2.0 * std::numbers::pi;
            cells.push_back({ring, angle, i, j});
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Site& a, const Site& b) { return std::tie(a.ring, a.angle) < std::tie(b.ring, b.angle); });

    for (const auto& c : cells) {
        sites_.push_back(axial_to_point(c.i, c.j, isd_));
        // (i - j) mod 3 is a proper 3-coloring: every neighbor offset has i - j = +-1 or +-2.
        colors_.push_back(reuse_factor_ == 1 ? 0 : ((c.i - c.j) % 3 + 3) % 3);
    }

    shifts_.push_back({0.0, 0.0});
    if (wraparound_) {
        const Point base = axial_to_point(tiers + 1, tiers, isd_);
        for (int r = 0; r < 6; ++r) shifts_.push_back(rotate(base, r * std::numbers::pi / 3.0));
    }
}

bool CellLattice::adjacent(int a, int b) const {
    if (a == b) return false;
    return std::abs(norm(site(a) - site(b)) - isd_) < 1e-6 * isd_;
}

bool CellLattice::in_hexagon(int cell, Point p) const {
    const Point d = p - site(cell);
    const double half = isd_ / 2.0 * (1.0 + 1e-12);
    for (int r = 0; r < 3; ++r) {
        const double angle = r * std::numbers::pi / 3.0;
        if (std::abs(d.x * std::cos(angle) + d.y * std::sin(angle)) > half) return false;
    }
    return true;
}

CellLattice build_lattice(double inter_site_distance, bool wraparound, int tiers, int reuse_factor) {
    return CellLattice(inter_site_distance, wraparound, tiers, reuse_factor);
}

CellLattice build_lattice(const SystemParams& params) {
    return CellLattice(params.inter_site_distance_m, params.wraparound, params.num_tiers, params.pilot_reuse_factor);
}

double distance(const CellLattice& lattice, Point a, Point b) {
    const Point d = b - a;
    double best = norm(d);
    for (std::size_t s = 1; s < lattice.image_shifts().size(); ++s) {
        best = std::min(best, norm(d + lattice.image_shifts()[s]));
    }
    return best;
}

std::vector<int> pilot_reuse_set(const CellLattice& lattice) {
    std::vector<int> cells;
    const int own = lattice.reuse_color(CellLattice::cell_of_interest);
    for (int c = 0; c < lattice.num_cells(); ++c) {
        if (c != CellLattice::cell_of_interest && lattice.reuse_color(c) == own) cells.push_back(c);
    }
    return cells;
}

int associate(std::span<const double> gains) {
    if (gains.empty()) throw std::invalid_argument("cannot associate with an empty BS set");
    return static_cast<int>(std::max_element(gains.begin(), gains.end()) - gains.begin());
}

NetworkDrop drop_users(std::shared_ptr<const CellLattice> lattice, const SystemParams& params, std::uint64_t seed) {
    if (!lattice) throw std::invalid_argument("drop_users needs a lattice");
    const CellLattice& lat = *lattice;
    const int n = lat.num_cells();
    const double isd = lat.inter_site_distance();
    const double circumradius = isd / kSqrt3;

    Rng rng(seed);
    std::uniform_int_distribution<int> pick_cell(0, n - 1);
    std::uniform_real_distribution<double> ux(-isd / 2.0, isd / 2.0);
    std::uniform_real_distribution<double> uy(-circumradius, circumradius);
    std::normal_distribution<double> standard_normal(0.0, 1.0);

    long attempts = 0;
    auto fill = [&](int quota) {
        std::vector<std::vector<UserEquipment>> users(static_cast<std::size_t>(n));
        int remaining = quota * n;
        std::vector<double> gains_db(static_cast<std::size_t>(n));
        while (remaining > 0) {
            if (++attempts > kMaxDropAttempts) {
                throw std::runtime_error("user drop did not converge within the attempt cap");
            }
            UserEquipment ue;
            ue.geometric_cell = pick_cell(rng);
            Point offset;
            do {
                offset = {ux(rng), uy(rng)};
            } while (!lat.in_hexagon(0, offset));
            ue.position = lat.site(ue.geometric_cell) + offset;

            bool too_close = false;
            std::vector<double> dist(static_cast<std::size_t>(n));
            for (int b = 0; b < n; ++b) {
                dist[static_cast<std::size_t>(b)] = distance(lat, lat.site(b), ue.position);
                too_close = too_close || dist[static_cast<std::size_t>(b)] < params.min_ue_bs_distance_m;
            }
            if (too_close) continue;

            ue.shadowing_db.resize(static_cast<std::size_t>(n));
            for (int b = 0; b < n; ++b) {
                const auto bi = static_cast<std::size_t>(b);
                ue.shadowing_db[bi] = params.shadowing_sigma_db * standard_normal(rng);
                // L_ref is common to all links and drops out of the argmax.
                gains_db[bi] = ue.shadowing_db[bi] - 10.0 * params.pathloss_exponent * std::log10(dist[bi]);
            }
            ue.serving_cell = associate(gains_db);
            auto& bucket = users[static_cast<std::size_t>(ue.serving_cell)];
            if (static_cast<int>(bucket.size()) < quota) {
                bucket.push_back(std::move(ue));
                --remaining;
            }
        }
        return users;
    };

    NetworkDrop drop;
    drop.lattice = std::move(lattice);
    drop.seed = seed;
    drop.ul_users = fill(params.users_ul_per_cell);
    drop.dl_users = fill(params.users_dl_per_cell);
    return drop;
}

void write_drop_csv(const NetworkDrop& drop, std::ostream& out) {
    out << "direction,cell_id,ue_id,x_m,y_m,geometric_cell,serving_bs,shadowing_db\n";
    auto emit = [&](const char* dir, const std::vector<std::vector<UserEquipment>>& users) {
        for (std::size_t c = 0; c < users.size(); ++c) {
            for (std::size_t k = 0; k < users[c].size(); ++k) {
                const auto& ue = users[c][k];
                out << dir << ',' << c << ',' << k << ',' << ue.position.x << ',' << ue.position.y << ','
                    << ue.geometric_cell << ',' << ue.serving_cell << ','
                    << ue.shadowing_db[static_cast<std::size_t>(ue.serving_cell)] << '\n';
            }
        }
    };
    emit("ul", drop.ul_users);
    emit("dl", drop.dl_users);
}

}  // namespace fdmimo
