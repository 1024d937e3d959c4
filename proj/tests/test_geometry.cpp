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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "fdmimo/geometry.hpp"

using namespace fdmimo;

namespace {

int count_at(const std::vector<Point>& sites, double r) {
    return static_cast<int>(
        std::count_if(sites.begin(), sites.end(), [r](Point p) { return std::abs(norm(p) - r) < 1e-6; }));
}

std::shared_ptr<const CellLattice> default_lattice() {
    return std::make_shared<const CellLattice>(build_lattice(SystemParams{}));
}

}  // namespace

TEST_CASE("two-tier lattice site rings") {
    const auto lat = build_lattice(500.0, false);
    REQUIRE(lat.num_cells() == 19);
    CHECK(lat.site(0) == Point{0.0, 0.0});
    CHECK(count_at(lat.sites(), 500.0) == 6);
    CHECK(count_at(lat.sites(), 500.0 * std::sqrt(3.0)) == 6);
    CHECK(count_at(lat.sites(), 1000.0) == 6);
}

TEST_CASE("reuse-3 coloring is proper") {
    for (double isd : {100.0, 500.0, 1732.0}) {
        const auto lat = build_lattice(isd, false);
        for (int a = 0; a < lat.num_cells(); ++a) {
            for (int b = a + 1; b < lat.num_cells(); ++b) {
                if (lat.adjacent(a, b)) CHECK(lat.reuse_color(a) != lat.reuse_color(b));
            }
        }
        int first_tier_neighbors = 0;
        for (int c = 1; c < lat.num_cells(); ++c) first_tier_neighbors += lat.adjacent(0, c);
        CHECK(first_tier_neighbors == 6);
    }
}

TEST_CASE("pilot reuse set sizes") {
    const auto lat = build_lattice(500.0, true);
    const auto c = pilot_reuse_set(lat);
    CHECK(c.size() == 6);
    // Brute force: cells sharing cell 0's color.
    int same = 0;
    for (int i = 1; i < lat.num_cells(); ++i) same += lat.reuse_color(i) == lat.reuse_color(0);
    CHECK(same == 6);
    for (int i : c) CHECK(norm(lat.site(i)) == doctest::Approx(500.0 * std::sqrt(3.0)));

    CHECK(pilot_reuse_set(build_lattice(500.0, true, 2, 1)).size() == 18);
    // One tier: every outer cell touches cell 0, so a proper 3-coloring leaves none on its color.
    CHECK(pilot_reuse_set(build_lattice(500.0, false, 1, 3)).empty());
}

TEST_CASE("distance") {
    const auto flat = build_lattice(500.0, false);
    CHECK(distance(flat, {1.0, 2.0}, {1.0, 2.0}) == 0.0);
    CHECK(distance(flat, {0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));

    const auto wrap = build_lattice(500.0, true);
    for (int a = 0; a < wrap.num_cells(); ++a) {
        int neighbors = 0;
        for (int b = 0; b < wrap.num_cells(); ++b) {
            const double d = distance(wrap, wrap.site(a), wrap.site(b));
            CHECK(d == doctest::Approx(distance(wrap, wrap.site(b), wrap.site(a))));
            if (b != a) CHECK(d >= 500.0 - 1e-6);
            neighbors += b != a && std::abs(d - 500.0) < 1e-6;
        }
        // With wraparound every site, edge sites included, sees a full first tier.
        CHECK(neighbors == 6);
    }
}

TEST_CASE("hexagon membership") {
    const auto lat = build_lattice(500.0, false);
    CHECK(lat.in_hexagon(0, {0.0, 0.0}));
    CHECK(lat.in_hexagon(0, {249.0, 0.0}));
    CHECK_FALSE(lat.in_hexagon(0, {260.0, 0.0}));
    for (int c = 0; c < lat.num_cells(); ++c) CHECK(lat.in_hexagon(c, lat.site(c)));
}

TEST_CASE("association picks the strongest gain") {
    const std::vector<double> g{1.0, 3.0, 2.0, 3.0};
    CHECK(associate(g) == 1);
    // Scale invariance.
    std::vector<double> scaled;
    for (double x : g) scaled.push_back(x * 1e-9);
    CHECK(associate(scaled) == 1);
    CHECK(associate(std::vector<double>{5.0}) == 0);
}

TEST_CASE("drop quotas, distances and determinism") {
    SystemParams p;
    const auto lat = default_lattice();
    const auto a = drop_users(lat, p, 42);
    const auto b = drop_users(lat, p, 42);
    REQUIRE(a.ul_users.size() == 19);
    REQUIRE(a.dl_users.size() == 19);
    for (int c = 0; c < 19; ++c) {
        CHECK(a.ul_users[c].size() == 10);
        CHECK(a.dl_users[c].size() == 10);
        for (const auto& ue : a.ul_users[c]) {
            CHECK(ue.serving_cell == c);
            CHECK(ue.shadowing_db.size() == 19);
            for (int s = 0; s < 19; ++s) CHECK(distance(*lat, lat->site(s), ue.position) >= p.min_ue_bs_distance_m);
        }
    }
    std::ostringstream sa, sb;
    write_drop_csv(a, sa);
    write_drop_csv(b, sb);
    CHECK(sa.str() == sb.str());
    std::ostringstream sc;
    write_drop_csv(drop_users(lat, p, 43), sc);
    CHECK(sa.str() != sc.str());
}

TEST_CASE("without shadowing users are served by their own hexagon") {
    SystemParams p;
    p.shadowing_sigma_db = 0.0;
    const auto lat = default_lattice();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto d = drop_users(lat, p, seed);
        for (const auto& cell : d.ul_users) {
            for (const auto& ue : cell) {
                CHECK(ue.serving_cell == ue.geometric_cell);
                CHECK(ue.shadowing_db[0] == 0.0);
            }
        }
    }
}

TEST_CASE("shadowing moves some users out of their geometric cell") {
    SystemParams p;
    const auto lat = default_lattice();
    int moved = 0;
    int total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto d = drop_users(lat, p, seed);
        for (const auto& cell : d.ul_users) {
            for (const auto& ue : cell) {
                moved += ue.serving_cell != ue.geometric_cell;
                ++total;
            }
        }
    }
    CHECK(moved > 0);
    CHECK(moved < total);
}

TEST_CASE("user positions are uniform inside the hexagon") {
    SystemParams p;
    p.shadowing_sigma_db = 0.0;
    const auto lat = default_lattice();

    // Radial distribution inside a hexagon: the fraction within the inscribed
    // circle of radius D/2 is pi (D/2)^2 / area = pi / (2 sqrt(3)).
    int inside = 0;
    int cell0 = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto drop = drop_users(lat, p, seed);
        for (const auto& ue : drop.ul_users[0]) {
            ++cell0;
            inside += norm(ue.position) <= 250.0;
        }
    }
    const double frac = static_cast<double>(inside) / cell0;
    const double target = std::numbers::pi / (2.0 * std::sqrt(3.0));
    CHECK(std::abs(frac - target) < 4.0 * std::sqrt(target * (1 - target) / cell0));
}
