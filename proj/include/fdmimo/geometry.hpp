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

#ifndef FDMIMO_GEOMETRY_HPP
#define FDMIMO_GEOMETRY_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "fdmimo/params.hpp"

namespace fdmimo {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

double norm(Point p);

// Hexagonal cluster of cell sites around cell 0 at the origin.
//
// Sites are indexed ring by ring (0, then the 6 first-tier cells, then the 12
// second-tier cells, ...). With `tiers` rings the cluster holds 3t^2 + 3t + 1
// sites; the cluster tiles the plane by translation with axial shift (t+1, t),
// which defines the 6 wraparound images.
class CellLattice {
public:
    CellLattice(double inter_site_distance, bool wraparound, int tiers = 2, int reuse_factor = 3);

    int num_cells() const noexcept { return static_cast<int>(sites_.size()); }
    Point site(int cell) const { return sites_.at(static_cast<std::size_t>(cell)); }
    const std::vector<Point>& sites() const noexcept { return sites_; }
    int reuse_color(int cell) const { return colors_.at(static_cast<std::size_t>(cell)); }
    const std::vector<int>& reuse_colors() const noexcept { return colors_; }
    bool wraparound() const noexcept { return wraparound_; }
    double inter_site_distance() const noexcept { return isd_; }
    int tiers() const noexcept { return tiers_; }
    int reuse_factor() const noexcept { return reuse_factor_; }

    // Translation vectors of the cluster images (the identity shift first).
    // Only the identity when wraparound is off.
    const std::vector<Point>& image_shifts() const noexcept { return shifts_; }

    // True if the two cells share a hexagon edge (not considering wraparound).
    bool adjacent(int a, int b) const;

    // Whether p lies in the hexagon of `cell` (boundary included).
    bool in_hexagon(int cell, Point p) const;

    static constexpr int cell_of_interest = 0;

private:
    double isd_;
    bool wraparound_;
    int tiers_;
    int reuse_factor_;
    std::vector<Point> sites_;
    std::vector<int> colors_;
    std::vector<Point> shifts_;
};

CellLattice build_lattice(double inter_site_distance, bool wraparound, int tiers = 2, int reuse_factor = 3);
CellLattice build_lattice(const SystemParams& params);

// Euclidean distance; with wraparound the minimum over the 7 cluster images of b.
double distance(const CellLattice& lattice, Point a, Point b);

// Cells other than cell 0 that reuse cell 0's pilot color.
std::vector<int> pilot_reuse_set(const CellLattice& lattice);

// Index of the largest gain (first index on ties).
int associate(std::span<const double> gains);

struct UserEquipment {
    Point position;
    int geometric_cell = 0;          // hexagon the position was drawn in
    int serving_cell = 0;            // BS with the highest large-scale gain
    std::vector<double> shadowing_db;  // per BS
};

struct NetworkDrop {
    std::shared_ptr<const CellLattice> lattice;
    // [serving cell][user index]; exactly K^u (K^d) users per cell.
    std::vector<std::vector<UserEquipment>> ul_users;
    std::vector<std::vector<UserEquipment>> dl_users;
    std::uint64_t seed = 0;
};

// Drops users uniformly over the cluster (uniform hexagon, then uniform point in
// it by rejection), redrawing positions closer than the minimum distance to any
// BS, draws per-link log-normal shadowing, and associates each UE to its
// strongest BS until every cell holds its quota. Deterministic in `seed`.
NetworkDrop drop_users(std::shared_ptr<const CellLattice> lattice, const SystemParams& params, std::uint64_t seed);

// CSV: direction,cell_id,ue_id,x_m,y_m,geometric_cell,serving_bs,shadowing_db
// (shadowing toward the serving BS).
void write_drop_csv(const NetworkDrop& drop, std::ostream& out);

}  // namespace fdmimo

#endif  // FDMIMO_GEOMETRY_HPP
