#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nodal/field.hpp"

namespace nodal {

/// Grid values with |v| below this are treated as +kZeroNudge; a
/// deterministic sign choice for the probability-zero event of an exact
/// grid zero.
inline constexpr double kZeroNudge = 1e-13;

/// Topological census of one realization.
struct ComponentCount {
    long compact_zero_components = 0;   // zero components away from the region boundary
    long boundary_zero_components = 0;  // clipped by the counting circle (planar only)
    long positive_domains = 0;
    long negative_domains = 0;
    long wrapping_zero_components = 0;  // torus: components winding a handle
    DomainKind region = DomainKind::planar_window;
    double region_radius = 0;           // planar counting disk radius
};

/// Count zero-set components and nodal domains of a sampled field.
///
/// Positive and negative domains are labeled by union-find on same-sign grid
/// nodes; zero components are connected components of sign-interface edges
/// joined through the marching-squares configuration of each cell. Ambiguous
/// (saddle) cells are resolved by the sign of the exact trigonometric sum at
/// the cell center. Planar samples are clipped to the inscribed disk
/// B(0, R); components meeting the circle are reported separately. Torus
/// samples use wrap-around adjacency and no boundary.
ComponentCount count_components(const FieldSample& field);

/// Planar counting with an arbitrary evaluator for saddle centers; lets the
/// test harness inject non-Gaussian grids. Nodes at (i*h, j*h) for
/// i, j in [-half_extent, half_extent]; counts clip to the disk of radius R.
ComponentCount count_planar_custom(const std::vector<double>& values, int half_extent,
                                   double h, double R,
                                   const std::function<double(double, double)>& eval);

/// Torus counting with an arbitrary center evaluator (coords in [0,1)).
ComponentCount count_torus_custom(const std::vector<double>& values, int N,
                                  const std::function<double(double, double)>& eval);

/// Window-mode counts for a raw sign grid (no clipping): total zero
/// components, window-boundary-touching zero components, and domain counts.
/// center_sign(cx, cy) must return the sign (+1/-1) used to resolve saddle
/// cells.
struct SignGridCounts {
    long zero_components = 0;
    long boundary_zero_components = 0;
    long positive_domains = 0;
    long negative_domains = 0;
};
SignGridCounts count_sign_grid(const std::vector<int>& signs, int nx, int ny,
                               const std::function<int(int, int)>& center_sign);

struct FlipCount {
    long flips = 0;
    long degenerate_candidates = 0;  // rejected by the transversality check
    std::vector<std::array<double, 2>> points;
};

/// Count transversal simultaneous zeros of (f, d f/dx1) inside the counting
/// disk. Candidate cells are those where both f and its first partial change
/// sign; candidates are refined by bisection along the f = 0 crossing and
/// accepted when |f|, |df/dx1| < 1e-9 with Jacobian determinant above 1e-9.
/// Requires a planar sample carrying gradient grids.
FlipCount count_flips(const FieldSample& field);

}  // namespace nodal
