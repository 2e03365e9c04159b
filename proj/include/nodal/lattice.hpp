#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nodal/measure.hpp"

namespace nodal {

/// All lattice points on the circle of squared radius n.
struct LatticeSolutionSet {
    long long n = 0;
    std::vector<std::array<long long, 2>> points;  // sorted lexicographically

    long r2() const { return static_cast<long>(points.size()); }
};

/// Complete enumeration of {(a,b) in Z^2 : a^2 + b^2 = n} by scanning
/// a in [0, floor(sqrt(n))] and expanding sign/swap symmetries.
LatticeSolutionSet sum_two_squares_reps(long long n);

/// Number of representations of n as an ordered signed sum of two squares.
long r2(long long n);

/// Whether n is a sum of two integer squares.
bool in_S(long long n);

/// Angular measure mu_n: atoms lambda/sqrt(n), equal weights 1/r2(n).
/// Throws ConfigError("empty eigenspace") when n is not a sum of two squares.
SpectralMeasure spectral_measure_mu_n(long long n);

struct SearchHit {
    long long n = 0;
    long r2 = 0;
    double distance = 0;
};

/// The top_k values n <= n_max with smallest weak_star_distance(mu_n, target)
/// over harmonics up to max_harmonic; ties broken by smaller n.
std::vector<SearchHit> search_by_angular_target(const SpectralMeasure& target,
                                                long long n_max, int max_harmonic,
                                                int top_k);

/// CSV with header "n,r2,distance", one row per hit, in list order.
void write_search_csv(std::ostream& out, const std::vector<SearchHit>& hits);

}  // namespace nodal
