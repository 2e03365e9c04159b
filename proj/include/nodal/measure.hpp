#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "nodal/common.hpp"

namespace nodal {

/// One atom of a finite atomic spectral measure: a point of the closed unit
/// disk and a positive weight.
struct Atom {
    double x = 0;
    double y = 0;
    double w = 0;
};

inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kAtomMergeTol = 1e-12;
inline constexpr double kDiskTol = 1e-12;
inline constexpr double kCircleTol = 1e-9;

/// Finite atomic probability measure on the closed unit disk. Immutable after
/// construction; all field models are parametrized by one of these.
class SpectralMeasure {
public:
    /// Validates and canonicalizes: drops zero weights, merges atoms closer
    /// than kAtomMergeTol, rejects negative weights, weight sums away from 1,
    /// and atoms outside the closed unit disk.
    static SpectralMeasure from_atoms(std::vector<Atom> atoms, std::string label);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::string& label() const { return label_; }

    /// True when every atom lies on the unit circle (within kCircleTol).
    bool is_angular() const;

    /// True when all atoms lie on a single line through the origin; the
    /// gradient of the associated field is then degenerate and the zero set
    /// is a family of parallel lines.
    bool is_degenerate_line() const;

    std::string to_json() const;
    static SpectralMeasure from_json_text(const std::string& text);

private:
    SpectralMeasure(std::vector<Atom> atoms, std::string label)
        : atoms_(std::move(atoms)), label_(std::move(label)) {}

    std::vector<Atom> atoms_;
    std::string label_;
};

/// Four unit-circle atoms at angles k*pi/2, weight 1/4 each.
SpectralMeasure cilleruelo();

/// Four unit-circle atoms at angles pi/4 + k*pi/2, weight 1/4 each.
SpectralMeasure tilted_cilleruelo();

/// num_atoms equally spaced unit-circle atoms, equal weights. Requires
/// num_atoms >= 8 and divisible by 4 so the discretization keeps the
/// quarter-turn symmetry.
SpectralMeasure uniform_circle(int num_atoms);

/// Antipodal pair {+e1, -e1}, weight 1/2 each (degenerate line measure).
SpectralMeasure axis_pair();

/// Convex combination (1-t)*a + t*b, coincident atoms merged. t in [0, 1].
SpectralMeasure mix(const SpectralMeasure& a, const SpectralMeasure& b, double t);

/// Angular Fourier coefficient sum_j w_j exp(-i k theta_j). Requires an
/// angular measure; throws ConfigError("not an angular measure") otherwise.
std::complex<double> fourier_coefficient(const SpectralMeasure& m, long k);

/// Invariance of the atom multiset (weights matched within tol) under the
/// quarter turn (x,y) -> (-y,x) and the reflection (x,y) -> (x,-y).
bool is_symmetric(const SpectralMeasure& m, double tol);

/// max over 1 <= k <= max_harmonic of |a_hat(k) - b_hat(k)|; a pseudometric
/// proxy for weak-* distance on angular measures.
double weak_star_distance(const SpectralMeasure& a, const SpectralMeasure& b,
                          int max_harmonic);

}  // namespace nodal
