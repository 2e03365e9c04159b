#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nodal/measure.hpp"

namespace nodal {

enum class DomainKind { planar_window, torus };

/// One term c*cos(2*pi*<f,x>) + s*sin(2*pi*<f,x>) of a realized field. The
/// term list is the exact trigonometric polynomial behind a sample; it lets
/// counting code evaluate the field (and derivatives) anywhere, not just at
/// grid nodes.
struct TrigTerm {
    double fx = 0, fy = 0;
    double c = 0, s = 0;
};

/// One realization of a Gaussian field on a planar window or torus grid.
struct FieldSample {
    DomainKind domain = DomainKind::planar_window;

    // planar window [-R, R]^2, nodes at integer multiples of h
    double window_radius = 0;
    double step = 0;
    int half_extent = 0;  // node index range [-half_extent, half_extent]

    // torus [0,1)^2 sampled on an N x N grid
    long long torus_n = 0;
    int grid_size = 0;

    int nx = 0, ny = 0;
    std::vector<double> values;            // row-major, index iy*nx + ix
    std::vector<double> grad1, grad2;      // analytic partials (optional)
    std::uint64_t seed = 0;
    std::string measure_label;
    std::vector<TrigTerm> terms;
    bool degenerate_direction = false;     // atoms collinear through the origin
    double torus_imag_residual = 0;        // max |Im| before the cast to real

    std::size_t idx(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * nx + ix;
    }
    /// Planar node coordinate (torus samples use ix / grid_size).
    double coord(int i) const {
        return domain == DomainKind::planar_window
                   ? (i - half_extent) * step
                   : static_cast<double>(i) / grid_size;
    }

    bool has_gradients() const { return !grad1.empty(); }

    double value_at(double x1, double x2) const;
    double partial1_at(double x1, double x2) const;
    double partial2_at(double x1, double x2) const;
    double partial11_at(double x1, double x2) const;
    double partial12_at(double x1, double x2) const;
};

/// Draw the Gaussian amplitudes of a planar sample without evaluating a grid.
std::vector<TrigTerm> draw_planar_terms(const SpectralMeasure& m, std::uint64_t seed);

/// Exact trigonometric-sum synthesis of a stationary centred Gaussian field
/// with spectral measure m on the window [-R, R]^2 at spacing h. Covariance
/// is exactly sum_j w_j cos(2*pi*<lambda_j, x>). h <= 1/10 and R >= 1.
FieldSample sample_planar(const SpectralMeasure& m, double R, double h,
                          std::uint64_t seed, bool with_gradient);

/// Random toral eigenfunction with frequencies on the circle |lambda|^2 = n,
/// Hermitian-paired i.i.d. Gaussian coefficients, evaluated on an N x N grid
/// by inverse FFT and normalized to unit variance. Requires n in S and
/// N >= 8*ceil(sqrt(n)).
FieldSample sample_torus(long long n, int N, std::uint64_t seed);

/// Smallest 5-smooth transform length >= min_n.
int efficient_fft_size(int min_n);

/// Default torus grid: smallest efficient length >= factor*ceil(sqrt(n)).
int default_torus_grid(long long n, int factor = 8);

/// sum_j w_j cos(2*pi*<lambda_j, x>).
double covariance_theoretical(const SpectralMeasure& m, double x1, double x2);

struct CovarianceProbe {
    std::vector<std::array<double, 2>> lags;
    std::vector<double> theoretical;
    std::vector<double> empirical;
    std::vector<double> stderr_;  // standard error of each empirical mean
    int num_samples = 0;
};

/// Monte Carlo covariance check: empirical mean of f(0)*f(lag) over
/// num_samples independent realizations (num_samples >= 100).
CovarianceProbe covariance_probe(const SpectralMeasure& m,
                                 const std::vector<std::array<double, 2>>& lags,
                                 int num_samples, std::uint64_t seed);

}  // namespace nodal
