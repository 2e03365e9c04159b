#include "nodal/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "nodal/lattice.hpp"
#include "nodal/rng.hpp"

namespace nodal {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

// FFTW plan creation/destruction is not thread-safe.
std::mutex g_fftw_mutex;
}  // namespace

double FieldSample::value_at(double x1, double x2) const {
    double acc = 0;
    for (const TrigTerm& t : terms) {
        double ph = kTwoPi * (t.fx * x1 + t.fy * x2);
        acc += t.c * std::cos(ph) + t.s * std::sin(ph);
    }
    return acc;
}

double FieldSample::partial1_at(double x1, double x2) const {
    double acc = 0;
    for (const TrigTerm& t : terms) {
        double ph = kTwoPi * (t.fx * x1 + t.fy * x2);
        acc += kTwoPi * t.fx * (-t.c * std::sin(ph) + t.s * std::cos(ph));
    }
    return acc;
}

double FieldSample::partial2_at(double x1, double x2) const {
    double acc = 0;
    for (const TrigTerm& t : terms) {
        double ph = kTwoPi * (t.fx * x1 + t.fy * x2);
        acc += kTwoPi * t.fy * (-t.c * std::sin(ph) + t.s * std::cos(ph));
    }
    return acc;
}

double FieldSample::partial11_at(double x1, double x2) const {
    double acc = 0;
    for (const TrigTerm& t : terms) {
        double ph = kTwoPi * (t.fx * x1 + t.fy * x2);
        acc -= kTwoPi * t.fx * kTwoPi * t.fx * (t.c * std::cos(ph) + t.s * std::sin(ph));
    }
    return acc;
}

double FieldSample::partial12_at(double x1, double x2) const {
    double acc = 0;
    for (const TrigTerm& t : terms) {
        double ph = kTwoPi * (t.fx * x1 + t.fy * x2);
        acc -= kTwoPi * t.fx * kTwoPi * t.fy * (t.c * std::cos(ph) + t.s * std::sin(ph));
    }
    return acc;
}

std::vector<TrigTerm> draw_planar_terms(const SpectralMeasure& m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<TrigTerm> terms;
    terms.reserve(m.atoms().size());
    for (const Atom& a : m.atoms()) {
        double xi = rng.next_gaussian();
        double eta = rng.next_gaussian();
        double amp = std::sqrt(a.w);
        terms.push_back({a.x, a.y, amp * xi, amp * eta});
    }
    return terms;
}

FieldSample sample_planar(const SpectralMeasure& m, double R, double h,
                          std::uint64_t seed, bool with_gradient) {
    if (!(h > 0) || h > 0.1 + 1e-15)
        throw ConfigError("sample_planar: need 0 < h <= 1/10");
    if (!(R >= 1)) throw ConfigError("sample_planar: need R >= 1");

    FieldSample f;
    f.domain = DomainKind::planar_window;
    f.window_radius = R;
    f.step = h;
    f.half_extent = static_cast<int>(std::ceil(R / h - 1e-9));
    f.nx = f.ny = 2 * f.half_extent + 1;
    f.seed = seed;
    f.measure_label = m.label();
    f.terms = draw_planar_terms(m, seed);
    f.degenerate_direction = m.is_degenerate_line();

    const int n = f.nx;
    const std::size_t total = static_cast<std::size_t>(n) * n;
    f.values.assign(total, 0.0);
    if (with_gradient) {
        f.grad1.assign(total, 0.0);
        f.grad2.assign(total, 0.0);
    }

    // Per term: phase = A(ix) + B(iy) with A along x1, B along x2. Writing
    // cos/sin(A+B) in terms of column tables over A and row scalars over B
    // turns the grid accumulation into two fused multiply-adds per node.
    std::vector<double> ccol(n), scol(n);
    for (const TrigTerm& t : f.terms) {
        for (int ix = 0; ix < n; ++ix) {
            double a = kTwoPi * t.fx * f.coord(ix);
            ccol[ix] = std::cos(a);
            scol[ix] = std::sin(a);
        }
        double g1 = kTwoPi * t.fx, g2 = kTwoPi * t.fy;
        for (int iy = 0; iy < n; ++iy) {
            double b = kTwoPi * t.fy * f.coord(iy);
            double cb = std::cos(b), sb = std::sin(b);
            double p = t.c * cb + t.s * sb;   // cos-part row coefficient
            double q = t.s * cb - t.c * sb;   // sin-part row coefficient
            double* row = f.values.data() + f.idx(0, iy);
            if (!with_gradient) {
                for (int ix = 0; ix < n; ++ix)
                    row[ix] += ccol[ix] * p + scol[ix] * q;
            } else {
                double* r1 = f.grad1.data() + f.idx(0, iy);
                double* r2 = f.grad2.data() + f.idx(0, iy);
                for (int ix = 0; ix < n; ++ix) {
                    row[ix] += ccol[ix] * p + scol[ix] * q;
                    double w = ccol[ix] * q - scol[ix] * p;
                    r1[ix] += g1 * w;
                    r2[ix] += g2 * w;
                }
            }
        }
    }
    return f;
}

int efficient_fft_size(int min_n) {
    for (int n = std::max(min_n, 1);; ++n) {
        int m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        while (m % 5 == 0) m /= 5;
        if (m == 1) return n;
    }
}

int default_torus_grid(long long n, int factor) {
    auto root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
    return efficient_fft_size(factor * root);
}

FieldSample sample_torus(long long n, int N, std::uint64_t seed) {
    LatticeSolutionSet reps = sum_two_squares_reps(n);
    if (reps.points.empty()) throw ConfigError("empty eigenspace");
    auto root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
    if (N < 8 * root)
        throw ConfigError("sample_torus: grid size " + std::to_string(N) +
                          " too small, need N >= " + std::to_string(8 * root));

    FieldSample f;
    f.domain = DomainKind::torus;
    f.torus_n = n;
    f.grid_size = N;
    f.nx = f.ny = N;
    f.seed = seed;
    f.measure_label = "mu_n:" + std::to_string(n);

    // One independent complex Gaussian per antipodal pair {lambda, -lambda};
    // the conjugate pairing keeps the sum real. Normalized so E[f^2] = 1.
    Rng rng(seed);
    const double r2n = static_cast<double>(reps.points.size());
    const double amp = std::sqrt(2.0 / r2n) * 0.5;  // per-coefficient scale
    std::vector<std::complex<double>> coef;
    std::vector<std::array<long long, 2>> freq;
    for (const auto& p : reps.points) {
        if (p[0] < 0 || (p[0] == 0 && p[1] < 0)) continue;  // representatives only
        double u = rng.next_gaussian();
        double v = rng.next_gaussian();
        coef.emplace_back(amp * u, amp * v);
        freq.push_back(p);
        // Real form of a*e^{i ph} + conj(a)*e^{-i ph} = 2u'*cos - 2v'*sin.
        f.terms.push_back({static_cast<double>(p[0]), static_cast<double>(p[1]),
                           2.0 * amp * u, -2.0 * amp * v});
    }

    const std::size_t total = static_cast<std::size_t>(N) * N;
    fftw_complex* in;
    fftw_complex* out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        in = fftw_alloc_complex(total);
        out = fftw_alloc_complex(total);
        plan = fftw_plan_dft_2d(N, N, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    std::fill(reinterpret_cast<double*>(in), reinterpret_cast<double*>(in) + 2 * total, 0.0);
    auto place = [&](long long l1, long long l2, std::complex<double> a) {
        auto i1 = static_cast<std::size_t>(((l1 % N) + N) % N);
        auto i2 = static_cast<std::size_t>(((l2 % N) + N) % N);
        // layout chosen so out[iy*N + ix] = f(ix/N, iy/N)
        std::size_t k = i2 * N + i1;
        in[k][0] += a.real();
        in[k][1] += a.imag();
    };
    for (std::size_t j = 0; j < coef.size(); ++j) {
        place(freq[j][0], freq[j][1], coef[j]);
        place(-freq[j][0], -freq[j][1], std::conj(coef[j]));
    }
    fftw_execute(plan);

    f.values.resize(total);
    double max_im = 0, max_re = 0;
    for (std::size_t k = 0; k < total; ++k) {
        f.values[k] = out[k][0];
        max_im = std::max(max_im, std::abs(out[k][1]));
        max_re = std::max(max_re, std::abs(out[k][0]));
    }
    f.torus_imag_residual = max_re > 0 ? max_im / max_re : max_im;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    if (f.torus_imag_residual > 1e-9)
        throw RunError("sample_torus: imaginary residual " +
                       std::to_string(f.torus_imag_residual));
    return f;
}

double covariance_theoretical(const SpectralMeasure& m, double x1, double x2) {
    double acc = 0;
    for (const Atom& a : m.atoms()) acc += a.w * std::cos(kTwoPi * (a.x * x1 + a.y * x2));
    return acc;
}

CovarianceProbe covariance_probe(const SpectralMeasure& m,
                                 const std::vector<std::array<double, 2>>& lags,
                                 int num_samples, std::uint64_t seed) {
    if (num_samples < 100) throw ConfigError("covariance_probe: need num_samples >= 100");
    CovarianceProbe probe;
    probe.lags = lags;
    probe.num_samples = num_samples;
    probe.theoretical.reserve(lags.size());
    for (const auto& l : lags)
        probe.theoretical.push_back(covariance_theoretical(m, l[0], l[1]));

    std::vector<double> sum(lags.size(), 0.0), sumsq(lags.size(), 0.0);
    for (int s = 0; s < num_samples; ++s) {
        FieldSample f;
        f.terms = draw_planar_terms(m, derive_seed(seed, s));
        double f0 = f.value_at(0, 0);
        for (std::size_t j = 0; j < lags.size(); ++j) {
            double prod = f0 * f.value_at(lags[j][0], lags[j][1]);
            sum[j] += prod;
            sumsq[j] += prod * prod;
        }
    }
    probe.empirical.resize(lags.size());
    probe.stderr_.resize(lags.size());
    for (std::size_t j = 0; j < lags.size(); ++j) {
        double mean = sum[j] / num_samples;
        double var = (sumsq[j] - num_samples * mean * mean) / (num_samples - 1);
        probe.empirical[j] = mean;
        probe.stderr_[j] = std::sqrt(std::max(var, 0.0) / num_samples);
    }
    return probe;
}

}  // namespace nodal
