#include "nodal/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

namespace nodal {

namespace {

long long isqrt_floor(long long n) {
    if (n < 0) return -1;
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

LatticeSolutionSet sum_two_squares_reps(long long n) {
    if (n < 1) throw ConfigError("sum_two_squares_reps: n must be >= 1");
    LatticeSolutionSet out;
    out.n = n;
    long long amax = isqrt_floor(n);
    for (long long a = 0; a <= amax; ++a) {
        long long rem = n - a * a;
        long long b = isqrt_floor(rem);
        if (b * b != rem) continue;
        // Expand the orbit of (a, b) under sign flips and the swap.
        const long long cand[8][2] = {{a, b},  {a, -b},  {-a, b},  {-a, -b},
                                      {b, a},  {b, -a},  {-b, a},  {-b, -a}};
        for (const auto& c : cand) out.points.push_back({c[0], c[1]});
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

long r2(long long n) { return sum_two_squares_reps(n).r2(); }

bool in_S(long long n) { return r2(n) > 0; }

SpectralMeasure spectral_measure_mu_n(long long n) {
    LatticeSolutionSet s = sum_two_squares_reps(n);
    if (s.points.empty()) throw ConfigError("empty eigenspace");
    double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    double w = 1.0 / static_cast<double>(s.points.size());
    std::vector<Atom> atoms;
    atoms.reserve(s.points.size());
    for (const auto& p : s.points)
        atoms.push_back({static_cast<double>(p[0]) * inv_sqrt_n,
                         static_cast<double>(p[1]) * inv_sqrt_n, w});
    return SpectralMeasure::from_atoms(std::move(atoms), "mu_n:" + std::to_string(n));
}

std::vector<SearchHit> search_by_angular_target(const SpectralMeasure& target,
                                                long long n_max, int max_harmonic,
                                                int top_k) {
    if (n_max < 1) throw ConfigError("search_by_angular_target: n_max must be >= 1");
    if (top_k < 1) throw ConfigError("search_by_angular_target: top_k must be >= 1");
    std::vector<std::complex<double>> target_hat(max_harmonic + 1);
    for (int k = 1; k <= max_harmonic; ++k) target_hat[k] = fourier_coefficient(target, k);

    std::vector<SearchHit> hits;
    for (long long n = 1; n <= n_max; ++n) {
        LatticeSolutionSet s = sum_two_squares_reps(n);
        if (s.points.empty()) continue;
        double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
        double w = 1.0 / static_cast<double>(s.points.size());
        double d = 0;
        for (int k = 1; k <= max_harmonic; ++k) {
            std::complex<double> hat = 0;
            for (const auto& p : s.points) {
                double th = std::atan2(p[1] * inv_sqrt_n, p[0] * inv_sqrt_n);
                hat += std::polar(w, -static_cast<double>(k) * th);
            }
            d = std::max(d, std::abs(hat - target_hat[k]));
        }
        hits.push_back({n, s.r2(), d});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.n < b.n;
    });
    if (static_cast<int>(hits.size()) > top_k) hits.resize(top_k);
    return hits;
}

void write_search_csv(std::ostream& out, const std::vector<SearchHit>& hits) {
    out << "n,r2,distance\n";
    for (const SearchHit& h : hits) {
        out << h.n << ',' << h.r2 << ',';
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", h.distance);
        out << buf << '\n';
    }
}

}  // namespace nodal
