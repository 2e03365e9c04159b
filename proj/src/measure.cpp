#include "nodal/measure.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace nodal {

SpectralMeasure SpectralMeasure::from_atoms(std::vector<Atom> atoms, std::string label) {
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (a.w == 0.0) continue;  // mix() endpoints produce exact zeros
        if (a.w < 0.0) throw ConfigError("measure '" + label + "': negative atom weight");
        if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.w))
            throw ConfigError("measure '" + label + "': non-finite atom");
        double r2 = a.x * a.x + a.y * a.y;
        if (r2 > (1.0 + kDiskTol) * (1.0 + kDiskTol))
            throw ConfigError("measure '" + label + "': atom outside the closed unit disk");
        bool absorbed = false;
        for (Atom& m : merged) {
            double dx = m.x - a.x, dy = m.y - a.y;
            if (dx * dx + dy * dy < kAtomMergeTol * kAtomMergeTol) {
                m.w += a.w;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(a);
    }
    if (merged.empty()) throw ConfigError("measure '" + label + "': no atoms");
    double sum = 0;
    for (const Atom& a : merged) sum += a.w;
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw ConfigError("measure '" + label + "': weights sum to " + std::to_string(sum) +
                          ", not 1");
    return SpectralMeasure(std::move(merged), std::move(label));
}

bool SpectralMeasure::is_angular() const {
    for (const Atom& a : atoms_) {
        double r = std::sqrt(a.x * a.x + a.y * a.y);
        if (std::abs(r - 1.0) > kCircleTol) return false;
    }
    return true;
}

bool SpectralMeasure::is_degenerate_line() const {
    // Pick the atom farthest from the origin as the direction reference.
    const Atom* ref = nullptr;
    double best = 0;
    for (const Atom& a : atoms_) {
        double r2 = a.x * a.x + a.y * a.y;
        if (r2 > best) {
            best = r2;
            ref = &a;
        }
    }
    if (ref == nullptr) return true;  // all atoms at the origin
    for (const Atom& a : atoms_) {
        if (std::abs(ref->x * a.y - ref->y * a.x) > 1e-12) return false;
    }
    return true;
}

std::string SpectralMeasure::to_json() const {
    nlohmann::json j;
    j["label"] = label_;
    nlohmann::json arr = nlohmann::json::array();
    for (const Atom& a : atoms_) arr.push_back({{"x", a.x}, {"y", a.y}, {"w", a.w}});
    j["atoms"] = std::move(arr);
    return j.dump();
}

SpectralMeasure SpectralMeasure::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Atom> atoms;
    for (const auto& e : j.at("atoms"))
        atoms.push_back({e.at("x").get<double>(), e.at("y").get<double>(),
                         e.at("w").get<double>()});
    return from_atoms(std::move(atoms), j.at("label").get<std::string>());
}

SpectralMeasure cilleruelo() {
    return SpectralMeasure::from_atoms(
        {{1, 0, 0.25}, {0, 1, 0.25}, {-1, 0, 0.25}, {0, -1, 0.25}}, "cilleruelo");
}

SpectralMeasure tilted_cilleruelo() {
    const double c = M_SQRT1_2;
    return SpectralMeasure::from_atoms(
        {{c, c, 0.25}, {-c, c, 0.25}, {-c, -c, 0.25}, {c, -c, 0.25}},
        "tilted-cilleruelo");
}

SpectralMeasure uniform_circle(int num_atoms) {
    if (num_atoms < 8 || num_atoms % 4 != 0)
        throw ConfigError("uniform_circle: atom count must be >= 8 and divisible by 4");
    std::vector<Atom> atoms;
    atoms.reserve(num_atoms);
    double w = 1.0 / num_atoms;
    for (int k = 0; k < num_atoms; ++k) {
        double th = 2.0 * M_PI * k / num_atoms;
        atoms.push_back({std::cos(th), std::sin(th), w});
    }
    return SpectralMeasure::from_atoms(std::move(atoms),
                                       "uniform" + std::to_string(num_atoms));
}

SpectralMeasure axis_pair() {
    return SpectralMeasure::from_atoms({{1, 0, 0.5}, {-1, 0, 0.5}}, "pair");
}

SpectralMeasure mix(const SpectralMeasure& a, const SpectralMeasure& b, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("mix: t must lie in [0,1]");
    std::vector<Atom> atoms;
    atoms.reserve(a.atoms().size() + b.atoms().size());
    for (const Atom& x : a.atoms()) atoms.push_back({x.x, x.y, (1.0 - t) * x.w});
    for (const Atom& x : b.atoms()) atoms.push_back({x.x, x.y, t * x.w});
    std::string label =
        "mix(" + a.label() + "," + b.label() + "," + std::to_string(t) + ")";
    return SpectralMeasure::from_atoms(std::move(atoms), std::move(label));
}

std::complex<double> fourier_coefficient(const SpectralMeasure& m, long k) {
    if (!m.is_angular()) throw ConfigError("not an angular measure");
    std::complex<double> sum = 0;
    for (const Atom& a : m.atoms()) {
        double th = std::atan2(a.y, a.x);
        sum += std::polar(a.w, -static_cast<double>(k) * th);
    }
    return sum;
}

namespace {

bool multiset_invariant(const std::vector<Atom>& atoms, double tol,
                        double (*fx)(double, double), double (*fy)(double, double)) {
    for (const Atom& a : atoms) {
        double tx = fx(a.x, a.y), ty = fy(a.x, a.y);
        bool found = false;
        for (const Atom& b : atoms) {
            double dx = b.x - tx, dy = b.y - ty;
            if (dx * dx + dy * dy <= tol * tol && std::abs(b.w - a.w) <= tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

bool is_symmetric(const SpectralMeasure& m, double tol) {
    const auto& atoms = m.atoms();
    bool rot = multiset_invariant(
        atoms, tol, [](double, double y) { return -y; }, [](double x, double) { return x; });
    bool conj = multiset_invariant(
        atoms, tol, [](double x, double) { return x; }, [](double, double y) { return -y; });
    return rot && conj;
}

double weak_star_distance(const SpectralMeasure& a, const SpectralMeasure& b,
                          int max_harmonic) {
    if (max_harmonic < 1) throw ConfigError("weak_star_distance: harmonic cutoff must be >= 1");
    double d = 0;
    for (int k = 1; k <= max_harmonic; ++k)
        d = std::max(d, std::abs(fourier_coefficient(a, k) - fourier_coefficient(b, k)));
    return d;
}

}  // namespace nodal
