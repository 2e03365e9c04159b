#include "nodal/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "nodal/common.hpp"

namespace nodal {

namespace {

inline bool sign_pos(double v) { return v > -kZeroNudge; }

inline double effective(double v) { return std::abs(v) < kZeroNudge ? kZeroNudge : v; }

constexpr std::uint8_t kBoundary = 1;
constexpr std::uint8_t kWrap = 2;

/// Union-find over interface edges. Optionally tracks integer displacements
/// between elements (anchor positions in half-node units); a closed loop of
/// unions whose displacements do not telescope to zero has wound around the
/// torus, which marks the set as wrapping.
class EdgeForest {
public:
    EdgeForest(int n, bool with_offsets)
        : parent_(n), size_(n, 1), flags_(n, 0) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
        if (with_offsets) {
            offx_.assign(n, 0);
            offy_.assign(n, 0);
        }
    }

    int find(int x) {
        if (offx_.empty()) {
            int root = x;
            while (parent_[root] != root) root = parent_[root];
            while (parent_[x] != root) {
                int next = parent_[x];
                parent_[x] = root;
                x = next;
            }
            return root;
        }
        path_.clear();
        int root = x;
        while (parent_[root] != root) {
            path_.push_back(root);
            root = parent_[root];
        }
        std::int64_t cx = 0, cy = 0;
        for (int i = static_cast<int>(path_.size()) - 1; i >= 0; --i) {
            int node = path_[i];
            cx += offx_[node];
            cy += offy_[node];
            offx_[node] = static_cast<std::int32_t>(cx);
            offy_[node] = static_cast<std::int32_t>(cy);
            parent_[node] = root;
        }
        return root;
    }

    /// Join a and b given pos(a) - pos(b) = (dx, dy) in the current cell frame.
    void unite(int a, int b, int dx, int dy) {
        int ra = find(a);
        int rb = find(b);
        if (ra == rb) {
            if (!offx_.empty() &&
                (static_cast<std::int64_t>(offx_[a]) - offx_[b] != dx ||
                 static_cast<std::int64_t>(offy_[a]) - offy_[b] != dy))
                flags_[ra] |= kWrap;
            return;
        }
        if (size_[ra] < size_[rb]) {
            std::swap(ra, rb);
            std::swap(a, b);
            dx = -dx;
            dy = -dy;
        }
        if (!offx_.empty()) {
            offx_[rb] = static_cast<std::int32_t>(
                static_cast<std::int64_t>(offx_[a]) - offx_[b] - dx);
            offy_[rb] = static_cast<std::int32_t>(
                static_cast<std::int64_t>(offy_[a]) - offy_[b] - dy);
        }
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        flags_[ra] |= flags_[rb];
    }

    void flag_boundary(int e) { flags_[find(e)] |= kBoundary; }

    bool is_root(int e) const { return parent_[e] == e; }
    std::uint8_t flags(int root) const { return flags_[root]; }

private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> size_;
    std::vector<std::uint8_t> flags_;
    std::vector<std::int32_t> offx_, offy_;
    std::vector<int> path_;
};

/// Run-based connected-component labeling of same-sign node spans; one
/// union per overlapping span pair instead of one per node.
class RunLabeler {
public:
    struct Run {
        int start, end;  // inclusive column range
        int label;
        bool positive;
    };

    void label_rows(int nx, int ny, bool torus,
                    const std::function<bool(int, int)>& node_in_region,
                    const std::function<bool(int, int)>& node_positive) {
        rows_.assign(ny, {});
        for (int iy = 0; iy < ny; ++iy) {
            auto& row = rows_[iy];
            int ix = 0;
            while (ix < nx) {
                if (!node_in_region(ix, iy)) {
                    ++ix;
                    continue;
                }
                bool pos = node_positive(ix, iy);
                int start = ix;
                while (ix < nx && node_in_region(ix, iy) && node_positive(ix, iy) == pos)
                    ++ix;
                int label = static_cast<int>(parent_.size());
                parent_.push_back(label);
                positive_.push_back(pos);
                row.push_back({start, ix - 1, label, pos});
            }
            // wrap within the row before matching against the previous row
            if (torus && row.size() >= 2 && row.front().start == 0 &&
                row.back().end == nx - 1 && row.front().positive == row.back().positive)
                unite(row.front().label, row.back().label);
            if (iy > 0) merge_rows(rows_[iy - 1], row);
        }
        if (torus && ny > 1) merge_rows(rows_[ny - 1], rows_[0]);
    }

    /// Union the runs holding two diagonal nodes (saddle-cell connection).
    void unite_nodes(int ix1, int iy1, int ix2, int iy2) {
        int a = run_at(ix1, iy1);
        int b = run_at(ix2, iy2);
        if (a >= 0 && b >= 0) unite(a, b);
    }

    int run_at(int ix, int iy) const {
        const auto& row = rows_[iy];
        auto it = std::upper_bound(row.begin(), row.end(), ix,
                                   [](int v, const Run& r) { return v < r.start; });
        if (it == row.begin()) return -1;
        --it;
        return (ix >= it->start && ix <= it->end) ? it->label : -1;
    }

    void count(long& positive_domains, long& negative_domains) {
        positive_domains = negative_domains = 0;
        for (int i = 0; i < static_cast<int>(parent_.size()); ++i) {
            if (find(i) != i) continue;
            if (positive_[i])
                ++positive_domains;
            else
                ++negative_domains;
        }
    }

private:
    int find(int x) {
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            int next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
    void merge_rows(const std::vector<Run>& prev, const std::vector<Run>& cur) {
        std::size_t i = 0, j = 0;
        while (i < prev.size() && j < cur.size()) {
            const Run& p = prev[i];
            const Run& c = cur[j];
            if (p.end >= c.start && c.end >= p.start && p.positive == c.positive)
                unite(p.label, c.label);
            if (p.end < c.end)
                ++i;
            else
                ++j;
        }
    }

    std::vector<std::vector<Run>> rows_;
    std::vector<std::int32_t> parent_;
    std::vector<std::uint8_t> positive_;
};

struct GridCounts {
    long zero_components = 0;
    long boundary_zero_components = 0;
    long wrapping_zero_components = 0;
    long positive_domains = 0;
    long negative_domains = 0;
};

struct CountSpec {
    int nx = 0, ny = 0;
    bool torus = false;
    bool clip = false;
    double clip_radius = 0;
    double h = 1.0;
    int offset = 0;  // node coordinate = (index - offset) * h
    const double* values = nullptr;  // null for pure sign grids
    std::function<bool(int, int)> node_positive;
    std::function<bool(int, int)> center_positive;  // by cell index
};

GridCounts count_core(const CountSpec& g) {
    const int nx = g.nx, ny = g.ny;
    const double r2 = g.clip_radius * g.clip_radius;
    auto coord = [&](int i) { return (i - g.offset) * g.h; };
    auto in_region = [&](int ix, int iy) {
        if (!g.clip) return true;
        double x = coord(ix), y = coord(iy);
        return x * x + y * y <= r2;
    };
    auto val = [&](int ix, int iy) {
        return effective(g.values[static_cast<std::size_t>(iy) * nx + ix]);
    };

    // --- interface edges ------------------------------------------------
    // hid/vid give the compact id of a participating interface edge, -1
    // otherwise. An edge participates when its zero crossing (by linear
    // interpolation) lies inside the counting region.
    const std::size_t total = static_cast<std::size_t>(nx) * ny;
    std::vector<std::int32_t> hid(total, -1), vid(total, -1);
    int n_edges = 0;

    const int hx_max = g.torus ? nx : nx - 1;  // h-edge (ix,iy)-(ix+1 mod nx,iy)
    const int vy_max = g.torus ? ny : ny - 1;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < hx_max; ++ix) {
            int jx = (ix + 1) % nx;
            bool sa = g.node_positive(ix, iy), sb = g.node_positive(jx, iy);
            if (sa == sb) continue;
            if (g.clip) {
                double va = val(ix, iy), vb = val(jx, iy);
                double t = va / (va - vb);
                double x = (ix - g.offset + t) * g.h;
                double y = coord(iy);
                if (x * x + y * y > r2) continue;
            }
            hid[static_cast<std::size_t>(iy) * nx + ix] = n_edges++;
        }
    }
    for (int iy = 0; iy < vy_max; ++iy) {
        int jy = (iy + 1) % ny;
        for (int ix = 0; ix < nx; ++ix) {
            bool sa = g.node_positive(ix, iy), sb = g.node_positive(ix, jy);
            if (sa == sb) continue;
            if (g.clip) {
                double va = val(ix, iy), vb = val(ix, jy);
                double t = va / (va - vb);
                double x = coord(ix);
                double y = (iy - g.offset + t) * g.h;
                if (x * x + y * y > r2) continue;
            }
            vid[static_cast<std::size_t>(iy) * nx + ix] = n_edges++;
        }
    }

    EdgeForest forest(n_edges, g.torus);

    // Join two cell edges; a crossed edge clipped away flags its partner's
    // component as boundary-touching.
    auto join = [&](std::int32_t e1, bool crossed1, int px1, int py1,
                    std::int32_t e2, bool crossed2, int px2, int py2) {
        if (!crossed1 || !crossed2) return;
        if (e1 >= 0 && e2 >= 0)
            forest.unite(e1, e2, px1 - px2, py1 - py2);
        else if (e1 >= 0)
            forest.flag_boundary(e1);
        else if (e2 >= 0)
            forest.flag_boundary(e2);
    };

    // --- domains ----------------------------------------------------------
    RunLabeler domains;
    domains.label_rows(nx, ny, g.torus, in_region, g.node_positive);

    // --- cell scan: marching-squares pairing of crossed edges -------------
    const int cx_max = g.torus ? nx : nx - 1;
    const int cy_max = g.torus ? ny : ny - 1;
    for (int cy = 0; cy < cy_max; ++cy) {
        int cy1 = (cy + 1) % ny;
        const std::size_t row0 = static_cast<std::size_t>(cy) * nx;
        const std::size_t row1 = static_cast<std::size_t>(cy1) * nx;
        for (int cx = 0; cx < cx_max; ++cx) {
            int cx1 = (cx + 1) % nx;
            bool s00 = g.node_positive(cx, cy);
            bool s10 = g.node_positive(cx1, cy);
            bool s11 = g.node_positive(cx1, cy1);
            bool s01 = g.node_positive(cx, cy1);
            if (s00 == s10 && s10 == s11 && s11 == s01) continue;

            bool cb = s00 != s10, cr = s10 != s11, ct = s01 != s11, cl = s00 != s01;
            std::int32_t eb = hid[row0 + cx];
            std::int32_t et = hid[row1 + cx];
            std::int32_t el = vid[row0 + cx];
            std::int32_t er = vid[row0 + cx1];
            // anchor positions in half-node units, local (unwrapped) frame
            int bx = 2 * cx + 1, by = 2 * cy;
            int tx = 2 * cx + 1, ty = 2 * cy + 2;
            int lx = 2 * cx, ly = 2 * cy + 1;
            int rx = 2 * cx + 2, ry = 2 * cy + 1;

            int crossings = cb + cr + ct + cl;
            if (crossings == 2) {
                if (cb && cr)
                    join(eb, cb, bx, by, er, cr, rx, ry);
                else if (cb && ct)
                    join(eb, cb, bx, by, et, ct, tx, ty);
                else if (cb && cl)
                    join(eb, cb, bx, by, el, cl, lx, ly);
                else if (cr && ct)
                    join(er, cr, rx, ry, et, ct, tx, ty);
                else if (cr && cl)
                    join(er, cr, rx, ry, el, cl, lx, ly);
                else
                    join(et, ct, tx, ty, el, cl, lx, ly);
            } else {
                // Saddle: both diagonals disagree. The exact field value at
                // the cell center picks how the curve pairs the crossings.
                bool center = g.center_positive(cx, cy);
                if (center == s00) {
                    join(eb, cb, bx, by, er, cr, rx, ry);
                    join(el, cl, lx, ly, et, ct, tx, ty);
                    domains.unite_nodes(cx, cy, cx1, cy1);
                } else {
                    join(eb, cb, bx, by, el, cl, lx, ly);
                    join(er, cr, rx, ry, et, ct, tx, ty);
                    domains.unite_nodes(cx1, cy, cx, cy1);
                }
            }
        }
    }

    // --- window border: curves crossing the outermost grid lines exit the
    // window; their components touch the boundary by definition.
    if (!g.torus) {
        for (int ix = 0; ix < nx - 1; ++ix) {
            std::int32_t e0 = hid[ix];
            std::int32_t e1 = hid[static_cast<std::size_t>(ny - 1) * nx + ix];
            if (e0 >= 0) forest.flag_boundary(e0);
            if (e1 >= 0) forest.flag_boundary(e1);
        }
        for (int iy = 0; iy < ny - 1; ++iy) {
            std::int32_t e0 = vid[static_cast<std::size_t>(iy) * nx];
            std::int32_t e1 = vid[static_cast<std::size_t>(iy) * nx + nx - 1];
            if (e0 >= 0) forest.flag_boundary(e0);
            if (e1 >= 0) forest.flag_boundary(e1);
        }
    }

    GridCounts out;
    for (int e = 0; e < n_edges; ++e) {
        if (forest.find(e) != e) continue;
        std::uint8_t fl = forest.flags(e);
        ++out.zero_components;
        if (fl & kBoundary) ++out.boundary_zero_components;
        if (fl & kWrap) ++out.wrapping_zero_components;
    }
    domains.count(out.positive_domains, out.negative_domains);
    return out;
}

}  // namespace

ComponentCount count_planar_custom(const std::vector<double>& values, int half_extent,
                                   double h, double R,
                                   const std::function<double(double, double)>& eval) {
    CountSpec g;
    g.nx = g.ny = 2 * half_extent + 1;
    g.clip = true;
    g.clip_radius = R;
    g.h = h;
    g.offset = half_extent;
    g.values = values.data();
    const double* v = values.data();
    const int nx = g.nx;
    g.node_positive = [v, nx](int ix, int iy) {
        return sign_pos(v[static_cast<std::size_t>(iy) * nx + ix]);
    };
    g.center_positive = [&](int cx, int cy) {
        double x = (cx - half_extent + 0.5) * h;
        double y = (cy - half_extent + 0.5) * h;
        return sign_pos(eval(x, y));
    };
    GridCounts c = count_core(g);
    ComponentCount out;
    out.region = DomainKind::planar_window;
    out.region_radius = R;
    out.compact_zero_components = c.zero_components - c.boundary_zero_components;
    out.boundary_zero_components = c.boundary_zero_components;
    out.positive_domains = c.positive_domains;
    out.negative_domains = c.negative_domains;
    return out;
}

ComponentCount count_torus_custom(const std::vector<double>& values, int N,
                                  const std::function<double(double, double)>& eval) {
    CountSpec g;
    g.nx = g.ny = N;
    g.torus = true;
    g.values = values.data();
    const double* v = values.data();
    g.node_positive = [v, N](int ix, int iy) {
        return sign_pos(v[static_cast<std::size_t>(iy) * N + ix]);
    };
    g.center_positive = [&](int cx, int cy) {
        return sign_pos(eval((cx + 0.5) / N, (cy + 0.5) / N));
    };
    GridCounts c = count_core(g);
    ComponentCount out;
    out.region = DomainKind::torus;
    out.compact_zero_components = c.zero_components;  // no boundary on the torus
    out.boundary_zero_components = 0;
    out.wrapping_zero_components = c.wrapping_zero_components;
    out.positive_domains = c.positive_domains;
    out.negative_domains = c.negative_domains;
    return out;
}

ComponentCount count_components(const FieldSample& field) {
    if (field.values.empty()) throw ConfigError("count_components: empty sample");
    if (field.domain == DomainKind::torus)
        return count_torus_custom(field.values, field.grid_size,
                                  [&field](double x, double y) {
                                      return field.value_at(x, y);
                                  });
    return count_planar_custom(field.values, field.half_extent, field.step,
                               field.window_radius,
                               [&field](double x, double y) {
                                   return field.value_at(x, y);
                               });
}

SignGridCounts count_sign_grid(const std::vector<int>& signs, int nx, int ny,
                               const std::function<int(int, int)>& center_sign) {
    if (static_cast<std::size_t>(nx) * ny != signs.size())
        throw ConfigError("count_sign_grid: size mismatch");
    CountSpec g;
    g.nx = nx;
    g.ny = ny;
    g.node_positive = [&signs, nx](int ix, int iy) {
        return signs[static_cast<std::size_t>(iy) * nx + ix] > 0;
    };
    g.center_positive = [&center_sign](int cx, int cy) { return center_sign(cx, cy) > 0; };
    GridCounts c = count_core(g);
    return {c.zero_components, c.boundary_zero_components, c.positive_domains,
            c.negative_domains};
}

namespace {

using Point = std::array<double, 2>;

Point refine_edge_crossing(const FieldSample& f, Point a, Point b) {
    double va = effective(f.value_at(a[0], a[1]));
    for (int it = 0; it < 60; ++it) {
        Point m = {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
        double vm = effective(f.value_at(m[0], m[1]));
        if ((vm > 0) == (va > 0)) {
            a = m;
            va = vm;
        } else {
            b = m;
        }
    }
    return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
}

/// Point of the f = 0 curve near the straight interpolation between two
/// refined crossings: Newton steps orthogonal to the level set.
Point curve_point(const FieldSample& f, const Point& p0, const Point& p1, double s) {
    Point q = {p0[0] + s * (p1[0] - p0[0]), p0[1] + s * (p1[1] - p0[1])};
    for (int it = 0; it < 12; ++it) {
        double v = f.value_at(q[0], q[1]);
        if (std::abs(v) < 1e-13) break;
        double gx = f.partial1_at(q[0], q[1]);
        double gy = f.partial2_at(q[0], q[1]);
        double n2 = gx * gx + gy * gy;
        if (n2 < 1e-18) break;
        q[0] -= v * gx / n2;
        q[1] -= v * gy / n2;
    }
    return q;
}

}  // namespace

FlipCount count_flips(const FieldSample& field) {
    if (field.domain != DomainKind::planar_window)
        throw ConfigError("count_flips: planar samples only");
    if (!field.has_gradients())
        throw ConfigError("count_flips: sample lacks gradient grids");

    const int n = field.nx;
    const double R = field.window_radius;
    FlipCount out;

    auto fval = [&](int ix, int iy) { return field.values[field.idx(ix, iy)]; };
    auto gval = [&](int ix, int iy) { return field.grad1[field.idx(ix, iy)]; };

    for (int cy = 0; cy < n - 1; ++cy) {
        for (int cx = 0; cx < n - 1; ++cx) {
            bool f00 = sign_pos(fval(cx, cy)), f10 = sign_pos(fval(cx + 1, cy));
            bool f11 = sign_pos(fval(cx + 1, cy + 1)), f01 = sign_pos(fval(cx, cy + 1));
            if (f00 == f10 && f10 == f11 && f11 == f01) continue;
            bool g00 = sign_pos(gval(cx, cy)), g10 = sign_pos(gval(cx + 1, cy));
            bool g11 = sign_pos(gval(cx + 1, cy + 1)), g01 = sign_pos(gval(cx, cy + 1));
            if (g00 == g10 && g10 == g11 && g11 == g01) continue;

            // corner coordinates
            double x0 = field.coord(cx), x1 = field.coord(cx + 1);
            double y0 = field.coord(cy), y1 = field.coord(cy + 1);
            Point bl = {x0, y0}, br = {x1, y0}, tr = {x1, y1}, tl = {x0, y1};

            // f-chords of this cell (pairs of crossed-edge endpoints)
            bool cb = f00 != f10, crr = f10 != f11, ct = f01 != f11, cl = f00 != f01;
            std::array<std::pair<Point, Point>, 4> edge_pts = {
                std::make_pair(bl, br), std::make_pair(br, tr),
                std::make_pair(tl, tr), std::make_pair(bl, tl)};
            bool crossed[4] = {cb, crr, ct, cl};
            int order[4];
            int n_crossed = 0;
            for (int e = 0; e < 4; ++e)
                if (crossed[e]) order[n_crossed++] = e;

            std::vector<std::pair<int, int>> chords;
            if (n_crossed == 2) {
                chords.push_back({order[0], order[1]});
            } else if (n_crossed == 4) {
                bool center = sign_pos(
                    field.value_at(0.5 * (x0 + x1), 0.5 * (y0 + y1)));
                // edges: 0 bottom, 1 right, 2 top, 3 left
                if (center == f00) {
                    chords.push_back({0, 1});
                    chords.push_back({3, 2});
                } else {
                    chords.push_back({0, 3});
                    chords.push_back({1, 2});
                }
            }

            for (auto [e1, e2] : chords) {
                Point p0 = refine_edge_crossing(field, edge_pts[e1].first,
                                                edge_pts[e1].second);
                Point p1 = refine_edge_crossing(field, edge_pts[e2].first,
                                                edge_pts[e2].second);
                double ga = field.partial1_at(p0[0], p0[1]);
                double gb = field.partial1_at(p1[0], p1[1]);
                if ((ga > 0) == (gb > 0)) continue;
                double lo = 0, hi = 1;
                for (int it = 0; it < 50; ++it) {
                    double mid = 0.5 * (lo + hi);
                    Point q = curve_point(field, p0, p1, mid);
                    double gm = field.partial1_at(q[0], q[1]);
                    if ((gm > 0) == (ga > 0))
                        lo = mid;
                    else
                        hi = mid;
                }
                Point z = curve_point(field, p0, p1, 0.5 * (lo + hi));
                double fv = field.value_at(z[0], z[1]);
                double gv = field.partial1_at(z[0], z[1]);
                double fy = field.partial2_at(z[0], z[1]);
                double fxx = field.partial11_at(z[0], z[1]);
                double fxy = field.partial12_at(z[0], z[1]);
                double det = field.partial1_at(z[0], z[1]) * fxy - fy * fxx;
                if (std::abs(fv) < 1e-9 && std::abs(gv) < 1e-9 &&
                    std::abs(det) > 1e-9) {
                    if (z[0] * z[0] + z[1] * z[1] <= R * R)
                        out.points.push_back(z);
                } else {
                    ++out.degenerate_candidates;
                }
            }
        }
    }

    // Deduplicate: adjacent cells can converge to the same flip when it
    // lies near a shared crossing.
    std::sort(out.points.begin(), out.points.end());
    std::vector<Point> unique_pts;
    for (const Point& p : out.points) {
        bool dup = false;
        for (auto it = unique_pts.rbegin(); it != unique_pts.rend(); ++it) {
            if (p[0] - (*it)[0] > 1e-6) break;
            double dx = p[0] - (*it)[0], dy = p[1] - (*it)[1];
            if (dx * dx + dy * dy < 1e-12) {
                dup = true;
                break;
            }
        }
        if (!dup) unique_pts.push_back(p);
    }
    out.points = std::move(unique_pts);
    out.flips = static_cast<long>(out.points.size());
    return out;
}

}  // namespace nodal
