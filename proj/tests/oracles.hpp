#pragma once

// Brute-force reference implementations shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include "levy/minorant.hpp"
#include "levy/rng.hpp"

namespace levy::oracle {

/// Random convex PLC: F faces with lengths in [min_len, 1) and sorted
/// N(0, slope_sd^2) slopes.
inline PiecewiseLinearConvex fuzz_plc(RngStream& rng, int F, double min_len = 0.05, double slope_sd = 3.0) {
    std::vector<double> slopes(F);
    for (double& s : slopes) s = slope_sd * rng.normal();
    std::sort(slopes.begin(), slopes.end());
    std::vector<Face> faces;
    for (int i = 0; i < F; ++i) {
        const double len = min_len + (1.0 - min_len) * rng.uniform();
        faces.push_back({len, slopes[i] * len});
    }
    return PiecewiseLinearConvex::from_unordered_faces(faces);
}

/// Value of the largest convex function below all points, at each t_i.
inline std::vector<double> brute_hull_values(const std::vector<double>& t, const std::vector<double>& x) {
    const std::size_t n = t.size();
    std::vector<double> c(x);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            bool below = true;
            for (std::size_t k = 0; k < n && below; ++k) {
                if (k == a || k == b) continue;
                const double line = x[a] + (x[b] - x[a]) * (t[k] - t[a]) / (t[b] - t[a]);
                below = line <= x[k];
            }
            if (!below) continue;
            for (std::size_t k = a + 1; k < b; ++k)
                c[k] = std::min(c[k], x[a] + (x[b] - x[a]) * (t[k] - t[a]) / (t[b] - t[a]));
        }
    return c;
}

/// Indices where the hull has a corner: points on the hull that are not
/// interior to any chord between two other hull points.
inline std::vector<std::size_t> brute_hull_vertices(const std::vector<double>& t, const std::vector<double>& x) {
    const auto c = brute_hull_values(t, x);
    const std::size_t n = t.size();
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] != x[i]) continue;
        bool corner = true;
        for (std::size_t a = 0; a < i && corner; ++a)
            for (std::size_t b = i + 1; b < n && corner; ++b) {
                const double line = x[a] + (x[b] - x[a]) * (t[i] - t[a]) / (t[b] - t[a]);
                if (c[a] == x[a] && c[b] == x[b] && std::abs(line - x[i]) <= 1e-14 * (1.0 + std::abs(x[i])))
                    corner = false;
            }
        if (corner) v.push_back(i);
    }
    return v;
}

namespace detail {

inline double ratio(const PiecewiseLinearConvex& p, double u, double t, double r) {
    if (t < u) std::swap(u, t);
    if (!(t > u)) return 0.0;
    return std::abs(p.value(t) - p.value(u)) / std::pow(t - u, r);
}

template <class F>
double golden_max(F f, double lo, double hi, double& arg) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 80; ++i) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        }
    }
    arg = fc > fd ? c : d;
    double best = std::max(fc, fd);
    for (double e : {lo, hi})
        if (f(e) > best) {
            best = f(e);
            arg = e;
        }
    return best;
}

} // namespace detail

/// Grid maximizer of |C_t - C_u| / (t-u)^r: per_face points on every face,
/// then alternating golden-section polish around the best pair.
inline double grid_holder_sup(const PiecewiseLinearConvex& p, double r, int per_face = 200) {
    std::vector<double> grid{0.0};
    {
        double t0 = 0.0;
        for (const Face& f : p.faces()) {
            for (int k = 1; k <= per_face; ++k) grid.push_back(t0 + f.length * k / per_face);
            t0 += f.length;
        }
    }
    std::vector<double> val(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) val[i] = p.value(grid[i]);
    double best = 0.0;
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const double q = std::abs(val[j] - val[i]) / std::pow(grid[j] - grid[i], r);
            if (q > best) {
                best = q;
                bi = i;
                bj = j;
            }
        }
    double u = grid[bi], t = grid[bj];
    const double T = p.span();
    for (int round = 0; round < 6; ++round) {
        const double hu = (bi > 0 ? grid[bi] - grid[bi - 1] : 0.0) + (bi + 1 < grid.size() ? grid[bi + 1] - grid[bi] : 0.0);
        const double ht = (bj > 0 ? grid[bj] - grid[bj - 1] : 0.0) + (bj + 1 < grid.size() ? grid[bj + 1] - grid[bj] : 0.0);
        double arg;
        best = std::max(best, detail::golden_max([&](double s) { return detail::ratio(p, s, t, r); },
                                                 std::max(0.0, u - hu), std::min(t, u + hu), arg));
        u = arg;
        best = std::max(best, detail::golden_max([&](double s) { return detail::ratio(p, u, s, r); },
                                                 std::max(u, t - ht), std::min(T, t + ht), arg));
        t = arg;
    }
    return best;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

} // namespace levy::oracle
