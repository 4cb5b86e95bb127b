#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gausspf/quadrature.hpp"

namespace gausspf {

/// Piecewise-constant density on a uniform grid over [lo,hi). eval() returns the
/// cell value (no interpolation) and 0 outside, so the exact-series and Ulam
/// paths share one semantics.
struct GridDensity {
    double lo = 0.0, hi = 1.0;
    std::vector<double> v;
    double l1_cached = 0.0;

    GridDensity() = default;
    GridDensity(double lo_, double hi_, int n) : lo(lo_), hi(hi_), v(static_cast<size_t>(n), 0.0) {
        if (!(hi > lo) || n < 1) throw std::invalid_argument("GridDensity: bad interval/size");
    }

    int n() const { return static_cast<int>(v.size()); }
    double dx() const { return (hi - lo) / static_cast<double>(v.size()); }
    double cell_lo(int k) const { return lo + k * dx(); }
    double cell_hi(int k) const { return lo + (k + 1) * dx(); }
    double mid(int k) const { return lo + (k + 0.5) * dx(); }

    double eval(double x) const {
        if (x < lo || x >= hi) return 0.0;
        int k = static_cast<int>((x - lo) / dx());
        if (k < 0) k = 0;
        if (k >= n()) k = n() - 1;
        return v[static_cast<size_t>(k)];
    }

    double mass() const {
        double s = 0.0;
        for (double a : v) s += a;
        return s * dx();
    }
    double l1() const {
        double s = 0.0;
        for (double a : v) s += std::abs(a);
        return s * dx();
    }
    double tv() const {
        double s = 0.0;
        for (size_t k = 1; k < v.size(); ++k) s += std::abs(v[k] - v[k - 1]);
        return s;
    }
    double sup() const {
        double s = 0.0;
        for (double a : v) s = std::max(s, std::abs(a));
        return s;
    }
    void refresh_l1() { l1_cached = l1(); }

    void normalize_mass() {
        const double m = mass();
        if (m == 0.0) throw std::runtime_error("GridDensity: zero mass, cannot normalize");
        for (double& a : v) a /= m;
        refresh_l1();
    }

    static GridDensity sample(const std::function<double(double)>& f, double lo, double hi, int n) {
        GridDensity g(lo, hi, n);
        for (int k = 0; k < n; ++k) g.v[static_cast<size_t>(k)] = f(g.mid(k));
        g.refresh_l1();
        return g;
    }

    /// Cell averages via per-cell Gauss-Legendre (exact for smooth integrands).
    static GridDensity average(const std::function<double(double)>& f, double lo, double hi, int n) {
        GridDensity g(lo, hi, n);
        for (int k = 0; k < n; ++k)
            g.v[static_cast<size_t>(k)] = gauss4(f, g.cell_lo(k), g.cell_hi(k)) / g.dx();
        g.refresh_l1();
        return g;
    }
};

inline double l1_distance(const GridDensity& a, const GridDensity& b) {
    if (a.n() != b.n() || a.lo != b.lo || a.hi != b.hi)
        throw std::invalid_argument("l1_distance: incompatible grids");
    double s = 0.0;
    for (int k = 0; k < a.n(); ++k) s += std::abs(a.v[k] - b.v[k]);
    return s * a.dx();
}

/// L1 distance between a grid and a function, cellwise 4-point quadrature.
inline double l1_distance_fn(const GridDensity& a, const std::function<double(double)>& f) {
    double s = 0.0;
    for (int k = 0; k < a.n(); ++k) {
        const double c = a.v[k];
        s += gauss4([&](double x) { return std::abs(c - f(x)); }, a.cell_lo(k), a.cell_hi(k));
    }
    return s;
}

} // namespace gausspf
