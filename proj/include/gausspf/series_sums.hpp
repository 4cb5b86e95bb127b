#pragma once

#include <cmath>

#include "gausspf/grid.hpp"
#include "gausspf/polygamma.hpp"

namespace gausspf {

/// Exact cell-grouped evaluation of sum_{j in Z^x} p/(2j-x)^2 g(p/(2j-x)) for a
/// piecewise-constant g (any support not containing arguments of the excluded
/// j=0 term), |x| <= 1. Each cell contributes a contiguous index range summed
/// by trigamma pairs, so there is no truncation.
inline double mobius_sum_two(double p, const GridDensity& g, double x) {
    double val = 0.0;
    const double dx = g.dx();
    for (int k = 0; k < g.n(); ++k) {
        const double cv = g.v[static_cast<size_t>(k)];
        if (cv == 0.0) continue;
        const double a = g.lo + k * dx, b = g.lo + (k + 1) * dx;
        // positive arguments: y = p/(2j-x), j >= 1
        if (b > 0.0) {
            const double aa = std::max(a, 0.0);
            long long j1 = static_cast<long long>(std::floor((p / b + x) * 0.5)) + 1;
            j1 = std::max(j1, 1LL);
            long long j2 = aa > 0.0 ? static_cast<long long>(std::floor((p / aa + x) * 0.5)) : -1;
            if (!(j2 >= 0 && j2 < j1)) val += cv * 0.25 * p * sum_inv_sq(-0.5 * x, j1, j2);
        }
        // negative arguments: y = -p/(2m+x), m >= 1
        if (a < 0.0) {
            const double bb = std::min(b, 0.0);
            long long m1 = static_cast<long long>(std::ceil((p / (-a) - x) * 0.5));
            m1 = std::max(m1, 1LL);
            long long m2 = bb < 0.0 ? static_cast<long long>(std::ceil((p / (-bb) - x) * 0.5)) - 1 : -1;
            if (!(m2 >= 0 && m2 < m1)) val += cv * 0.25 * p * sum_inv_sq(0.5 * x, m1, m2);
        }
    }
    return val;
}

/// One-sided analogue: sum_{v>=1} p/(v+x)^2 g(p/(v+x)), x in [0,1].
inline double mobius_sum_one(double p, const GridDensity& g, double x) {
    double val = 0.0;
    const double dx = g.dx();
    for (int k = 0; k < g.n(); ++k) {
        const double cv = g.v[static_cast<size_t>(k)];
        if (cv == 0.0) continue;
        const double a = g.lo + k * dx, b = g.lo + (k + 1) * dx;
        if (b <= 0.0) continue;
        const double aa = std::max(a, 0.0);
        long long v1 = static_cast<long long>(std::floor(p / b - x)) + 1;
        v1 = std::max(v1, 1LL);
        long long v2 = aa > 0.0 ? static_cast<long long>(std::floor(p / aa - x)) : -1;
        if (v2 >= 0 && v2 < v1) continue;
        val += cv * p * sum_inv_sq(x, v1, v2);
    }
    return val;
}

} // namespace gausspf
