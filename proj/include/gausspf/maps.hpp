#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gausspf/fracpart.hpp"

namespace gausspf {

/// A Gauss-type interval map: two-sided tau_beta(x) = {-beta/x}_2 on [-1,1],
/// or one-sided theta_gamma(x) = {gamma/x}_1 on [0,1]. The origin maps to 0.
struct GaussMapSpec {
    enum class Kind { TwoSided, OneSided };
    Kind kind;
    double parameter; // beta (two-sided) or gamma (one-sided)

    static GaussMapSpec two_sided(double beta) {
        if (!(beta > 0.0)) throw std::invalid_argument("two_sided: beta must be > 0");
        return {Kind::TwoSided, beta};
    }
    static GaussMapSpec one_sided(double gamma) {
        if (!(gamma >= 1.0)) throw std::invalid_argument("one_sided: gamma must be >= 1");
        return {Kind::OneSided, gamma};
    }

    bool two() const { return kind == Kind::TwoSided; }
    double domain_lo() const { return two() ? -1.0 : 0.0; }
    double domain_hi() const { return 1.0; }
    bool in_domain(double x) const { return x >= domain_lo() && x <= domain_hi(); }
    /// Spectral statements (simple eigenvalue 1, gap) require parameter > 1.
    bool has_spectral_guarantees() const { return parameter > 1.0; }
};

inline double apply_map(const GaussMapSpec& s, double x) {
    if (!s.in_domain(x)) throw std::domain_error("apply_map: x outside domain");
    if (x == 0.0) return 0.0;
    return s.two() ? frac_part_2(-s.parameter / x) : frac_part_1(s.parameter / x);
}

/// Signed derivative on a branch interior: beta/x^2 (two-sided), -gamma/x^2 (one-sided).
inline double map_derivative(const GaussMapSpec& s, double x) {
    if (!s.in_domain(x)) throw std::domain_error("map_derivative: x outside domain");
    if (x == 0.0) throw std::domain_error("map_derivative: undefined at x=0");
    const double q = s.parameter / (x * x);
    return s.two() ? q : -q;
}

/// Branch index of the point x: the u with x in I_u (two-sided), or v with x in J_v.
/// Two-sided: on I_u the map is 2u - beta/x, i.e. {-beta/x}_2 with even part -2u.
inline long long branch_index_of(const GaussMapSpec& s, double x) {
    if (x == 0.0 || !s.in_domain(x)) throw std::domain_error("branch_index_of: invalid x");
    if (s.two()) return -even_index(-s.parameter / x);
    const double t = s.parameter / x;
    return static_cast<long long>(std::llround(t - frac_part_1(t)));
}

/// Forward map restricted to branch `index` (no domain re-check).
inline double branch_forward(const GaussMapSpec& s, long long index, double x) {
    return s.two() ? 2.0 * static_cast<double>(index) - s.parameter / x
                   : s.parameter / x - static_cast<double>(index);
}

struct Branch {
    long long index;  // u in Z\{0} (two-sided), v >= 1 (one-sided)
    double lo, hi;    // open branch interval, clipped to the domain
    bool complete;    // image is the full open domain
};

struct BranchDecomposition {
    std::vector<Branch> branches; // ordered by interval position, left to right
    long long edge_index;         // u0 = (beta - {beta}_2)/2, or v0 = gamma - {gamma}_1
    bool filling;                 // all enumerated branches complete
};

/// Inverse branch: y -> beta/(2u - y) (two-sided) or y -> gamma/(v + y) (one-sided).
/// Requires y in the closure of the image of branch `index`.
inline double inverse_branch(const GaussMapSpec& s, long long index, double y) {
    const double p = s.parameter;
    double x;
    if (s.two()) {
        if (index == 0) throw std::domain_error("inverse_branch: index 0");
        x = p / (2.0 * static_cast<double>(index) - y);
    } else {
        if (index < 1) throw std::domain_error("inverse_branch: index must be >= 1");
        x = p / (static_cast<double>(index) + y);
    }
    constexpr double tol = 1e-9;
    if (x < s.domain_lo() - tol || x > s.domain_hi() + tol)
        throw std::domain_error("inverse_branch: y outside branch image");
    return std::clamp(x, s.domain_lo(), s.domain_hi());
}

/// Smallest |index| with a nonempty branch interval.
inline long long min_branch_index(const GaussMapSpec& s) {
    const double p = s.parameter;
    if (s.two()) {
        // I_u nonempty (u>0) iff beta/(2u+1) < 1
        long long u = static_cast<long long>(std::floor((p - 1.0) / 2.0)) + 1;
        while (p / (2.0 * u + 1.0) >= 1.0) ++u;
        while (u > 1 && p / (2.0 * (u - 1) + 1.0) < 1.0) --u;
        return u;
    }
    long long v = static_cast<long long>(std::floor(p - 1.0)) + 1;
    while (p / (v + 1.0) >= 1.0) ++v;
    while (v > 1 && p / static_cast<double>(v) < 1.0) --v;
    return v;
}

/// Enumerate the branch decomposition with |index| <= max_index.
inline BranchDecomposition branches(const GaussMapSpec& s, long long max_index = 10000) {
    const double p = s.parameter;
    BranchDecomposition d;
    if (s.two()) {
        d.edge_index = static_cast<long long>(std::llround(0.5 * (p - frac_part_2(p))));
    } else {
        d.edge_index = static_cast<long long>(std::llround(p - frac_part_1(p)));
    }
    const long long first = min_branch_index(s);
    if (max_index < first)
        throw std::invalid_argument("branches: max_index smaller than the edge branch index");
    d.filling = true;
    if (s.two()) {
        for (long long u = -max_index; u <= max_index; ++u) {
            if (u == 0 || std::llabs(u) < first) continue;
            double lo = p / (2.0 * u + 1.0), hi = p / (2.0 * u - 1.0);
            const bool complete = (lo >= -1.0 && hi <= 1.0);
            lo = std::max(lo, -1.0);
            hi = std::min(hi, 1.0);
            if (!(lo < hi)) continue;
            if (!complete) d.filling = false;
            d.branches.push_back({u, lo, hi, complete});
        }
    } else {
        for (long long v = max_index; v >= first; --v) {
            double lo = p / (v + 1.0), hi = p / static_cast<double>(v);
            const bool complete = (hi <= 1.0);
            hi = std::min(hi, 1.0);
            if (!(lo < hi)) continue;
            if (!complete) d.filling = false;
            d.branches.push_back({v, lo, hi, complete});
        }
    }
    std::sort(d.branches.begin(), d.branches.end(),
              [](const Branch& a, const Branch& b) { return a.lo < b.lo; });
    return d;
}

struct Orbit {
    std::vector<double> points;
    bool hit_zero = false;          // iterate landed on 0 (or started there)
    bool hit_endpoint = false;      // iterate landed on a branch endpoint
};

inline Orbit orbit(const GaussMapSpec& s, double x0, int n) {
    Orbit o;
    o.points.reserve(static_cast<size_t>(n) + 1);
    double x = x0;
    o.points.push_back(x);
    for (int i = 0; i < n; ++i) {
        if (x == 0.0) {
            o.hit_zero = true;
            o.points.push_back(0.0);
            x = 0.0;
            continue;
        }
        const double t = s.two() ? -s.parameter / x : s.parameter / x;
        const double f = s.two() ? frac_part_2(t) : frac_part_1(t);
        if (f == 0.0 || (s.two() && f == 1.0)) o.hit_endpoint = true;
        x = f;
        o.points.push_back(x);
    }
    return o;
}

} // namespace gausspf
