#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gausspf/polygamma.hpp"
#include "gausspf/series_sums.hpp"

namespace gausspf {

/// Read-only view over several disjoint grid pieces (e.g. f1 on [-1,1] plus the
/// two halves of f2 on the collar).
struct GridView {
    std::vector<const GridDensity*> parts;

    double eval(double x) const {
        for (auto* g : parts) {
            const double v = g->eval(x);
            if (x >= g->lo && x < g->hi) return v;
        }
        return 0.0;
    }
    double sup() const {
        double s = 0.0;
        for (auto* g : parts) s = std::max(s, g->sup());
        return s;
    }
    double mass() const {
        double s = 0.0;
        for (auto* g : parts) s += g->mass();
        return s;
    }
    double l1() const {
        double s = 0.0;
        for (auto* g : parts) s += g->l1();
        return s;
    }
};

struct LatticeSumResult {
    double value;
    double tail_bound;
};

/// S* h(x) = sum_{k in Z^x} h(x+2k) for a far-field closure with a quadratic
/// decay envelope |h(y)| <= C/y^2; truncated with the envelope tail bound.
inline LatticeSumResult s_star(const std::function<double(double)>& h, double decay_C, double x,
                               long long k_trunc = 10000) {
    double val = 0.0;
    for (long long k = 1; k <= k_trunc; ++k) {
        val += h(x + 2.0 * k) + h(x - 2.0 * k);
    }
    const double tail = decay_C * 0.25 *
        (trigamma(k_trunc + 1.0 + 0.5 * x) + trigamma(k_trunc + 1.0 - 0.5 * x));
    return {val, tail};
}

/// Finite lattice sum sum_{k in Z^x} f2(x+2k) for collar-supported grid content.
inline double sstar_f2(double beta, const GridView& f2, double x) {
    const long long K = static_cast<long long>(std::ceil(0.5 * (beta + 1.0))) + 1;
    double val = 0.0;
    for (long long k = 1; k <= K; ++k) val += f2.eval(x + 2.0 * k) + f2.eval(x - 2.0 * k);
    return val;
}

/// Half-line: sum_{k>=1} f2(x+k), f2 supported in [1,gamma].
inline double sstar_f2_half(double gamma, const GridView& f2, double x) {
    const long long K = static_cast<long long>(std::ceil(gamma)) + 1;
    double val = 0.0;
    for (long long k = 1; k <= K; ++k) val += f2.eval(x + static_cast<double>(k));
    return val;
}

/// T* h(x) = sum_{j in Z^x} beta^2/(beta+2jx)^2 h(beta x/(beta+2jx)) for grid
/// content on [-beta,beta]; exact via the cell-grouped Moebius sum at t = beta/x.
inline double tstar_full(double beta, const GridView& h, double x) {
    if (!(std::abs(x) > beta)) throw std::domain_error("tstar_full: |x| > beta required");
    const double t = beta / x;
    double val = 0.0;
    for (auto* g : h.parts) val += mobius_sum_two(beta, *g, -t);
    return val * t * t / beta;
}

inline double tstar_full_half(double gamma, const GridView& h, double x) {
    if (!(x > gamma)) throw std::domain_error("tstar_full_half: x > gamma required");
    const double t = gamma / x;
    double val = 0.0;
    for (auto* g : h.parts) val += mobius_sum_one(gamma, *g, t);
    return val * t * t / gamma;
}

/// T* restricted to collar content (f2): only the finitely many branches whose
/// arguments can reach [-beta,-1] u [1,beta] contribute.
inline double tstar_f2(double beta, const GridView& f2, double x) {
    if (!(std::abs(x) > beta)) throw std::domain_error("tstar_f2: |x| > beta required");
    const double t = beta / x;
    const long long J = static_cast<long long>(std::ceil(0.5 * (beta + 1.0)));
    double val = 0.0;
    for (long long j = -J; j <= J; ++j) {
        if (j == 0) continue;
        const double d = t + 2.0 * j;
        val += t * t / (d * d) * f2.eval(beta / d);
    }
    return val;
}

inline double tstar_f2_half(double gamma, const GridView& f2, double x) {
    if (!(x > gamma)) throw std::domain_error("tstar_f2_half: x > gamma required");
    const double t = gamma / x;
    const long long V = static_cast<long long>(std::ceil(gamma));
    double val = 0.0;
    for (long long v = 1; v <= V; ++v) {
        const double d = t + static_cast<double>(v);
        val += t * t / (d * d) * f2.eval(gamma / d);
    }
    return val;
}

/// T* of callable content on [-beta,beta] with one-sided Taylor tails at 0.
inline double tstar_fn(double beta, const std::function<double(double)>& h, double x,
                       long long j_trunc = 10000) {
    if (!(std::abs(x) > beta)) throw std::domain_error("tstar_fn: |x| > beta required");
    const double t = beta / x;
    double val = 0.0;
    for (long long j = 1; j <= j_trunc; ++j) {
        const double dp = t + 2.0 * j, dm = t - 2.0 * j;
        const double yp = beta / dp, ym = beta / dm;
        if (std::abs(yp) <= beta) val += t * t / (dp * dp) * h(yp);
        if (std::abs(ym) <= beta) val += t * t / (dm * dm) * h(ym);
    }
    const double e = 1e-6;
    const double h0p = h(e), h0m = h(-e);
    const double h1p = (h(2.0 * e) - h0p) / e, h1m = (h0m - h(-2.0 * e)) / e;
    val += t * t * (h0p * 0.25 * trigamma(j_trunc + 1.0 + 0.5 * t) -
                    h1p * beta * tetragamma(j_trunc + 1.0 + 0.5 * t) / 16.0);
    val += t * t * (h0m * 0.25 * trigamma(j_trunc + 1.0 - 0.5 * t) +
                    h1m * beta * tetragamma(j_trunc + 1.0 - 0.5 * t) / 16.0);
    return val;
}

inline double tstar_fn_half(double gamma, const std::function<double(double)>& h, double x,
                            long long j_trunc = 10000) {
    if (!(x > gamma)) throw std::domain_error("tstar_fn_half: x > gamma required");
    const double t = gamma / x;
    double val = 0.0;
    for (long long v = 1; v <= j_trunc; ++v) {
        const double d = t + static_cast<double>(v);
        const double y = gamma / d;
        if (y <= gamma) val += t * t / (d * d) * h(y);
    }
    const double e = 1e-6;
    const double h0 = h(e);
    const double h1 = (h(2.0 * e) - h0) / e;
    val += t * t * (h0 * trigamma(j_trunc + 1.0 + t) + h1 * gamma * sum_inv_cube(t, j_trunc + 1));
    return val;
}

/// Exact composition S* R1* T* R3* f2 (x in [-1,1]): the lattice sum over shifts
/// of T* f2 is grouped per (branch j, z-sign block, f2 cell) into contiguous
/// shift ranges summed by trigamma pairs. No truncation anywhere.
inline double sstar_T_f2(double beta, const GridView& f2, double x) {
    double total = 0.0;
    const long long J = static_cast<long long>(std::ceil(0.5 * (beta + 1.0)));
    for (auto* g : f2.parts) {
        const double dxc = g->dx();
        for (int c = 0; c < g->n(); ++c) {
            const double cv = g->v[static_cast<size_t>(c)];
            if (cv == 0.0) continue;
            const double a = g->lo + c * dxc, b = a + dxc;
            for (long long j = -J; j <= J; ++j) {
                if (j == 0) continue;
                // w = beta/(t+2j) in [a,b)  <=>  t in (beta/b - 2j, beta/a - 2j]
                const double tau1_raw = beta / b - 2.0 * j;
                const double tau2_raw = beta / a - 2.0 * j;
                for (int sg : {+1, -1}) {
                    // t-window on this z-sign block; z = beta/t is decreasing on it,
                    // so t in (tau1,tau2] maps to z in [beta/tau2, beta/tau1)
                    const double tau1 = std::max(tau1_raw, sg > 0 ? 0.0 : -1.0);
                    const double tau2 = std::min(tau2_raw, sg > 0 ? 1.0 : 0.0);
                    if (!(tau1 < tau2)) continue;
                    const bool lo_inf = (tau2 == 0.0);  // negative block only
                    const bool hi_inf = (tau1 == 0.0);  // positive block only
                    const double zlo = lo_inf ? 0.0 : beta / tau2;
                    const double zhi = hi_inf ? 0.0 : beta / tau1;
                    // shift range: z = x + 2k in [zlo, zhi)
                    long long k1 = 0, k2 = 0;
                    if (!lo_inf) k1 = static_cast<long long>(std::ceil((zlo - x) * 0.5));
                    if (!hi_inf) k2 = static_cast<long long>(std::ceil((zhi - x) * 0.5)) - 1;
                    if (!lo_inf && !hi_inf && k2 < k1) continue;
                    // sum of beta^2/((beta+2jx)+4jk)^2 = (beta^2/16j^2) sum 1/(k+cj)^2;
                    // k+cj = (beta+2jz_k)/(4j) is positive on the positive block and
                    // negative on the negative block, uniformly in j.
                    const double cj = (beta + 2.0 * j * x) / (4.0 * j);
                    double S;
                    if (sg > 0) {
                        S = sum_inv_sq(cj, k1, hi_inf ? -1 : k2);
                    } else {
                        S = sum_inv_sq(-cj, -k2, lo_inf ? -1 : -k1);
                    }
                    total += cv * beta * beta / (16.0 * j * j) * S;
                }
            }
        }
    }
    return total;
}

/// Half-line analogue S+* R5* T+* R7* f2 (x in [0,1]); unit-step lattice.
inline double sstar_T_f2_half(double gamma, const GridView& f2, double x) {
    double total = 0.0;
    const long long V = static_cast<long long>(std::ceil(gamma));
    for (auto* g : f2.parts) {
        const double dxc = g->dx();
        for (int c = 0; c < g->n(); ++c) {
            const double cv = g->v[static_cast<size_t>(c)];
            if (cv == 0.0) continue;
            const double a = g->lo + c * dxc, b = a + dxc;
            for (long long v = 1; v <= V; ++v) {
                // w = gamma/(t+v) in [a,b) <=> t in (gamma/b - v, gamma/a - v], t in (0,1)
                const double tau1 = std::max(gamma / b - static_cast<double>(v), 0.0);
                const double tau2 = std::min(gamma / a - static_cast<double>(v), 1.0);
                if (!(tau1 < tau2)) continue;
                const double zlo = gamma / tau2;
                const bool z_inf = !(tau1 > 0.0);
                const double zhi = z_inf ? 0.0 : gamma / tau1;
                long long k1 = static_cast<long long>(std::ceil(zlo - x));
                k1 = std::max(k1, 1LL);
                long long k2 = z_inf ? -1 : static_cast<long long>(std::floor(zhi - x));
                if (!z_inf && k2 < k1) continue;
                const double cv_shift = (gamma + static_cast<double>(v) * x) / static_cast<double>(v);
                total += cv * gamma * gamma / static_cast<double>(v * v) *
                         sum_inv_sq(cv_shift, k1, z_inf ? -1 : k2);
            }
        }
    }
    return total;
}

/// Far-field pullback G(u) = (T* h)(beta/u) * beta/u^2 = sum_j beta/(u+2j)^2 h(beta/(u+2j)).
inline double farfield_G(double beta, const GridView& h, double u) {
    double val = 0.0;
    for (auto* g : h.parts) val += mobius_sum_two(beta, *g, -u);
    return val;
}

inline double farfield_G_half(double gamma, const GridView& h, double u) {
    double val = 0.0;
    for (auto* g : h.parts) val += mobius_sum_one(gamma, *g, u);
    return val;
}

} // namespace gausspf
