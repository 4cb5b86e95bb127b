#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace gausspf {

using cplx = std::complex<double>;

namespace filon {

/// Moments M_k = int_{-1}^{1} s^k e^{i theta s} ds for k = 0,1,2.
inline void moments(double theta, cplx& M0, cplx& M1, cplx& M2) {
    const double t2 = theta * theta;
    if (std::abs(theta) < 0.4) {
        const double t4 = t2 * t2, t6 = t4 * t2, t8 = t4 * t4, t10 = t8 * t2;
        M0 = cplx(2.0 * (1.0 - t2 / 6.0 + t4 / 120.0 - t6 / 5040.0 + t8 / 362880.0 - t10 / 39916800.0), 0.0);
        M1 = cplx(0.0, 2.0 * theta * (1.0 / 3.0 - t2 / 30.0 + t4 / 840.0 - t6 / 45360.0 + t8 / 3991680.0));
        M2 = cplx(2.0 * (1.0 / 3.0 - t2 / 10.0 + t4 / 168.0 - t6 / 6480.0 + t8 / 443520.0), 0.0);
        return;
    }
    const double s = std::sin(theta), c = std::cos(theta);
    M0 = cplx(2.0 * s / theta, 0.0);
    M1 = cplx(0.0, 2.0 * (s - theta * c) / t2);
    M2 = cplx(2.0 * ((t2 - 2.0) * s + 2.0 * theta * c) / (t2 * theta), 0.0);
}

} // namespace filon

/// One quadratic-Filon panel: int_a^b F(x) e^{i omega x} dx with F fitted by the
/// quadratic through the endpoints and midpoint; exact in the oscillation.
template <typename F>
cplx filon3(F&& f, double a, double b, double omega) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fa = f(a), fm = f(m), fb = f(b);
    const cplx c0 = fm;
    const cplx c1 = 0.5 * (fb - fa);
    const cplx c2 = 0.5 * (fa + fb) - fm;
    cplx M0, M1, M2;
    filon::moments(omega * h, M0, M1, M2);
    return h * std::exp(cplx(0.0, omega * m)) * (c0 * M0 + c1 * M1 + c2 * M2);
}

namespace detail {
template <typename F>
cplx osc_adapt(F& f, double a, double b, double omega, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const cplx left = filon3(f, a, m, omega);
    const cplx right = filon3(f, m, b, omega);
    const cplx both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= tol) return both;
    return osc_adapt(f, a, m, omega, left, 0.5 * tol, depth - 1) +
           osc_adapt(f, m, b, omega, right, 0.5 * tol, depth - 1);
}
} // namespace detail

/// Adaptive oscillatory integral of F(x) e^{i omega x} over [a,b]; F complex-valued,
/// piecewise smooth. tol is an absolute target.
template <typename F>
cplx integrate_osc(F&& f, double a, double b, double omega, double tol = 1e-12, int depth = 40) {
    if (!(b > a)) return {0.0, 0.0};
    // seed with a few panels so the initial error estimate sees the structure
    const int seed = 8;
    cplx total{0.0, 0.0};
    const double w = (b - a) / seed;
    for (int q = 0; q < seed; ++q) {
        const double lo = a + q * w, hi = lo + w;
        total += detail::osc_adapt(f, lo, hi, omega, filon3(f, lo, hi, omega), tol / seed, depth);
    }
    return total;
}

/// Oscillatory tail int_{a}^{sigma * inf} F(x) e^{i omega x} dx for |F| decaying like
/// an inverse power; geometric panels, each panel adaptive, with a first-order
/// boundary correction at the truncation point. sigma = +1 or -1 (direction).
template <typename F>
cplx integrate_osc_tail(F&& f, double a, double omega, int sigma, double tol = 1e-12,
                        double cap = 1e7) {
    if (std::abs(omega) < 1e-14)
        throw std::invalid_argument("integrate_osc_tail: needs a nonzero frequency");
    cplx total{0.0, 0.0};
    double lo = a;
    const double grow = 1.25;
    for (int it = 0; it < 400; ++it) {
        const double hi = std::max(lo * grow, lo + 0.25);
        const double x0 = sigma > 0 ? lo : -hi;
        const double x1 = sigma > 0 ? hi : -lo;
        total += integrate_osc(f, x0, x1, omega, tol * 0.02);
        lo = hi;
        const double xa = sigma > 0 ? lo : -lo;
        const cplx Fx = f(xa);
        if (2.0 * std::abs(Fx) / std::abs(omega) < 0.2 * tol || lo > cap) {
            // first-order integration-by-parts boundary term
            total += -Fx * std::exp(cplx(0.0, omega * xa)) / cplx(0.0, omega) *
                     static_cast<double>(sigma);
            break;
        }
    }
    return total;
}

/// Exact integral of a constant against e^{i omega x} over [a,b].
inline cplx osc_const_cell(double c, double a, double b, double omega) {
    if (omega == 0.0) return {c * (b - a), 0.0};
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    // 2 c e^{i omega m} sin(omega h)/omega, a cancellation-free product form
    return (2.0 * c * std::sin(omega * h) / omega) * std::exp(cplx(0.0, omega * m));
}

} // namespace gausspf
