#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gausspf {

namespace detail {
// Bernoulli numbers B_2..B_14
constexpr double kB2 = 1.0 / 6.0, kB4 = -1.0 / 30.0, kB6 = 1.0 / 42.0, kB8 = -1.0 / 30.0,
                 kB10 = 5.0 / 66.0, kB12 = -691.0 / 2730.0, kB14 = 7.0 / 6.0;
constexpr double kAsymptoticCut = 14.0;
} // namespace detail

/// Trigamma psi_1(x) = sum_{k>=0} 1/(x+k)^2, x > 0.
inline double trigamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma: requires x > 0");
    double acc = 0.0;
    while (x < detail::kAsymptoticCut) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double u = 1.0 / (x * x);
    using namespace detail;
    double s = 1.0 + u * (kB2 + u * (kB4 + u * (kB6 + u * (kB8 + u * (kB10 + u * (kB12 + u * kB14))))));
    return acc + (1.0 / x) * s + 0.5 * u; // 1/x * (1 + B-series in 1/x^2) + 1/(2x^2)
}

/// Tetragamma psi_2(x) = -2 sum_{k>=0} 1/(x+k)^3, x > 0.
inline double tetragamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("tetragamma: requires x > 0");
    double acc = 0.0;
    while (x < detail::kAsymptoticCut) {
        acc -= 2.0 / (x * x * x);
        x += 1.0;
    }
    const double u = 1.0 / (x * x);
    using namespace detail;
    // d/dx of the trigamma asymptotic series
    double s = -u - u / x - u * u *
        (3.0 * kB2 + u * (5.0 * kB4 + u * (7.0 * kB6 + u * (9.0 * kB8 + u * (11.0 * kB10 + u * (13.0 * kB12 + u * 15.0 * kB14))))));
    return acc + s;
}

/// psi(x+e) - psi(x) for x > 0, 0 <= e <= 1, computed without cancellation:
/// equals sum_{k>=0} e / ((x+k)(x+e+k)).
inline double digamma_diff(double x, double e) {
    if (!(x > 0.0)) throw std::domain_error("digamma_diff: requires x > 0");
    if (e == 0.0) return 0.0;
    double acc = 0.0;
    while (x < detail::kAsymptoticCut) {
        acc += e / (x * (x + e));
        x += 1.0;
    }
    // psi(z) ~ ln z - 1/(2z) - sum B_{2k}/(2k z^{2k}); take the difference stably.
    const double r = e / x;
    double d = std::log1p(r);
    d += 0.5 * (1.0 / x - 1.0 / (x + e));
    using namespace detail;
    const double c[7] = {kB2 / 2.0, kB4 / 4.0, kB6 / 6.0, kB8 / 8.0, kB10 / 10.0, kB12 / 12.0, kB14 / 14.0};
    double xp = 1.0 / (x * x);
    const double l = std::log1p(r);
    for (int k = 1; k <= 7; ++k) {
        // x^{-2k} - (x+e)^{-2k} = x^{-2k} (1 - exp(-2k ln(1+e/x)))
        d += c[k - 1] * xp * (-std::expm1(-2.0 * k * l));
        xp /= (x * x);
    }
    return acc + d;
}

/// Sum_{n=n1..n2} 1/(n+a)^2, requiring n1+a > 0; n2 < n1 gives 0, n2 = LLONG-like
/// sentinel (negative) means infinity.
inline double sum_inv_sq(double a, long long n1, long long n2 = -1) {
    if (n2 >= 0 && n2 < n1) return 0.0;
    const double head = trigamma(static_cast<double>(n1) + a);
    if (n2 < 0) return head;
    return head - trigamma(static_cast<double>(n2) + 1.0 + a);
}

/// Sum_{n=n1..n2} 1/(n+a)^3, requiring n1+a > 0; n2 < 0 means infinity.
inline double sum_inv_cube(double a, long long n1, long long n2 = -1) {
    if (n2 >= 0 && n2 < n1) return 0.0;
    const double head = -0.5 * tetragamma(static_cast<double>(n1) + a);
    if (n2 < 0) return head;
    return head + 0.5 * tetragamma(static_cast<double>(n2) + 1.0 + a);
}

/// Sum_{n=n1..n2} [1/(n+a) - 1/(n+a+e)] with e >= 0, n1+a > 0; n2 < 0 means infinity.
inline double sum_inv_diff(double a, double e, long long n1, long long n2 = -1) {
    if (n2 >= 0 && n2 < n1) return 0.0;
    const double head = digamma_diff(static_cast<double>(n1) + a, e);
    if (n2 < 0) return head;
    return head - digamma_diff(static_cast<double>(n2) + 1.0 + a, e);
}

} // namespace gausspf
