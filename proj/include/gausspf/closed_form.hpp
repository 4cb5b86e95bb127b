#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gausspf/maps.hpp"
#include "gausspf/quadrature.hpp"
#include "gausspf/transfer.hpp"

namespace gausspf {

/// Closed-form invariant densities of the Gauss-type maps.
struct ClosedFormDensity {
    enum class Kind { OddBeta, BetaThreeHalves, IntegerGamma, Tau1Infinite };
    Kind kind;
    double parameter;
    double normalizer;     // c(beta), c0, c(gamma); 1 for the infinite-mass case
    bool normalizable;
};

inline bool is_odd_integer_ge3(double b) {
    const double r = std::round(b);
    return std::abs(b - r) < 1e-12 && r >= 3.0 && std::fmod(r, 2.0) == 1.0;
}

/// c(beta) for odd integers beta >= 3: 1/c = int_{-1}^{1} dx/(1-(x/beta)^2)
/// = beta log((beta+1)/(beta-1)).
inline double odd_beta_normalizer(double beta) {
    if (!is_odd_integer_ge3(beta)) throw std::invalid_argument("odd_beta_normalizer: beta must be an odd integer >= 3");
    return 1.0 / (beta * std::log((beta + 1.0) / (beta - 1.0)));
}

inline double density_odd_beta(double beta, double x) {
    const double c = odd_beta_normalizer(beta);
    if (std::abs(x) > 1.0) return 0.0;
    const double q = x / beta;
    return c / (1.0 - q * q);
}

/// Normalizer of the beta=3/2 density. The bracket of the defining piecewise
/// formula integrates to (3/2) log(25/8).
inline double beta_3_2_normalizer() { return 1.0 / (1.5 * std::log(25.0 / 8.0)); }

inline double density_beta_3_2(double x) {
    const double ax = std::abs(x);
    if (ax > 1.0) return 0.0;
    const double c0 = beta_3_2_normalizer();
    if (ax <= 0.5) {
        const double q = 2.0 * x / 3.0;
        return c0 / (1.0 - q * q);
    }
    return c0 * 0.75 / ((1.0 - ax / 3.0) * (1.0 + 2.0 * ax / 3.0));
}

/// c(gamma) for positive integers gamma: 1/c = gamma log(1 + 1/gamma).
inline double integer_gamma_normalizer(double gamma) {
    const double r = std::round(gamma);
    if (std::abs(gamma - r) > 1e-12 || r < 1.0)
        throw std::invalid_argument("integer_gamma_normalizer: gamma must be a positive integer");
    return 1.0 / (gamma * std::log(1.0 + 1.0 / gamma));
}

inline double density_integer_gamma(double gamma, double x) {
    const double c = integer_gamma_normalizer(gamma);
    if (x < 0.0 || x > 1.0) return 0.0;
    return c / (1.0 + x / gamma);
}

/// The infinite-mass invariant density of tau_1: (1-x^2)^{-1} on (-1,1).
inline double density_tau1(double x) {
    if (!(std::abs(x) < 1.0)) throw std::domain_error("density_tau1: |x| < 1 required");
    return 1.0 / (1.0 - x * x);
}

inline ClosedFormDensity make_closed_form(ClosedFormDensity::Kind kind, double parameter = 0.0) {
    using K = ClosedFormDensity::Kind;
    switch (kind) {
        case K::OddBeta: return {kind, parameter, odd_beta_normalizer(parameter), true};
        case K::BetaThreeHalves: return {kind, 1.5, beta_3_2_normalizer(), true};
        case K::IntegerGamma: return {kind, parameter, integer_gamma_normalizer(parameter), true};
        case K::Tau1Infinite: return {kind, 1.0, 1.0, false};
    }
    throw std::logic_error("make_closed_form: bad kind");
}

inline double closed_form_eval(const ClosedFormDensity& d, double x) {
    using K = ClosedFormDensity::Kind;
    switch (d.kind) {
        case K::OddBeta: return density_odd_beta(d.parameter, x);
        case K::BetaThreeHalves: return density_beta_3_2(x);
        case K::IntegerGamma: return density_integer_gamma(d.parameter, x);
        case K::Tau1Infinite: return density_tau1(x);
    }
    throw std::logic_error("closed_form_eval: bad kind");
}

/// Max over stratified sample points of |P f - f| with f evaluated in closed form
/// inside the exact branch series (never from a grid).
inline double residual_invariance(const GaussMapSpec& s, const std::function<double(double)>& f,
                                  int n_samples = 200, long long j_trunc = 20000,
                                  double lo = 0.0, double hi = 0.0) {
    if (lo == 0.0 && hi == 0.0) {
        lo = s.domain_lo();
        hi = s.domain_hi();
    }
    double worst = 0.0;
    for (int q = 0; q < n_samples; ++q) {
        const double x = lo + (hi - lo) * (q + 0.4181) / n_samples;
        if (s.two() && std::abs(x) < 1e-9) continue;
        const double pv = pf_apply_fn(s, f, x, j_trunc).value;
        worst = std::max(worst, std::abs(pv - f(x)));
    }
    return worst;
}

} // namespace gausspf
