#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gausspf/maps.hpp"
#include "gausspf/polygamma.hpp"
#include "gausspf/transfer.hpp"

namespace gausspf {

/// Piecewise Chebyshev expansion on a partition of the map domain.
struct PiecewisePoly {
    std::vector<double> breaks; // sorted, size P+1, spanning the domain
    int deg = 0;                // coefficients per piece
    std::vector<double> coef;   // P * deg, Chebyshev basis per piece

    int pieces() const { return static_cast<int>(breaks.size()) - 1; }

    int piece_of(double x) const {
        const int P = pieces();
        for (int p = 0; p < P; ++p)
            if (x <= breaks[static_cast<size_t>(p) + 1] || p == P - 1) return p;
        return P - 1;
    }

    double eval(double x) const {
        if (x < breaks.front() || x > breaks.back()) return 0.0;
        const int p = piece_of(x);
        const double a = breaks[static_cast<size_t>(p)], b = breaks[static_cast<size_t>(p) + 1];
        const double s = (2.0 * x - a - b) / (b - a);
        // Clenshaw
        double b1 = 0.0, b2 = 0.0;
        for (int m = deg - 1; m >= 1; --m) {
            const double t = 2.0 * s * b1 - b2 + coef[static_cast<size_t>(p * deg + m)];
            b2 = b1;
            b1 = t;
        }
        return s * b1 - b2 + coef[static_cast<size_t>(p * deg)];
    }

    double mass() const {
        double total = 0.0;
        for (int p = 0; p < pieces(); ++p) {
            const double hw = 0.5 * (breaks[static_cast<size_t>(p) + 1] - breaks[static_cast<size_t>(p)]);
            for (int m = 0; m < deg; m += 2) {
                const double w = (m == 0) ? 2.0 : 2.0 / (1.0 - static_cast<double>(m) * m);
                total += hw * w * coef[static_cast<size_t>(p * deg + m)];
            }
        }
        return total;
    }

    std::function<double(double)> as_function() const {
        return [self = *this](double x) { return self.eval(x); };
    }
};

/// Interior smoothness breakpoints of the invariant density: the forward orbit
/// of the incomplete-branch image endpoints (+-{beta}_2, or {gamma}_1).
inline std::vector<double> density_breakpoints(const GaussMapSpec& s, int max_orbit = 12) {
    std::vector<double> pts;
    auto push_orbit = [&](double seed) {
        double x = seed;
        for (int i = 0; i < max_orbit; ++i) {
            if (!(x > s.domain_lo() + 1e-12 && x < s.domain_hi() - 1e-12) || std::abs(x) < 1e-12)
                break;
            bool dup = false;
            for (double q : pts)
                if (std::abs(q - x) < 1e-12) dup = true;
            if (!dup) pts.push_back(x);
            x = apply_map(s, x);
        }
    };
    if (s.two()) {
        const double b = frac_part_2(s.parameter);
        if (std::abs(b) < 1.0 - 1e-12) {
            push_orbit(b);
            push_orbit(-b);
            pts.push_back(0.0); // tau(0)=0 convention makes 0 a partition point
        }
    } else {
        const double b = frac_part_1(s.parameter);
        if (b > 1e-12) push_orbit(b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    return pts;
}

struct SpectralDensityResult {
    PiecewisePoly density;
    double collocation_residual = 0.0; // max |P rho - rho| on off-node samples
};

/// High-accuracy invariant density by piecewise-Chebyshev collocation of P rho = rho.
/// Intended for parameters whose branch-endpoint orbit is finite (Markov-like cases,
/// e.g. beta in {3/2, 2, 3} or integer gamma).
inline SpectralDensityResult invariant_density_spectral(const GaussMapSpec& s, int deg = 32,
                                                        long long j_cap = 30000) {
    if (!s.has_spectral_guarantees())
        throw std::invalid_argument("invariant_density_spectral: parameter must be > 1");
    const double p = s.parameter;
    std::vector<double> brk = density_breakpoints(s);
    std::vector<double> edges;
    edges.push_back(s.domain_lo());
    for (double b : brk) edges.push_back(b);
    edges.push_back(s.domain_hi());
    const int P = static_cast<int>(edges.size()) - 1;
    const int N = P * deg;

    // collocation nodes: Chebyshev points per piece
    std::vector<double> nodes(static_cast<size_t>(N));
    for (int pc = 0; pc < P; ++pc) {
        const double a = edges[static_cast<size_t>(pc)], b = edges[static_cast<size_t>(pc) + 1];
        for (int r = 0; r < deg; ++r) {
            const double t = std::cos(M_PI * (r + 0.5) / deg);
            nodes[static_cast<size_t>(pc * deg + r)] = 0.5 * (a + b) + 0.5 * (b - a) * t;
        }
    }

    auto piece_of_pt = [&](double y) {
        for (int pc = 0; pc < P; ++pc)
            if (y <= edges[static_cast<size_t>(pc) + 1]) return pc;
        return P - 1;
    };

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    std::vector<double> Tm(static_cast<size_t>(deg));
    auto cheb_all = [&](double t) {
        Tm[0] = 1.0;
        if (deg > 1) Tm[1] = t;
        for (int m = 2; m < deg; ++m) Tm[static_cast<size_t>(m)] = 2.0 * t * Tm[static_cast<size_t>(m - 1)] - Tm[static_cast<size_t>(m - 2)];
    };

    // add weight * basis(y) to row `row` for the piece containing y
    auto add_point = [&](int row, double y, double weight) {
        if (y < edges.front() || y > edges.back()) return;
        const int pc = piece_of_pt(y);
        const double a = edges[static_cast<size_t>(pc)], b = edges[static_cast<size_t>(pc) + 1];
        cheb_all((2.0 * y - a - b) / (b - a));
        for (int m = 0; m < deg; ++m) A(row, pc * deg + m) += weight * Tm[static_cast<size_t>(m)];
    };

    // tail beyond j_cap: arguments collapse to 0+- inside the adjacent pieces;
    // first-order Taylor of the basis there, trigamma/tetragamma sums for weights
    auto add_tail = [&](int row, double x) {
        auto side = [&](bool positive) {
            if (!s.two() && !positive) return;
            // the piece adjacent to zero on this side
            const int pz = piece_of_pt(positive ? 1e-300 : -1e-300);
            if (pz < 0) return;
            const double a = edges[static_cast<size_t>(pz)], b = edges[static_cast<size_t>(pz) + 1];
            const double s0 = (0.0 - 0.5 * (a + b)) / (0.5 * (b - a));
            const double dsdy = 2.0 / (b - a);
            double S2, S3;
            if (s.two()) {
                if (positive) {
                    S2 = 0.25 * p * trigamma(j_cap + 1.0 - 0.5 * x);
                    S3 = -p * p * tetragamma(j_cap + 1.0 - 0.5 * x) / 16.0;
                } else {
                    S2 = 0.25 * p * trigamma(j_cap + 1.0 + 0.5 * x);
                    S3 = p * p * tetragamma(j_cap + 1.0 + 0.5 * x) / 16.0; // arguments -y
                }
            } else {
                S2 = p * trigamma(j_cap + 1.0 + x);
                S3 = p * p * sum_inv_cube(x, j_cap + 1);
            }
            // basis value and first derivative at 0 on this side
            cheb_all(s0);
            std::vector<double> T0 = Tm;
            // dT_m/ds at s0 via U_{m-1}
            std::vector<double> dT(static_cast<size_t>(deg), 0.0);
            {
                double um2 = 1.0, um1 = 2.0 * s0; // U_0, U_1
                if (deg > 1) dT[1] = 1.0;
                for (int m = 2; m < deg; ++m) {
                    dT[static_cast<size_t>(m)] = m * um1;
                    const double u = 2.0 * s0 * um1 - um2;
                    um2 = um1;
                    um1 = u;
                }
            }
            for (int m = 0; m < deg; ++m) {
                const double w = S2 * T0[static_cast<size_t>(m)] + S3 * dT[static_cast<size_t>(m)] * dsdy;
                A(row, pz * deg + m) += w;
            }
        };
        side(true);
        if (s.two()) side(false);
    };

    for (int row = 0; row < N; ++row) {
        const double x = nodes[static_cast<size_t>(row)];
        if (s.two()) {
            for (long long j = 1; j <= j_cap; ++j) {
                const double dp = 2.0 * j - x, dm = 2.0 * j + x;
                add_point(row, p / dp, p / (dp * dp));
                add_point(row, -p / dm, p / (dm * dm));
            }
        } else {
            for (long long v = 1; v <= j_cap; ++v) {
                const double d = v + x;
                add_point(row, p / d, p / (d * d));
            }
        }
        add_tail(row, x);
    }

    // solve (A - V) c = 0 with unit mass, as a stacked least-squares system;
    // V evaluates the basis at the collocation nodes (block Chebyshev Vandermonde)
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(N, N);
    for (int row = 0; row < N; ++row) {
        const int pc = row / deg;
        const double a = edges[static_cast<size_t>(pc)], b = edges[static_cast<size_t>(pc) + 1];
        cheb_all((2.0 * nodes[static_cast<size_t>(row)] - a - b) / (b - a));
        for (int m = 0; m < deg; ++m) V(row, pc * deg + m) = Tm[static_cast<size_t>(m)];
    }
    Eigen::MatrixXd B(N + 1, N);
    B.topRows(N) = A - V;
    for (int pc = 0; pc < P; ++pc) {
        const double hw = 0.5 * (edges[static_cast<size_t>(pc) + 1] - edges[static_cast<size_t>(pc)]);
        for (int m = 0; m < deg; ++m) {
            double w = 0.0;
            if (m % 2 == 0) w = (m == 0) ? 2.0 : 2.0 / (1.0 - static_cast<double>(m) * m);
            B(N, pc * deg + m) = hw * w;
        }
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + 1);
    rhs(N) = 1.0;
    Eigen::VectorXd c = B.colPivHouseholderQr().solve(rhs);

    SpectralDensityResult out;
    out.density.breaks = edges;
    out.density.deg = deg;
    out.density.coef.assign(c.data(), c.data() + N);

    // off-node residual check against the exact series
    auto fn = out.density.as_function();
    double worst = 0.0;
    const int samples = 160;
    for (int q = 0; q < samples; ++q) {
        const double x = s.domain_lo() + (s.domain_hi() - s.domain_lo()) * (q + 0.37) / samples;
        if (s.two() && std::abs(x) < 1e-6) continue;
        const double pv = pf_apply_fn(s, fn, x, 20000).value;
        worst = std::max(worst, std::abs(pv - fn(x)));
    }
    out.collocation_residual = worst;
    return out;
}

} // namespace gausspf
