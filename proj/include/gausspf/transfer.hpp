#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gausspf/grid.hpp"
#include "gausspf/maps.hpp"
#include "gausspf/polygamma.hpp"
#include "gausspf/quadrature.hpp"
#include "gausspf/series_sums.hpp"

namespace gausspf {

struct PfValue {
    double value;
    double tail_bound; // conservative bound on the truncated remainder
};

/// Perron-Frobenius operator applied to a function, truncated branch series plus
/// a polygamma tail built from the one-sided values of f at 0.
/// Two-sided: sum_{j in Z^x} beta/(2j-x)^2 f(beta/(2j-x)); one-sided:
/// sum_{v>=1} gamma/(v+x)^2 f(gamma/(v+x)).
inline PfValue pf_apply_fn(const GaussMapSpec& s, const std::function<double(double)>& f,
                           double x, long long j_trunc = 10000) {
    const double p = s.parameter;
    if (x == 0.0 && s.two()) throw std::domain_error("pf_apply_fn: x=0");
    if (!s.in_domain(x)) throw std::domain_error("pf_apply_fn: x outside domain");
    const double e = 1e-6;
    double val = 0.0;
    double supf = 0.0;
    if (s.two()) {
        for (long long j = 1; j <= j_trunc; ++j) {
            const double dp = 2.0 * j - x, dm = 2.0 * j + x;
            const double yp = p / dp, ym = -p / dm;
            // f is understood to vanish off the domain
            const double fp = std::abs(yp) <= 1.0 ? f(yp) : 0.0;
            const double fm = std::abs(ym) <= 1.0 ? f(ym) : 0.0;
            val += p / (dp * dp) * fp + p / (dm * dm) * fm;
            if (j <= 4) supf = std::max({supf, std::abs(fp), std::abs(fm)});
        }
        const double f0p = f(e), f0m = f(-e);
        const double f1p = (f(2.0 * e) - f0p) / e;
        const double f1m = (f0m - f(-2.0 * e)) / e;
        const double s2p = 0.25 * trigamma(j_trunc + 1.0 - 0.5 * x);
        const double s2m = 0.25 * trigamma(j_trunc + 1.0 + 0.5 * x);
        const double s3p = -tetragamma(j_trunc + 1.0 - 0.5 * x) / 16.0;
        const double s3m = -tetragamma(j_trunc + 1.0 + 0.5 * x) / 16.0;
        val += f0p * p * s2p + f1p * p * p * s3p;
        val += f0m * p * s2m - f1m * p * p * s3m;
        supf = std::max({supf, std::abs(f0p), std::abs(f0m)});
        const double coarse = supf * p / std::max(1.0, static_cast<double>(j_trunc) - 1.0);
        return {val, coarse};
    }
    for (long long v = 1; v <= j_trunc; ++v) {
        const double d = v + x;
        const double y = p / d;
        const double fv = y <= 1.0 ? f(y) : 0.0;
        val += p / (d * d) * fv;
        if (v <= 4) supf = std::max(supf, std::abs(fv));
    }
    const double f0 = f(e);
    const double f1 = (f(2.0 * e) - f0) / e;
    val += f0 * p * trigamma(j_trunc + 1.0 + x) + f1 * p * p * sum_inv_cube(x, j_trunc + 1);
    supf = std::max(supf, std::abs(f0));
    const double coarse = supf * p / std::max(1.0, static_cast<double>(j_trunc));
    return {val, coarse};
}

/// Exact PF application to a piecewise-constant grid density: the branch series
/// is grouped cell by cell and summed in closed form (trigamma pairs), so there
/// is no index truncation at all.
inline double pf_apply_grid(const GaussMapSpec& s, const GridDensity& g, double x) {
    if (x == 0.0 && s.two()) throw std::domain_error("pf_apply_grid: x=0");
    return s.two() ? mobius_sum_two(s.parameter, g, x) : mobius_sum_one(s.parameter, g, x);
}

/// Row-stochastic Ulam discretization. Entries are exact: the direct branch loop
/// runs to an internal cap and the remaining countably many branches near the
/// origin are summed in closed form, so every row sums to 1 to ~1e-13.
struct UlamOperator {
    GaussMapSpec spec{GaussMapSpec::Kind::TwoSided, 2.0};
    int nc = 0;
    double lo = 0.0, hi = 1.0;
    std::vector<std::vector<std::pair<int, double>>> rows;
    double max_row_defect = 0.0;
    long long direct_cap = 0;

    double dx() const { return (hi - lo) / nc; }

    std::vector<double> apply_left(const std::vector<double>& rho) const {
        std::vector<double> out(static_cast<size_t>(nc), 0.0);
        for (int i = 0; i < nc; ++i) {
            const double r = rho[static_cast<size_t>(i)];
            if (r == 0.0) continue;
            for (auto& [k, w] : rows[static_cast<size_t>(i)]) out[static_cast<size_t>(k)] += r * w;
        }
        return out;
    }

    GridDensity apply(const GridDensity& g) const {
        if (g.n() != nc) throw std::invalid_argument("UlamOperator::apply: grid size mismatch");
        GridDensity out(lo, hi, nc);
        out.v = apply_left(g.v);
        out.refresh_l1();
        return out;
    }
};

namespace detail {

// Accumulate, into scratch, the source-measure of C_i \cap tau^{-1}(C_k) for all k,
// for the sub-piece of row cell [xa,xb] lying inside branch `idx` (already clipped).
inline void ulam_branch_piece(const GaussMapSpec& s, long long idx, double xa, double xb,
                              double lo, double dx, int nc, std::vector<double>& scratch,
                              std::vector<int>& touched) {
    double y1 = branch_forward(s, idx, xa);
    double y2 = branch_forward(s, idx, xb);
    if (y1 > y2) std::swap(y1, y2);
    y1 = std::max(y1, lo);
    y2 = std::min(y2, lo + nc * dx);
    if (!(y1 < y2)) return;
    int k1 = std::clamp(static_cast<int>((y1 - lo) / dx), 0, nc - 1);
    int k2 = std::clamp(static_cast<int>((y2 - lo) / dx), 0, nc - 1);
    for (int k = k1; k <= k2; ++k) {
        const double ya = std::max(y1, lo + k * dx);
        const double yb = std::min(y2, lo + (k + 1) * dx);
        if (!(ya < yb)) continue;
        const double w = std::abs(inverse_branch(s, idx, yb) - inverse_branch(s, idx, ya));
        if (scratch[static_cast<size_t>(k)] == 0.0) touched.push_back(k);
        scratch[static_cast<size_t>(k)] += w;
    }
}

} // namespace detail

inline UlamOperator build_ulam(const GaussMapSpec& s, int n_cells, long long max_index = 10000) {
    if (n_cells < 2) throw std::invalid_argument("build_ulam: n_cells >= 2 required");
    UlamOperator W;
    W.spec = s;
    W.nc = n_cells;
    W.lo = s.domain_lo();
    W.hi = s.domain_hi();
    W.rows.assign(static_cast<size_t>(n_cells), {});
    const double p = s.parameter;
    const double dx = W.dx();
    const long long umin = min_branch_index(s);
    long long U = static_cast<long long>(std::ceil(0.5 * std::sqrt(p * n_cells)));
    U = std::max({U, umin + 2, 16LL});
    U = std::min(U, max_index);
    W.direct_cap = U;
    const double cut = s.two() ? p / (2.0 * U + 1.0) : p / (U + 1.0);

    std::vector<double> scratch(static_cast<size_t>(n_cells), 0.0);
    std::vector<int> touched;
    touched.reserve(1024);

    // Closed-form aggregate of all branches with |index| >= m1 (magnitudes),
    // whose intervals lie inside the current piece, accumulated over all targets.
    auto aggregate_full = [&](int sign, long long m1, long long m2) {
        for (int k = 0; k < n_cells; ++k) {
            const double c = W.lo + k * dx, d = c + dx;
            double w;
            if (s.two()) {
                w = sign > 0 ? 0.5 * p * sum_inv_diff(-0.5 * d, 0.5 * dx, m1, m2)
                             : 0.5 * p * sum_inv_diff(0.5 * c, 0.5 * dx, m1, m2);
            } else {
                w = p * sum_inv_diff(c, dx, m1, m2);
            }
            if (w != 0.0) {
                if (scratch[static_cast<size_t>(k)] == 0.0) touched.push_back(k);
                scratch[static_cast<size_t>(k)] += w;
            }
        }
    };

    for (int i = 0; i < n_cells; ++i) {
        const double pcell = W.lo + i * dx, qcell = pcell + dx;
        touched.clear();

        auto do_side = [&](double mlo, double mhi, int sign) {
            if (!(mlo < mhi)) return;
            // direct zone: magnitudes in [max(mlo,cut), mhi]
            double dlo = std::max(mlo, cut);
            if (dlo < mhi) {
                const double eps = 1e-13 * (mhi - dlo) + 1e-300;
                long long m_near = std::llabs(branch_index_of(s, sign * (dlo + eps)));
                long long m_far = std::llabs(branch_index_of(s, sign * (mhi - eps)));
                long long ua = std::max(std::min(m_near, m_far) - 1, umin);
                long long ub = std::max(m_near, m_far) + 1;
                for (long long m = ua; m <= ub; ++m) {
                    const long long idx = s.two() ? sign * m : m;
                    double blo, bhi;
                    if (s.two()) {
                        blo = p / (2.0 * static_cast<double>(idx) + 1.0);
                        bhi = p / (2.0 * static_cast<double>(idx) - 1.0);
                    } else {
                        blo = p / (static_cast<double>(idx) + 1.0);
                        bhi = p / static_cast<double>(idx);
                    }
                    const double xa = std::max(sign > 0 ? dlo : -mhi, std::max(blo, W.lo));
                    const double xb = std::min(sign > 0 ? mhi : -dlo, std::min(bhi, W.hi));
                    if (!(xa < xb)) continue;
                    detail::ulam_branch_piece(s, idx, xa, xb, W.lo, dx, n_cells, scratch, touched);
                }
            }
            // aggregation zone: magnitudes in [mlo, min(mhi,cut))
            double alo = mlo, ahi = std::min(mhi, cut);
            if (alo < ahi) {
                const double eps = 1e-13 * (ahi - alo) + 1e-300;
                auto branch_piece_clipped = [&](long long mmag) {
                    const long long idx = s.two() ? sign * mmag : mmag;
                    double blo, bhi;
                    if (s.two()) {
                        blo = p / (2.0 * static_cast<double>(idx) + 1.0);
                        bhi = p / (2.0 * static_cast<double>(idx) - 1.0);
                    } else {
                        blo = p / (static_cast<double>(idx) + 1.0);
                        bhi = p / static_cast<double>(idx);
                    }
                    const double xa = std::max(sign > 0 ? alo : -ahi, blo);
                    const double xb = std::min(sign > 0 ? ahi : -alo, bhi);
                    if (xa < xb)
                        detail::ulam_branch_piece(s, idx, xa, xb, W.lo, dx, n_cells, scratch, touched);
                };
                // outer boundary: if the zone stops short of the cut, the branch
                // containing the outer edge is partial and the full range starts
                // below it; at the cut itself the edge is an exact branch boundary.
                long long m_start;
                if (ahi >= cut - 1e-300) {
                    m_start = U + 1;
                } else {
                    const long long m_a = std::llabs(branch_index_of(s, sign * (ahi - eps)));
                    branch_piece_clipped(m_a);
                    m_start = m_a + 1;
                }
                // inner boundary: branch containing the inner edge is partial unless
                // the piece reaches 0 (then the full range runs to infinity).
                long long m_hi = alo > 0.0 ? std::llabs(branch_index_of(s, sign * (alo + eps))) : -1;
                if (m_hi > 0 && m_hi >= m_start) branch_piece_clipped(m_hi);
                const long long full_hi = (m_hi < 0) ? -1 : m_hi - 1;
                if (full_hi < 0 || full_hi >= m_start) aggregate_full(sign, m_start, full_hi);
            }
        };

        if (s.two()) {
            if (qcell > 0.0) do_side(std::max(pcell, 0.0), qcell, +1);
            if (pcell < 0.0) do_side(-std::min(qcell, 0.0), -pcell, -1);
        } else {
            do_side(std::max(pcell, 0.0), qcell, +1);
        }

        auto& row = W.rows[static_cast<size_t>(i)];
        row.reserve(touched.size());
        double rs = 0.0;
        for (int k : touched) {
            const double w = scratch[static_cast<size_t>(k)] / dx;
            scratch[static_cast<size_t>(k)] = 0.0;
            if (w != 0.0) row.push_back({k, w});
            rs += w;
        }
        std::sort(row.begin(), row.end());
        W.max_row_defect = std::max(W.max_row_defect, std::abs(rs - 1.0));
    }
    return W;
}

struct PowerIterateResult {
    GridDensity density;
    double residual_l1 = 0.0;
    int iterations = 0;
};

inline PowerIterateResult power_iterate(const UlamOperator& W, double tol = 1e-13,
                                        int max_iter = 20000) {
    const int n = W.nc;
    std::vector<double> rho(static_cast<size_t>(n), 1.0 / (W.hi - W.lo));
    double diff = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<double> next = W.apply_left(rho);
        double mass = 0.0;
        for (double a : next) mass += a;
        mass *= W.dx();
        for (double& a : next) a /= mass;
        diff = 0.0;
        for (int k = 0; k < n; ++k) diff += std::abs(next[static_cast<size_t>(k)] - rho[static_cast<size_t>(k)]);
        diff *= W.dx();
        rho.swap(next);
        if (diff <= tol) break;
    }
    if (diff > tol) throw std::runtime_error("power_iterate: no convergence within max_iter");
    PowerIterateResult r;
    r.density = GridDensity(W.lo, W.hi, n);
    r.density.v = rho;
    for (double& a : r.density.v) a = std::max(a, 0.0);
    r.density.normalize_mass();
    std::vector<double> img = W.apply_left(r.density.v);
    double res = 0.0;
    for (int k = 0; k < n; ++k) res += std::abs(img[static_cast<size_t>(k)] - r.density.v[static_cast<size_t>(k)]);
    r.residual_l1 = res * W.dx();
    r.iterations = it + 1;
    return r;
}

struct SpectralSummary {
    std::vector<std::complex<double>> eigenvalues; // sorted by modulus, descending
    double gap = 0.0;                              // 1 - |lambda_2|
    GridDensity invariant_density;
    double residual = 0.0; // ||P rho - rho||_1
};

/// Leading k eigenvalues by modulus via orthogonal (block power) iteration with a
/// small Ritz eigenproblem; the invariant density comes from power_iterate.
inline SpectralSummary leading_spectrum(const UlamOperator& W, int k, int max_iter = 3000,
                                        double tol = 1e-12, unsigned seed = 12345) {
    if (k < 1) throw std::invalid_argument("leading_spectrum: k >= 1");
    const int n = W.nc;
    k = std::min(k, n);
    auto pr = power_iterate(W);

    std::mt19937 rng(seed);
    std::normal_distribution<double> N01(0.0, 1.0);
    std::vector<std::vector<double>> X(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(n)));
    X[0] = pr.density.v;
    for (int a = 1; a < k; ++a)
        for (int j = 0; j < n; ++j) X[static_cast<size_t>(a)][static_cast<size_t>(j)] = N01(rng);

    auto orthonormalize = [&](std::vector<std::vector<double>>& B) {
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < a; ++b) {
                double d = 0.0;
                for (int j = 0; j < n; ++j) d += B[a][j] * B[b][j];
                for (int j = 0; j < n; ++j) B[a][j] -= d * B[b][j];
            }
            double nrm = 0.0;
            for (int j = 0; j < n; ++j) nrm += B[a][j] * B[a][j];
            nrm = std::sqrt(nrm);
            if (nrm < 1e-300) nrm = 1.0;
            for (int j = 0; j < n; ++j) B[a][j] /= nrm;
        }
    };
    orthonormalize(X);

    std::vector<std::complex<double>> prev(static_cast<size_t>(k), 0.0);
    std::vector<std::complex<double>> ritz(static_cast<size_t>(k), 0.0);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<std::vector<double>> Y(static_cast<size_t>(k));
        for (int a = 0; a < k; ++a) Y[static_cast<size_t>(a)] = W.apply_left(X[static_cast<size_t>(a)]);
        Eigen::MatrixXd H(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                double d = 0.0;
                for (int j = 0; j < n; ++j) d += Y[a][j] * X[b][j];
                H(a, b) = d;
            }
        Eigen::EigenSolver<Eigen::MatrixXd> es(H);
        for (int a = 0; a < k; ++a) ritz[static_cast<size_t>(a)] = es.eigenvalues()(a);
        std::sort(ritz.begin(), ritz.end(),
                  [](auto u, auto v) { return std::abs(u) > std::abs(v); });
        double change = 0.0;
        for (int a = 0; a < k; ++a) change += std::abs(ritz[static_cast<size_t>(a)] - prev[static_cast<size_t>(a)]);
        prev = ritz;
        X.swap(Y);
        orthonormalize(X);
        if (it > 20 && change < tol) break;
    }

    SpectralSummary out;
    out.eigenvalues = ritz;
    out.invariant_density = pr.density;
    out.residual = pr.residual_l1;
    out.gap = k >= 2 ? 1.0 - std::abs(ritz[1]) : 1.0;
    return out;
}

/// Dense full-spectrum oracle (Eigen EigenSolver); intended for n <= ~2048.
inline std::vector<std::complex<double>> dense_spectrum(const UlamOperator& W, int k) {
    const int n = W.nc;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (auto& [j, w] : W.rows[static_cast<size_t>(i)]) M(i, j) = w;
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    std::vector<std::complex<double>> ev(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = es.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
    ev.resize(static_cast<size_t>(std::min(k, n)));
    return ev;
}

/// Z h = P h - <h,1> rho0 (rank-one deflation of the grid transfer operator).
inline GridDensity deflate_Z(const UlamOperator& W, const GridDensity& h, const GridDensity& rho0) {
    GridDensity out = W.apply(h);
    const double m = h.mass();
    for (int k = 0; k < out.n(); ++k) out.v[static_cast<size_t>(k)] -= m * rho0.v[static_cast<size_t>(k)];
    out.refresh_l1();
    return out;
}

/// (I - Z^2)^{-1} h by the Neumann series sum Z^{2m} h, for mean-zero h.
inline GridDensity neumann_inverse_Z2(const UlamOperator& W, const GridDensity& h,
                                      const GridDensity& rho0, double tol = 1e-10,
                                      int max_terms = 400) {
    if (std::abs(h.mass()) > std::max(tol * (1.0 + h.l1()), 1e-300) * 10.0)
        throw std::invalid_argument("neumann_inverse_Z2: input is not mean-zero within tol");
    GridDensity y = h, t = h;
    for (int m = 0; m < max_terms; ++m) {
        t = deflate_Z(W, deflate_Z(W, t, rho0), rho0);
        for (int k = 0; k < y.n(); ++k) y.v[static_cast<size_t>(k)] += t.v[static_cast<size_t>(k)];
        if (t.l1() < tol) {
            y.refresh_l1();
            return y;
        }
    }
    throw std::runtime_error("neumann_inverse_Z2: no convergence within max_terms");
}

/// |<P f, g> - <f, g o tau>| with two independent evaluation routes:
/// route 1 integrates the truncated-series P f against g on panels; route 2
/// integrates f (g o tau) branch by branch with a polygamma-exact near-zero tail.
inline double duality_residual(const GaussMapSpec& s, const std::function<double(double)>& f,
                               const std::function<double(double)>& g, long long j_trunc = 10000) {
    const double p = s.parameter;
    const double lo = s.domain_lo(), hi = s.domain_hi();
    // route 1 (adaptive: P f is only piecewise smooth for piecewise-smooth f)
    const double I1 = integrate(
        [&](double x) {
            if (s.two() && x == 0.0) x = 1e-14;
            return pf_apply_fn(s, f, x, j_trunc).value * g(x);
        },
        lo, hi, 1e-10, {0.0});
    // route 2
    double I2 = 0.0;
    {
        const long long U2 = 2000;
        auto piece = [&](long long idx) {
            double blo, bhi;
            if (s.two()) {
                blo = p / (2.0 * static_cast<double>(idx) + 1.0);
                bhi = p / (2.0 * static_cast<double>(idx) - 1.0);
            } else {
                blo = p / (static_cast<double>(idx) + 1.0);
                bhi = p / static_cast<double>(idx);
            }
            blo = std::max(blo, lo);
            bhi = std::min(bhi, hi);
            if (!(blo < bhi)) return;
            auto integrand = [&](double x) { return f(x) * g(branch_forward(s, idx, x)); };
            // every branch sweeps the whole domain, so g may vary over its full
            // range even on tiny branches; adaptive throughout
            I2 += integrate(integrand, blo, bhi, 1e-13);
        };
        const long long umin = min_branch_index(s);
        for (long long m = umin; m <= U2; ++m) {
            piece(m);
            if (s.two()) piece(-m);
        }
        // tail: branches beyond U2, f Taylor-expanded at 0
        const double e = 1e-6;
        if (s.two()) {
            const double f0p = f(e), f0m = f(-e);
            const double f1p = (f(2.0 * e) - f0p) / e, f1m = (f0m - f(-2.0 * e)) / e;
            I2 += integrate(
                [&](double y) {
                    const double s2p = 0.25 * trigamma(U2 + 1.0 - 0.5 * y);
                    const double s3p = -tetragamma(U2 + 1.0 - 0.5 * y) / 16.0;
                    const double s2m = 0.25 * trigamma(U2 + 1.0 + 0.5 * y);
                    const double s3m = -tetragamma(U2 + 1.0 + 0.5 * y) / 16.0;
                    return g(y) * (f0p * p * s2p + f1p * p * p * s3p + f0m * p * s2m - f1m * p * p * s3m);
                },
                lo, hi, 1e-13);
        } else {
            const double f0 = f(e), f1 = (f(2.0 * e) - f0) / e;
            I2 += integrate(
                [&](double y) {
                    return g(y) * (f0 * p * trigamma(U2 + 1.0 + y) + f1 * p * p * sum_inv_cube(y, U2 + 1));
                },
                lo, hi, 1e-13);
        }
    }
    return std::abs(I1 - I2);
}

} // namespace gausspf
