#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gausspf/maps.hpp"

namespace gausspf {

/// Sorted union of disjoint open intervals within a map domain, with the total
/// length of untracked near-zero remnants (branches beyond the index cap)
/// carried along so covering checks stay conservative.
struct IntervalUnion {
    std::vector<std::pair<double, double>> parts; // sorted, disjoint
    double tail_length = 0.0;

    static constexpr double kMergeGap = 1e-14;

    void normalize() {
        std::sort(parts.begin(), parts.end());
        std::vector<std::pair<double, double>> out;
        for (auto& p : parts) {
            if (!(p.second > p.first)) continue;
            if (!out.empty() && p.first <= out.back().second + kMergeGap)
                out.back().second = std::max(out.back().second, p.second);
            else
                out.push_back(p);
        }
        parts.swap(out);
    }

    double total_length() const {
        double s = 0.0;
        for (auto& p : parts) s += p.second - p.first;
        return s;
    }

    bool empty() const { return parts.empty(); }

    /// True if the union covers the closed interval [lo,hi] without gaps.
    bool covers(double lo, double hi) const {
        double reach = lo;
        for (auto& p : parts) {
            if (p.first > reach + kMergeGap) {
                if (reach >= hi) return true;
                if (p.first > hi) break;
                return false;
            }
            reach = std::max(reach, p.second);
            if (reach >= hi) return true;
        }
        return reach >= hi;
    }

    static IntervalUnion single(double lo, double hi) {
        IntervalUnion u;
        if (hi > lo) u.parts.push_back({lo, hi});
        return u;
    }
};

namespace detail {

/// Exact forward image of one interval piece under one map step; appends to out.
inline void image_of_piece(const GaussMapSpec& s, double a, double b, long long max_index,
                           IntervalUnion& out) {
    const double p = s.parameter;
    const double cut = s.two() ? p / (2.0 * static_cast<double>(max_index) + 1.0)
                               : p / (static_cast<double>(max_index) + 1.0);
    // Handles one sign side; (lo,hi) are magnitudes, the actual piece is
    // sign*(lo,hi). The part below the index cap is booked as untracked tail.
    auto handle_side = [&](double lo, double hi, int sign) {
        if (!(lo < hi)) return;
        if (lo < cut) {
            out.tail_length += std::min(hi, cut) - lo;
            lo = cut;
            if (!(lo < hi)) return;
        }
        const double eps = 1e-13 * (hi - lo) + 1e-300;
        long long m_near = std::llabs(branch_index_of(s, sign * (lo + eps)));
        long long m_far = std::llabs(branch_index_of(s, sign * (hi - eps)));
        long long ua = std::max(std::min(m_near, m_far) - 1, min_branch_index(s));
        long long ub = std::min(std::max(m_near, m_far) + 1, max_index);
        const double xa_piece = sign > 0 ? lo : -hi;
        const double xb_piece = sign > 0 ? hi : -lo;
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
            blo = std::max(blo, s.domain_lo());
            bhi = std::min(bhi, s.domain_hi());
            const double xa = std::max(xa_piece, blo);
            const double xb = std::min(xb_piece, bhi);
            if (!(xa < xb)) continue;
            double y1 = branch_forward(s, idx, xa);
            double y2 = branch_forward(s, idx, xb);
            if (y1 > y2) std::swap(y1, y2);
            y1 = std::max(y1, s.domain_lo());
            y2 = std::min(y2, s.domain_hi());
            if (y1 < y2) out.parts.push_back({y1, y2});
        }
    };
    if (s.two()) {
        if (b > 0.0) handle_side(std::max(a, 0.0), b, +1);
        if (a < 0.0) handle_side(-std::min(b, 0.0), -a, -1);
    } else {
        handle_side(std::max(a, 0.0), b, +1);
    }
}

} // namespace detail

/// Exact n-step forward image of an interval union, branch by branch.
inline IntervalUnion iterate_interval(const GaussMapSpec& s, const IntervalUnion& J, int n,
                                      long long max_index = 10000) {
    IntervalUnion cur = J;
    cur.normalize();
    for (int step = 0; step < n; ++step) {
        IntervalUnion next;
        next.tail_length = cur.tail_length;
        for (auto& piece : cur.parts)
            detail::image_of_piece(s, piece.first, piece.second, max_index, next);
        next.normalize();
        if (next.parts.size() > 200000)
            throw std::runtime_error("iterate_interval: interval count blow-up");
        cur = std::move(next);
    }
    return cur;
}

/// Least n <= n_max with tau^n(J) covering (lo+delta, hi-delta); nullopt if not reached.
inline std::optional<int> covering_time(const GaussMapSpec& s, const IntervalUnion& J,
                                        double delta, int n_max, long long max_index = 10000) {
    if (J.empty()) return std::nullopt;
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("covering_time: bad delta");
    const double lo = s.domain_lo() + delta, hi = s.domain_hi() - delta;
    IntervalUnion cur = J;
    cur.normalize();
    if (cur.covers(lo, hi)) return 0;
    for (int n = 1; n <= n_max; ++n) {
        IntervalUnion next;
        next.tail_length = cur.tail_length;
        for (auto& piece : cur.parts)
            detail::image_of_piece(s, piece.first, piece.second, max_index, next);
        next.normalize();
        cur = std::move(next);
        if (cur.covers(lo, hi)) return n;
        if (cur.empty()) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace gausspf
