#pragma once

#include <cmath>
#include <stdexcept>

namespace gausspf {

/// Fractional part {t}_1 in [0,1) with t - {t}_1 an integer.
inline double frac_part_1(double t) {
    if (!std::isfinite(t)) throw std::domain_error("frac_part_1: non-finite input");
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r = 0.0;
    return r;
}

/// Even fractional part {t}_2 in (-1,1] with t - {t}_2 an even integer.
inline double frac_part_2(double t) {
    if (!std::isfinite(t)) throw std::domain_error("frac_part_2: non-finite input");
    double r = t - 2.0 * std::ceil(0.5 * (t - 1.0));
    if (r <= -1.0) r += 2.0;
    if (r > 1.0) r -= 2.0;
    return r;
}

/// Even integer part: t - frac_part_2(t), returned as the integer k with t - 2k = {t}_2.
inline long long even_index(double t) {
    return static_cast<long long>(std::llround(0.5 * (t - frac_part_2(t))));
}

} // namespace gausspf
