#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gausspf/fracpart.hpp"

using namespace gausspf;

TEST_CASE("frac_part_1 values", "[fracpart]") {
    CHECK(frac_part_1(2.25) == Catch::Approx(0.25).margin(1e-15));
    CHECK(frac_part_1(-0.25) == Catch::Approx(0.75).margin(1e-15));
    CHECK(frac_part_1(0.0) == 0.0);
    CHECK(frac_part_1(1.0) == 0.0);
    CHECK(frac_part_1(-3.0) == 0.0);
}

TEST_CASE("frac_part_2 values", "[fracpart]") {
    CHECK(frac_part_2(3.5) == Catch::Approx(-0.5).margin(1e-15));
    CHECK(frac_part_2(1.0) == 1.0);
    CHECK(frac_part_2(-1.0) == 1.0);
    CHECK(frac_part_2(0.0) == 0.0);
    CHECK(frac_part_2(2.0) == 0.0);
    CHECK(frac_part_2(-3.0) == 1.0);
}

TEST_CASE("non-finite input rejected", "[fracpart]") {
    CHECK_THROWS(frac_part_1(std::numeric_limits<double>::infinity()));
    CHECK_THROWS(frac_part_2(std::numeric_limits<double>::quiet_NaN()));
}

TEST_CASE("integer-part properties", "[fracpart]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-50.0, 50.0);
    for (int i = 0; i < 5000; ++i) {
        const double t = U(rng);
        const double r1 = frac_part_1(t), r2 = frac_part_2(t);
        REQUIRE(r1 >= 0.0);
        REQUIRE(r1 < 1.0);
        REQUIRE(r2 > -1.0);
        REQUIRE(r2 <= 1.0);
        const double k1 = t - r1, k2 = 0.5 * (t - r2);
        const double ulp = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(t));
        REQUIRE(std::abs(k1 - std::round(k1)) <= ulp);
        REQUIRE(std::abs(k2 - std::round(k2)) <= ulp);
    }
}
