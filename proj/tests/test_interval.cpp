#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gausspf/interval_union.hpp"

using namespace gausspf;

TEST_CASE("image of a complete branch is the full domain", "[interval]") {
    auto b3 = GaussMapSpec::two_sided(3.0);
    auto J = IntervalUnion::single(0.6, 1.0); // I_2
    auto img = iterate_interval(b3, J, 1);
    REQUIRE(img.parts.size() == 1);
    CHECK(img.parts[0].first == Catch::Approx(-1.0).margin(1e-12));
    CHECK(img.parts[0].second == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("empty input stays empty", "[interval]") {
    auto b3 = GaussMapSpec::two_sided(3.0);
    IntervalUnion empty;
    auto img = iterate_interval(b3, empty, 1);
    CHECK(img.empty());
}

TEST_CASE("beta=3/2 edge branches", "[interval]") {
    auto s = GaussMapSpec::two_sided(1.5);
    // paper: tau(I_{-u0}) = (beta-2u0, 1) = (-1/2, 1)
    auto img_neg = iterate_interval(s, IntervalUnion::single(-1.0, -0.5), 1);
    REQUIRE(img_neg.parts.size() == 1);
    CHECK(img_neg.parts[0].first == Catch::Approx(-0.5).margin(1e-12));
    CHECK(img_neg.parts[0].second == Catch::Approx(1.0).margin(1e-12));
    // and tau(I_{+u0}) = (-1, 1/2)
    auto img_pos = iterate_interval(s, IntervalUnion::single(0.5, 1.0), 1);
    REQUIRE(img_pos.parts.size() == 1);
    CHECK(img_pos.parts[0].first == Catch::Approx(-1.0).margin(1e-12));
    CHECK(img_pos.parts[0].second == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("tail length is tracked for pieces near zero", "[interval]") {
    auto s = GaussMapSpec::two_sided(2.0);
    auto J = IntervalUnion::single(-1e-7, 1e-7);
    auto img = iterate_interval(s, J, 1, 1000);
    CHECK(img.tail_length > 0.0);
}

TEST_CASE("covering time examples", "[interval]") {
    auto b3 = GaussMapSpec::two_sided(3.0);
    auto t1 = covering_time(b3, IntervalUnion::single(0.6, 1.0), 1e-6, 50);
    REQUIRE(t1.has_value());
    CHECK(*t1 == 1);

    auto t2 = covering_time(b3, IntervalUnion::single(0.61, 0.62), 1e-6, 200);
    REQUIRE(t2.has_value());

    auto s32 = GaussMapSpec::two_sided(1.5);
    auto t3 = covering_time(s32, IntervalUnion::single(-1.0, -0.5), 1e-6, 200);
    REQUIRE(t3.has_value());
    CHECK(*t3 <= 3);

    IntervalUnion empty;
    CHECK_FALSE(covering_time(b3, empty, 1e-6, 10).has_value());
}

TEST_CASE("growth until covering and random covering sweep", "[interval]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (double par : {1.3, 1.5, 2.0, 3.0}) {
        auto s = GaussMapSpec::two_sided(par);
        for (int trial = 0; trial < 20; ++trial) {
            double a = U(rng);
            double len = 1e-3 + 0.5e-3 * (trial % 3);
            if (a + len > 1.0) a = 1.0 - len - 1e-3;
            auto ct = covering_time(s, IntervalUnion::single(a, a + len), 1e-6, 200);
            REQUIRE(ct.has_value());
            // total length is monotone nondecreasing until covering
            IntervalUnion cur = IntervalUnion::single(a, a + len);
            double last = cur.total_length();
            for (int n = 0; n < *ct; ++n) {
                cur = iterate_interval(s, cur, 1);
                const double now = cur.total_length() + cur.tail_length;
                REQUIRE(now >= last - 1e-9);
                last = cur.total_length();
            }
        }
    }
}
