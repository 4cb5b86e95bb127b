#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gausspf/closed_form.hpp"
#include "gausspf/quadrature.hpp"

using namespace gausspf;

TEST_CASE("normalizers match their defining integrals", "[closed_form]") {
    // odd beta
    for (double beta : {3.0, 5.0, 7.0}) {
        const double I = integrate([&](double x) { return 1.0 / (1.0 - x * x / (beta * beta)); }, -1.0, 1.0, 1e-13);
        CHECK(1.0 / I == Catch::Approx(odd_beta_normalizer(beta)).epsilon(1e-10));
        const double mass = integrate([&](double x) { return density_odd_beta(beta, x); }, -1.0, 1.0, 1e-13);
        CHECK(mass == Catch::Approx(1.0).margin(1e-10));
    }
    // beta = 3/2 (bracket integrates to (3/2)log(25/8))
    {
        const double c0 = beta_3_2_normalizer();
        const double I = integrate([](double x) { return density_beta_3_2(x); }, -1.0, 1.0, 1e-13, {-0.5, 0.5});
        CHECK(I == Catch::Approx(1.0).margin(1e-10));
        CHECK(1.0 / c0 == Catch::Approx(1.5 * std::log(25.0 / 8.0)).epsilon(1e-14));
    }
    // integer gamma
    for (double g : {1.0, 2.0, 3.0}) {
        const double mass = integrate([&](double x) { return density_integer_gamma(g, x); }, 0.0, 1.0, 1e-13);
        CHECK(mass == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("pointwise density values", "[closed_form]") {
    const double c3 = odd_beta_normalizer(3.0);
    CHECK(c3 == Catch::Approx(0.4808983469629878).epsilon(1e-12)); // 1/(3 ln 2)
    CHECK(density_odd_beta(3.0, 0.0) == Catch::Approx(c3));
    CHECK(density_odd_beta(3.0, 1.0) == Catch::Approx(9.0 * c3 / 8.0));
    CHECK(density_odd_beta(3.0, -1.0) == Catch::Approx(9.0 * c3 / 8.0));

    const double c0 = beta_3_2_normalizer();
    CHECK(density_beta_3_2(0.0) == Catch::Approx(c0));
    // the density jumps at |x| = 1/2: left piece c0*9/8, right piece c0*27/40
    CHECK(density_beta_3_2(0.5) == Catch::Approx(c0 * 9.0 / 8.0));
    CHECK(density_beta_3_2(0.5 + 1e-12) == Catch::Approx(c0 * 27.0 / 40.0).epsilon(1e-6));
    CHECK(density_beta_3_2(0.3) == density_beta_3_2(-0.3));

    CHECK(density_integer_gamma(1.0, 0.0) == Catch::Approx(1.0 / std::log(2.0)).epsilon(1e-13));
    CHECK(density_integer_gamma(1.0, 1.0) == Catch::Approx(0.5 / std::log(2.0)).epsilon(1e-13));

    CHECK(density_tau1(0.0) == 1.0);
    CHECK(density_tau1(0.9) == Catch::Approx(1.0 / 0.19));
    CHECK_THROWS(density_tau1(1.0));

    CHECK_THROWS(odd_beta_normalizer(4.0));
    CHECK_THROWS(integer_gamma_normalizer(1.5));
}

TEST_CASE("tau_1 density has logarithmically divergent mass", "[closed_form]") {
    auto partial = [](double eps) {
        return integrate([](double x) { return density_tau1(x); }, -1.0 + eps, 1.0 - eps, 1e-12);
    };
    auto exact = [](double eps) { return std::log((2.0 - eps) / eps); }; // 2 artanh(1-eps)
    const double i2 = partial(1e-2), i4 = partial(1e-4);
    CHECK(i2 == Catch::Approx(exact(1e-2)).epsilon(1e-10));
    CHECK(i4 == Catch::Approx(exact(1e-4)).epsilon(1e-10));
    CHECK(i4 - i2 == Catch::Approx(std::log(1e2)).epsilon(5e-3)); // logarithmic growth
}

TEST_CASE("positivity on the open domain", "[closed_form]") {
    for (int q = 0; q < 200; ++q) {
        const double x = -0.999 + 1.998 * q / 199.0;
        CHECK(density_odd_beta(3.0, x) > 0.0);
        CHECK(density_beta_3_2(x) > 0.0);
        if (x >= 0.0) CHECK(density_integer_gamma(2.0, x) > 0.0);
    }
}

TEST_CASE("closed forms are fixed by the exact transfer operator", "[closed_form]") {
    SECTION("beta=3") {
        auto s = GaussMapSpec::two_sided(3.0);
        const double r = residual_invariance(s, [](double x) { return density_odd_beta(3.0, x); });
        CHECK(r <= 1e-8);
    }
    SECTION("beta=3/2") {
        auto s = GaussMapSpec::two_sided(1.5);
        const double r = residual_invariance(s, [](double x) { return density_beta_3_2(x); });
        CHECK(r <= 1e-8);
    }
    SECTION("gamma=1 (Gauss measure)") {
        auto s = GaussMapSpec::one_sided(1.0);
        const double r = residual_invariance(s, [](double x) { return density_integer_gamma(1.0, x); });
        CHECK(r <= 1e-8);
        // spot value: P f(0.5) = f(0.5) ~ 0.9618
        const double v = pf_apply_fn(s, [](double x) { return density_integer_gamma(1.0, x); }, 0.5).value;
        CHECK(v == Catch::Approx(0.9617966939).epsilon(1e-8));
    }
    SECTION("gamma=2") {
        auto s = GaussMapSpec::one_sided(2.0);
        const double r = residual_invariance(s, [](double x) { return density_integer_gamma(2.0, x); });
        CHECK(r <= 1e-8);
    }
    SECTION("beta=1 infinite-mass density away from the indifferent point") {
        auto s = GaussMapSpec::two_sided(1.0);
        const double r = residual_invariance(s, [](double x) { return std::abs(x) < 1.0 ? density_tau1(x) : 0.0; },
                                             150, 20000, -0.9, 0.9);
        CHECK(r <= 1e-6);
    }
}
