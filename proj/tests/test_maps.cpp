#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gausspf/maps.hpp"

using namespace gausspf;

namespace {
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);
}

TEST_CASE("apply_map examples", "[maps]") {
    auto b3 = GaussMapSpec::two_sided(3.0);
    CHECK(apply_map(b3, 0.9) == Catch::Approx(2.0 / 3.0).margin(1e-14));
    CHECK(apply_map(b3, 0.0) == 0.0);

    auto g1 = GaussMapSpec::one_sided(1.0);
    CHECK(apply_map(g1, kGolden) == Catch::Approx(kGolden).margin(1e-14));

    CHECK_THROWS(apply_map(b3, 1.5));
}

TEST_CASE("derivative", "[maps]") {
    auto b3 = GaussMapSpec::two_sided(3.0);
    CHECK(map_derivative(b3, 1.0) == Catch::Approx(3.0));
    CHECK(map_derivative(b3, 0.9) == Catch::Approx(3.0 / 0.81));
    auto g2 = GaussMapSpec::one_sided(2.0);
    CHECK(map_derivative(g2, 1.0) == Catch::Approx(-2.0));
    CHECK_THROWS(map_derivative(b3, 0.0));
}

TEST_CASE("expansiveness and distortion bounds", "[maps]") {
    std::mt19937 rng(11);
    for (double par : {1.3, 1.5, 2.0, 3.0}) {
        auto s = GaussMapSpec::two_sided(par);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        for (int i = 0; i < 2000; ++i) {
            double x = U(rng);
            if (std::abs(x) < 1e-6) continue;
            const double d = map_derivative(s, x);
            REQUIRE(std::abs(d) >= par - 1e-12);
            // |tau''|/|tau'|^2 = 2|x|/beta <= 2
            const double ratio = 2.0 * std::abs(x) / par;
            REQUIRE(ratio <= 2.0 + 1e-12);
        }
    }
}

TEST_CASE("branch decomposition examples", "[maps]") {
    SECTION("beta=3 (odd): I_2 = (0.6,1), complete, filling") {
        auto d = branches(GaussMapSpec::two_sided(3.0), 50);
        REQUIRE(d.filling);
        CHECK(d.edge_index == 1); // formula value (beta - {beta}_2)/2; branch list starts at |u|=2
        const Branch* i2 = nullptr;
        for (auto& b : d.branches)
            if (b.index == 2) i2 = &b;
        REQUIRE(i2 != nullptr);
        CHECK(i2->lo == Catch::Approx(0.6));
        CHECK(i2->hi == Catch::Approx(1.0));
        CHECK(i2->complete);
        for (auto& b : d.branches) REQUIRE(std::llabs(b.index) >= 2);
    }
    SECTION("beta=3/2: u0=1, I_1=(1/2,1) incomplete") {
        auto d = branches(GaussMapSpec::two_sided(1.5), 50);
        CHECK(d.edge_index == 1);
        CHECK_FALSE(d.filling);
        const Branch* i1 = nullptr;
        for (auto& b : d.branches)
            if (b.index == 1) i1 = &b;
        REQUIRE(i1 != nullptr);
        CHECK(i1->lo == Catch::Approx(0.5));
        CHECK(i1->hi == Catch::Approx(1.0));
        CHECK_FALSE(i1->complete);
    }
    SECTION("gamma=2: J_2 = (2/3,1), complete") {
        auto d = branches(GaussMapSpec::one_sided(2.0), 50);
        CHECK(d.edge_index == 2);
        REQUIRE(d.filling);
        const Branch* j2 = nullptr;
        for (auto& b : d.branches)
            if (b.index == 2) j2 = &b;
        REQUIRE(j2 != nullptr);
        CHECK(j2->lo == Catch::Approx(2.0 / 3.0));
        CHECK(j2->hi == Catch::Approx(1.0));
        CHECK(j2->complete);
    }
    SECTION("max_index too small") {
        CHECK_THROWS(branches(GaussMapSpec::two_sided(9.0), 2));
    }
    SECTION("branch intervals are disjoint and ordered") {
        for (double par : {1.5, 2.0, 2.7}) {
            auto d = branches(GaussMapSpec::two_sided(par), 200);
            for (size_t i = 1; i < d.branches.size(); ++i)
                REQUIRE(d.branches[i - 1].hi <= d.branches[i].lo + 1e-12);
        }
    }
}

TEST_CASE("inverse_branch examples", "[maps]") {
    auto b3 = GaussMapSpec::two_sided(3.0);
    CHECK(inverse_branch(b3, 2, 2.0 / 3.0) == Catch::Approx(0.9));
    CHECK(inverse_branch(b3, -2, 0.0) == Catch::Approx(-0.75));
    auto g1 = GaussMapSpec::one_sided(1.0);
    CHECK(inverse_branch(g1, 1, kGolden) == Catch::Approx(kGolden).margin(1e-14));
}

TEST_CASE("inverse o forward round trips", "[maps]") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    for (double par : {1.5, 2.0, 3.0}) {
        for (auto kind : {0, 1}) {
            GaussMapSpec s = kind == 0 ? GaussMapSpec::two_sided(par) : GaussMapSpec::one_sided(par);
            auto d = branches(s, 40);
            for (auto& b : d.branches) {
                // image of the branch
                double ylo = branch_forward(s, b.index, b.lo);
                double yhi = branch_forward(s, b.index, b.hi);
                if (ylo > yhi) std::swap(ylo, yhi);
                ylo = std::max(ylo, s.domain_lo());
                yhi = std::min(yhi, s.domain_hi());
                for (int t = 0; t < 50; ++t) {
                    const double y = ylo + (yhi - ylo) * U01(rng);
                    const double x = inverse_branch(s, b.index, y);
                    REQUIRE(x >= b.lo - 1e-12);
                    REQUIRE(x <= b.hi + 1e-12);
                    REQUIRE(std::abs(apply_map(s, x) - y) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("branch_index_of is consistent with intervals", "[maps]") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto s = GaussMapSpec::two_sided(2.0);
    auto d = branches(s, 2000);
    for (int i = 0; i < 3000; ++i) {
        const double x = U(rng);
        if (std::abs(x) < 1e-3) continue;
        const long long u = branch_index_of(s, x);
        const double blo = 2.0 / (2.0 * u + 1.0), bhi = 2.0 / (2.0 * u - 1.0);
        REQUIRE(x >= std::min(blo, bhi) - 1e-12);
        REQUIRE(x <= std::max(blo, bhi) + 1e-12);
    }
    (void)d;
}

TEST_CASE("orbit", "[maps]") {
    auto g1 = GaussMapSpec::one_sided(1.0);
    auto o = orbit(g1, kGolden, 3);
    for (double x : o.points) CHECK(x == Catch::Approx(kGolden).margin(1e-12));

    auto b3 = GaussMapSpec::two_sided(3.0);
    auto oz = orbit(b3, 0.0, 5);
    REQUIRE(oz.points.size() == 6);
    for (double x : oz.points) CHECK(x == 0.0);
    CHECK(oz.hit_zero);

    auto o9 = orbit(b3, 0.9, 2);
    CHECK(o9.points[0] == Catch::Approx(0.9));
    CHECK(o9.points[1] == Catch::Approx(2.0 / 3.0));
    CHECK(o9.points[2] == Catch::Approx(-0.5));
}

TEST_CASE("spec construction rules", "[maps]") {
    CHECK_THROWS(GaussMapSpec::two_sided(0.0));
    CHECK_THROWS(GaussMapSpec::one_sided(0.5));
    CHECK_FALSE(GaussMapSpec::two_sided(1.0).has_spectral_guarantees());
    CHECK(GaussMapSpec::two_sided(1.5).has_spectral_guarantees());
}
