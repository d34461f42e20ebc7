#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "semiwave/model.hpp"

using namespace semiwave;
using Catch::Approx;

TEST_CASE("params validation", "[model]") {
    Params ok{2.0, -1.0, 0.1, 1.0};
    REQUIRE_NOTHROW(ok.validate());
    REQUIRE_THROWS_AS((Params{1.0, 0.0, 0.1, 1.0}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((Params{2.0, 0.0, 0.0, 1.0}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((Params{2.0, 0.0, 0.1, 0.5}.validate()), std::invalid_argument);
}

TEST_CASE("gauge values", "[model]") {
    REQUIRE(gauge_phi(0.0) == 0.0);
    REQUIRE(gauge_phi(2.0) == Approx(2.0 * std::log(4.0)).epsilon(1e-14));
    REQUIRE(gauge_phi(10.0) > gauge_phi(2.0));
    REQUIRE_THROWS_AS(gauge_phi(-1.0), std::domain_error);

    REQUIRE(gauge_psi(0.0, 2.0) == 0.0);
    const double l4 = std::log(4.0);
    REQUIRE(gauge_psi(2.0, 2.0) == Approx(2.0 * l4 * l4).epsilon(1e-14));
    REQUIRE_THROWS_AS(gauge_psi(-1.0, 2.0), std::domain_error);
    REQUIRE_THROWS_AS(gauge_psi(1.0, 1.0), std::domain_error);

    // p -> 1+ limit reduces psi_p to phi
    REQUIRE(gauge_psi(3.0, 1.0 + 1e-9) == Approx(gauge_phi(3.0)).epsilon(1e-6));
}

TEST_CASE("gauges strictly increasing", "[model]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        double s1 = dist(rng), s2 = dist(rng);
        if (s1 == s2) continue;
        if (s1 > s2) std::swap(s1, s2);
        REQUIRE(gauge_phi(s1) < gauge_phi(s2));
        REQUIRE(gauge_psi(s1, 2.5) < gauge_psi(s2, 2.5));
    }
}

TEST_CASE("invert_gauge round trip", "[model]") {
    auto phi = [](double s) { return gauge_phi(s); };
    REQUIRE(invert_gauge(phi, gauge_phi(2.0), 1e-12) == Approx(2.0).margin(1e-10));
    REQUIRE(invert_gauge(phi, 0.0, 1e-12) == 0.0);

    auto psi2 = [](double s) { return gauge_psi(s, 2.0); };
    const double s_star = invert_gauge(psi2, 100.0, 1e-10);
    REQUIRE(gauge_psi(s_star, 2.0) == Approx(100.0).epsilon(1e-9));

    REQUIRE_THROWS_AS(invert_gauge(phi, std::nan(""), 1e-10), std::domain_error);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1000.0);
    for (int i = 0; i < 100; ++i) {
        const double s = dist(rng);
        const double y = gauge_phi(s);
        REQUIRE(invert_gauge(phi, y, 1e-12) == Approx(s).margin(1e-8 * (1.0 + s)));
    }
}

TEST_CASE("weight three-case formula", "[model]") {
    Params pos{2.0, 1.0, 0.1, 1.0};
    REQUIRE(weight(0.3, 5.7, pos) == 1.0);
    REQUIRE(weight(123.0, 0.0, pos) == 1.0);

    Params zero{2.0, 0.0, 0.1, 1.0};
    REQUIRE(weight(0.0, 0.0, zero) == Approx(1.0 / std::log(3.0)).epsilon(1e-14));

    Params neg{2.0, -1.0, 0.1, 1.0};
    REQUIRE(weight(0.0, 0.0, neg) == Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("weight positive and decreasing where it should be", "[model]") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 40.0);
    for (double a : {-2.0, -1.0, -0.5, 0.0, 0.7, 3.0}) {
        Params P{2.0, a, 0.1, 1.0};
        for (int i = 0; i < 100; ++i) {
            const double r = dist(rng), t = dist(rng);
            REQUIRE(weight(r, t, P) > 0.0);
            if (a <= 0.0) {
                // decreasing in t + r
                REQUIRE(weight(r + 1.0, t + 1.0, P) < weight(r, t, P));
            }
        }
    }
}

TEST_CASE("envelope values", "[model]") {
    Params a2{2.0, 2.0, 0.1, 1.0};
    REQUIRE(envelope_d(5.0, a2) == 1.0);
    Params a0{2.0, 0.0, 0.1, 1.0};
    REQUIRE(envelope_d(0.0, a0) == Approx(std::log(3.0)).epsilon(1e-14));
    Params am1{2.0, -1.0, 0.1, 1.0};
    REQUIRE(envelope_d(2.0, am1) == Approx(4.0).epsilon(1e-14));

    Params e1{2.0, 1.0, 0.1, 1.0};
    REQUIRE(envelope_e(3.0, e1) == Approx(4.0).epsilon(1e-14));
    REQUIRE(envelope_e(0.0, a0) == Approx(std::pow(std::log(3.0), 2.0)).epsilon(1e-14));
    REQUIRE(envelope_e(0.0, am1) == Approx(8.0).epsilon(1e-14));  // (0+2)^{1+2}
}

TEST_CASE("region classification", "[model]") {
    const double R = 1.0;
    REQUIRE(classify_region(0.0, 2.0 * R, R) == Region::Interior);
    REQUIRE(classify_region(0.0, 0.0, R) == Region::Origin);
    REQUIRE(classify_region(R + 1.0, 0.0, R) == Region::OutsideCone);
    REQUIRE(classify_region(1.5, 1.0, R) == Region::Exterior);
    REQUIRE_THROWS_AS(classify_region(0.0, -1.0, R), std::domain_error);
}

TEST_CASE("regions partition the support cone", "[model]") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> xt(-30.0, 30.0);
    std::uniform_real_distribution<double> td(0.0, 30.0);
    const double R = 1.5;
    for (int i = 0; i < 3000; ++i) {
        const double x = xt(rng);
        const double t = td(rng);
        const Region reg = classify_region(x, t, R);
        const double r = std::abs(x);
        if (r > t + R) {
            REQUIRE(reg == Region::OutsideCone);
            continue;
        }
        // inside the cone: exactly one of the three, under the tie order
        REQUIRE(reg != Region::OutsideCone);
        const bool in_int = (t + r >= R) && (t - r >= R);
        const bool in_ori = (t + r <= R);
        const bool in_ext = (t + r >= R) && (std::abs(t - r) <= R);
        REQUIRE((in_int || in_ori || in_ext));
        if (in_int) REQUIRE(reg == Region::Interior);
        else if (in_ori) REQUIRE(reg == Region::Origin);
        else REQUIRE(reg == Region::Exterior);
    }
}

TEST_CASE("zero-integral exponent dominates the nonzero one", "[model]") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pd(1.0 + 1e-6, 4.0);
    std::uniform_real_distribution<double> ad(-5.0, -1e-6);
    for (int i = 0; i < 500; ++i) {
        const double p = pd(rng);
        const double a = ad(rng);
        REQUIRE(1.0 - p * a > 0.0);
        REQUIRE((p - 1.0) / (1.0 - a) < p * (p - 1.0) / (1.0 - p * a));
    }
}
