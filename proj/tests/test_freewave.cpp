#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "semiwave/freewave.hpp"

using namespace semiwave;
using Catch::Approx;

TEST_CASE("free wave at t=0 is f", "[freewave]") {
    const auto d = make_data(DataFamily::GPositive, 1.0, 0.7, 1.0);
    for (double x : {-0.9, -0.2, 0.0, 0.4, 0.99, 2.0})
        REQUIRE(free_wave(x, 0.0, d) == Approx(d.f(x)).margin(1e-15));
}

TEST_CASE("covered support gives half the total integral", "[freewave]") {
    // f == 0, g the positive bump: once [x-t, x+t] covers the support the
    // value is integral_g / 2 = 128/315
    const auto d = make_data(DataFamily::GPositive, 1.0, 0.0, 1.0);
    for (auto [x, t] : {std::pair{0.0, 2.0}, {0.5, 3.0}, {-1.0, 4.0}}) {
        REQUIRE(x - t <= -1.0);
        REQUIRE(x + t >= 1.0);
        REQUIRE(free_wave(x, t, d) == Approx(128.0 / 315.0).epsilon(1e-14));
    }
}

TEST_CASE("zero-mean data vanish inside the shifted cone", "[freewave]") {
    const auto d = make_data(DataFamily::GZeroOdd, 1.0, 0.4, 1.0);
    for (auto [x, t] : {std::pair{0.0, 2.0}, {0.7, 3.0}, {-2.0, 4.0}})
        REQUIRE(free_wave(x, t, d) == Approx(0.0).margin(1e-15));
}

TEST_CASE("finite propagation speed", "[freewave]") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> td(0.0, 8.0);
    std::uniform_real_distribution<double> pad(0.01, 3.0);
    for (auto fam : {DataFamily::GPositive, DataFamily::GZeroOdd, DataFamily::FPositiveGZero}) {
        const auto d = make_data(fam, 1.0, 1.0, fam == DataFamily::FPositiveGZero ? 0.0 : 1.0);
        for (int i = 0; i < 100; ++i) {
            const double t = td(rng);
            const double x = (t + d.R + pad(rng)) * (i % 2 ? 1.0 : -1.0);
            REQUIRE(free_wave(x, t, d) == 0.0);
        }
    }
}

TEST_CASE("symmetry decomposition", "[freewave]") {
    // even f, even g: fully even
    const auto dpos = make_data(DataFamily::GPositive, 1.0, 0.6, 1.0);
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> xd(0.0, 4.0);
    std::uniform_real_distribution<double> td(0.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double x = xd(rng), t = td(rng);
        REQUIRE(free_wave(-x, t, dpos) == Approx(free_wave(x, t, dpos)).margin(1e-14));
    }
    // even f, odd g: even part is the f average, odd part is the g integral
    const auto dodd = make_data(DataFamily::GZeroOdd, 1.0, 0.6, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = xd(rng), t = td(rng);
        const double even = 0.5 * (free_wave(x, t, dodd) + free_wave(-x, t, dodd));
        const double odd = 0.5 * (free_wave(x, t, dodd) - free_wave(-x, t, dodd));
        REQUIRE(even == Approx(0.5 * (dodd.f(x + t) + dodd.f(x - t))).margin(1e-14));
        REQUIRE(odd == Approx(0.5 * (dodd.g_antiderivative(x + t) -
                                     dodd.g_antiderivative(x - t)))
                           .margin(1e-14));
    }
}

TEST_CASE("free wave satisfies the diamond identity", "[freewave]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> xd(-5.0, 5.0);
    std::uniform_real_distribution<double> td(0.5, 6.0);
    std::uniform_real_distribution<double> hd(0.01, 0.4);
    for (auto fam : {DataFamily::GPositive, DataFamily::GZeroOdd}) {
        const auto d = make_data(fam, 1.0, 0.8, 1.0);
        for (int i = 0; i < 200; ++i) {
            const double x = xd(rng), t = td(rng), h = hd(rng);
            const double lhs = free_wave(x, t + h, d) + free_wave(x, t - h, d);
            const double rhs = free_wave(x + h, t, d) + free_wave(x - h, t, d);
            REQUIRE(lhs == Approx(rhs).margin(1e-10));
        }
    }
}

TEST_CASE("huygens check", "[freewave]") {
    const auto dodd = make_data(DataFamily::GZeroOdd, 1.0, 0.5, 1.0);
    REQUIRE(huygens_check(dodd, 10.0, 10000));

    const auto dfz = make_data(DataFamily::FPositiveGZero, 1.0, 1.0, 0.0);
    REQUIRE(huygens_check(dfz, 10.0, 10000));

    const auto dpos = make_data(DataFamily::GPositive, 1.0, 0.0, 1.0);
    REQUIRE_THROWS_AS(huygens_check(dpos, 10.0, 100), std::invalid_argument);
}
