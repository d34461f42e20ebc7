#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "semiwave/data.hpp"

using namespace semiwave;
using Catch::Approx;

namespace {

// composite Simpson oracle, independent of the stored closed forms
template <typename F>
double simpson(F&& f, double lo, double hi, int n) {
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("bump integral matches the closed form", "[data]") {
    const auto d = make_data(DataFamily::GPositive, 1.0, 0.0, 1.0);
    REQUIRE(d.integral_g == Approx(256.0 / 315.0).epsilon(1e-14));
    const double quad = simpson([&](double x) { return d.g(x); }, -1.0, 1.0, 2000);
    REQUIRE(quad == Approx(d.integral_g).margin(1e-12));

    const auto d2 = make_data(DataFamily::GPositive, 2.5, 0.0, 0.7);
    const double quad2 = simpson([&](double x) { return d2.g(x); }, -2.5, 2.5, 4000);
    REQUIRE(d2.integral_g == Approx(0.7 * 2.5 * 256.0 / 315.0).epsilon(1e-14));
    REQUIRE(quad2 == Approx(d2.integral_g).margin(1e-12 * 0.7 * 2.5));
}

TEST_CASE("odd family integrates to zero exactly", "[data]") {
    const auto d = make_data(DataFamily::GZeroOdd, 1.0, 0.3, 2.0);
    REQUIRE(d.integral_g == 0.0);
    const double quad = simpson([&](double x) { return d.g(x); }, -1.0, 1.0, 2000);
    REQUIRE(quad == Approx(0.0).margin(1e-13));
}

TEST_CASE("support is exact", "[data]") {
    for (auto fam : {DataFamily::GPositive, DataFamily::GZeroOdd, DataFamily::FPositiveGZero}) {
        const auto d = make_data(fam, 1.0, 1.0, fam == DataFamily::FPositiveGZero ? 0.0 : 1.0);
        REQUIRE(check_support(d, 1000));
        REQUIRE(d.f(1.5) == 0.0);
        REQUIRE(d.g(1.5) == 0.0);
    }
    // counterexample: a hand-set evaluator that leaks outside the support
    auto one = [](double) { return 1.0; };
    auto zero = [](double) { return 0.0; };
    REQUIRE_FALSE(check_support(one, zero, 1.0, 100));
}

TEST_CASE("derivatives are consistent across the support boundary", "[data]") {
    const auto d = make_data(DataFamily::GPositive, 1.0, 1.0, 1.0);
    // second-order central differences of f converge to f' and f'' at the
    // boundary-adjacent points; halving h should cut the error by ~4
    for (double x0 : {1.0 - 0.125, -1.0 + 0.125, 0.3}) {
        double err_prev_1 = 0.0, err_prev_2 = 0.0;
        for (int k = 0; k < 2; ++k) {
            const double h = (k == 0) ? 1e-3 : 5e-4;
            const double d1 = (d.f(x0 + h) - d.f(x0 - h)) / (2.0 * h);
            const double d2 = (d.f(x0 + h) - 2.0 * d.f(x0) + d.f(x0 - h)) / (h * h);
            const double e1 = std::abs(d1 - d.f_prime(x0));
            const double e2 = std::abs(d2 - d.f_dprime(x0));
            if (k == 1) {
                REQUIRE(e1 < 0.3 * err_prev_1 + 1e-12);
                REQUIRE(e2 < 0.3 * err_prev_2 + 1e-9);
            }
            err_prev_1 = e1;
            err_prev_2 = e2;
        }
    }
}

TEST_CASE("g antiderivative matches quadrature", "[data]") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (auto fam : {DataFamily::GPositive, DataFamily::GZeroOdd}) {
        const auto d = make_data(fam, 1.0, 0.0, 1.3);
        for (int i = 0; i < 30; ++i) {
            const double x = xs(rng);
            const double quad = simpson([&](double y) { return d.g(y); }, -1.0,
                                        std::clamp(x, -1.0, 1.0), 2000);
            REQUIRE(d.g_antiderivative(x) == Approx(quad).margin(1e-11));
        }
    }
}

TEST_CASE("odd family g is odd", "[data]") {
    const auto d = make_data(DataFamily::GZeroOdd, 1.5, 0.0, 1.0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> xs(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xs(rng);
        REQUIRE(d.g(-x) == Approx(-d.g(x)).margin(1e-15));
    }
}

TEST_CASE("family constraints are enforced", "[data]") {
    REQUIRE_THROWS_AS(make_data(DataFamily::GPositive, 1.0, 0.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(make_data(DataFamily::FPositiveGZero, 1.0, 0.0, 0.0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_data(DataFamily::GPositive, 0.5, 0.0, 1.0), std::invalid_argument);
    REQUIRE_NOTHROW(make_data(DataFamily::GZeroOdd, 1.0, 0.0, 1.0));
    // f-positive-g-zero ignores amp_g entirely
    REQUIRE(make_data(DataFamily::FPositiveGZero, 1.0, 1.0, 5.0).g(0.0) == 0.0);
}

TEST_CASE("family name round trip", "[data]") {
    for (auto fam : {DataFamily::GPositive, DataFamily::GZeroOdd, DataFamily::FPositiveGZero})
        REQUIRE(family_from_name(family_name(fam)) == fam);
    REQUIRE_THROWS_AS(family_from_name("nope"), std::invalid_argument);
}
