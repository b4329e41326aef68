#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minmod/log_complex.hpp"

#include <complex>
#include <random>

using namespace minmod;

TEST_CASE("primary factor at m = 0 is 1 - z") {
    const LogComplex v = primary_factor_log({0.5, 0.0}, 0);
    CHECK(v.log_mod == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    CHECK(v.arg == doctest::Approx(0.0));
}

TEST_CASE("primary factor at the origin is 1 for every m") {
    for (int m : {0, 1, 2, 5, 8}) {
        const LogComplex v = primary_factor_log({0.0, 0.0}, m);
        CHECK(v.log_mod == 0.0);
        CHECK(v.arg == 0.0);
    }
}

TEST_CASE("primary factor spot value at 2i with m = 2") {
    const LogComplex v = primary_factor_log({0.0, 2.0}, 2);
    // E(2i,2) = (1-2i) exp(2i + (2i)^2/2): log-mod -2 + log sqrt 5,
    // argument 2 + arctan(-2)
    CHECK(v.log_mod == doctest::Approx(-2.0 + 0.5 * std::log(5.0)).epsilon(1e-12));
    CHECK(v.arg == doctest::Approx(2.0 + std::atan(-2.0)).epsilon(1e-12));
}

TEST_CASE("exact zero sentinel at z = 1") {
    const LogComplex v = primary_factor_log({1.0, 0.0}, 3);
    CHECK(v.is_zero());
}

TEST_CASE("polar factor agrees with direct complex arithmetic") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(-3.0, 3.0), ang(-M_PI, M_PI);
    for (int it = 0; it < 500; ++it) {
        const double lw = mag(rng);
        const double pw = ang(rng);
        const int m = static_cast<int>(it % 4);
        const std::complex<double> w = std::polar(std::exp(lw), pw);
        const std::complex<double> one_minus = 1.0 - w;
        std::complex<double> powers{0.0, 0.0};
        std::complex<double> wj = w;
        for (int j = 1; j <= m; ++j) {
            powers += wj / static_cast<double>(j);
            wj *= w;
        }
        const double want = powers.real() + std::log(std::abs(one_minus));
        const LogComplex got = primary_factor_log_polar(lw, pw, m);
        CHECK(got.log_mod == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("log(1 - w) branches agree across their seams") {
    for (double lw : {39.9, 40.1, -0.71, -0.69, 0.0}) {
        for (double pw : {0.3, 2.9, -1.2}) {
            const std::complex<double> w = std::polar(std::exp(lw), pw);
            const LogComplex got = log_one_minus_polar(lw, pw);
            CHECK(got.log_mod ==
                  doctest::Approx(std::log(std::abs(1.0 - w))).epsilon(1e-12));
            CHECK(got.arg == doctest::Approx(std::arg(1.0 - w)).epsilon(1e-12));
        }
    }
}

TEST_CASE("log(1 - w) for |w| far beyond double range") {
    // log|1 - w| = log|w| + O(1/|w|)
    const LogComplex v = log_one_minus_polar(5000.0, 1.0);
    CHECK(v.log_mod == doctest::Approx(5000.0).epsilon(1e-14));
    CHECK(std::isfinite(v.arg));
}

TEST_CASE("reduce_angle lands in (-pi, pi]") {
    for (double a : {0.0, 3.5, -3.5, 100.0, -100.0, M_PI, -M_PI, 6.0 * M_PI}) {
        const double r = reduce_angle(a);
        CHECK(r > -M_PI);
        CHECK(r <= M_PI);
        CHECK(std::abs(std::remainder(r - a, 2.0 * M_PI)) < 1e-9);
    }
}

TEST_CASE("clamp_log saturates non-finite accumulations") {
    CHECK(clamp_log(std::numeric_limits<double>::quiet_NaN()) == kLogSaturation);
    CHECK(clamp_log(std::numeric_limits<double>::infinity()) == kLogSaturation);
    CHECK(clamp_log(1.0) == 1.0);
    // the zero sentinel passes through untouched
    CHECK(std::isinf(clamp_log(-std::numeric_limits<double>::infinity())));
}
