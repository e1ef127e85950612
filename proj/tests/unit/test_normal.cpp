#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles/oracles.hpp"
#include "rankstat/errors.hpp"
#include "rankstat/normal.hpp"

using rankstat::normal_cdf;
using rankstat::normal_quantile;
using rankstat::normal_sf;

TEST_CASE("normal_cdf at zero is one half") {
    CHECK(normal_cdf(0.0) == 0.5);
}

TEST_CASE("normal_cdf matches the series oracle at the 97.5% point") {
    const double v = normal_cdf(1.959964);
    CHECK(std::abs(v - 0.975) < 1e-6);
    CHECK(std::abs(v - static_cast<double>(oracle::normal_cdf(1.959964L))) < 1e-12);
}

TEST_CASE("normal_cdf deep lower tail") {
    const double v = normal_cdf(-8.0);
    CHECK(v < 1e-12);
    CHECK(std::abs(v - static_cast<double>(oracle::normal_cdf(-8.0L))) < 1e-25);
}

TEST_CASE("normal_cdf absolute error below 1e-12 on a grid over [-8, 8]") {
    double worst = 0.0;
    double prev = 0.0;
    for (int i = -16000; i <= 16000; ++i) {
        const double z = i * 0.0005;
        const double v = normal_cdf(z);
        worst = std::max(worst, std::abs(v - static_cast<double>(oracle::normal_cdf(z))));
        CHECK_MESSAGE(v >= prev, "not monotone at z=" << z);
        prev = v;
        const double sym = std::abs(normal_cdf(-z) - (1.0 - v));
        if (sym >= 1e-12) FAIL("symmetry broken at z=" << z);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("normal_sf is the complement without cancellation") {
    CHECK(std::abs(normal_sf(1.0) - (1.0 - normal_cdf(1.0))) < 1e-15);
    CHECK(normal_sf(8.0) == doctest::Approx(normal_cdf(-8.0)).epsilon(1e-15));
}

TEST_CASE("normal_cdf rejects non-finite input") {
    CHECK_THROWS_AS(normal_cdf(std::numeric_limits<double>::quiet_NaN()), rankstat::DomainError);
    CHECK_THROWS_AS(normal_cdf(std::numeric_limits<double>::infinity()), rankstat::DomainError);
    CHECK_THROWS_AS(normal_sf(-std::numeric_limits<double>::infinity()), rankstat::DomainError);
}

TEST_CASE("normal_quantile inverts the CDF") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-13);
    CHECK(std::abs(normal_quantile(0.8) - 0.8416212335729143) < 1e-13);
    for (double p : {1e-300, 1e-20, 1e-10, 1e-4, 0.02, 0.3, 0.5, 0.7, 0.98, 1 - 1e-10}) {
        const double z = normal_quantile(p);
        // Near 1 the oracle's 1 - tail loses digits, so the bound is looser there.
        const double tol = p > 0.5 ? 1e-9 : 1e-12;
        CHECK_MESSAGE(std::abs(static_cast<double>(oracle::normal_quantile(p)) - z) <
                          tol * std::max(1.0, std::abs(z)),
                      "p=" << p);
    }
}

TEST_CASE("normal_quantile domain") {
    CHECK_THROWS_AS(normal_quantile(0.0), rankstat::DomainError);
    CHECK_THROWS_AS(normal_quantile(1.0), rankstat::DomainError);
    CHECK_THROWS_AS(normal_quantile(std::numeric_limits<double>::quiet_NaN()), rankstat::DomainError);
}
