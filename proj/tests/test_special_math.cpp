#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fjump/errors.hpp"
#include "fjump/special_math.hpp"

using namespace fjump;

TEST_CASE("chi-squared(1) tail matches the erfc identity") {
    // Independent route: P(chi2_1 > t) = erfc(sqrt(t/2)).
    for (double t : {1e-6, 0.01, 0.5, 1.0, 2.0, 3.841459, 6.634897, 15.0, 40.0}) {
        double expected = std::erfc(std::sqrt(0.5 * t));
        CHECK(chi2_1_sf(t) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(chi2_1_sf(0.0) == 1.0);
    CHECK(chi2_1_sf(-1.0) == 1.0);
}

TEST_CASE("chi-squared(1) 5% critical value") {
    CHECK(chi2_1_sf(3.841459) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("normal quantile inverts the normal CDF") {
    auto norm_cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    for (double p : {1e-9, 1e-5, 0.01, 0.2, 0.5, 0.8, 0.975, 1.0 - 1e-7}) {
        double x = normal_quantile(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-9));
    }
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
    CHECK_THROWS_AS(normal_quantile(0.0), Error);
    CHECK_THROWS_AS(normal_quantile(1.0), Error);
}

TEST_CASE("adaptive quadrature on known integrals") {
    CHECK(integrate([](double u) { return u * u; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double u) { return std::sin(u); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate([](double u) { return std::exp(-u * u); }, -6.0, 6.0, 1e-12) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}
