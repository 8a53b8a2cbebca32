#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "fracmix/specfun.hpp"

using namespace fracmix::specfun;

TEST_SUITE("specfun") {

TEST_CASE("two-parameter function matches closed forms") {
    CHECK(ml(1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(ml(1.0, 1.0, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(ml(2.0, 1.0, 1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
    CHECK(ml(1.0, 2.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("reference values frozen from a high-precision sum") {
    // 40-digit partial sums of the defining series.
    CHECK(ml(0.5, 1.0, -1.0) == doctest::Approx(0.4275835761558070).epsilon(1e-11));
    CHECK(ml(0.6, 1.0, -2.0) == doctest::Approx(0.23557103111182496).epsilon(1e-11));
    CHECK(ml_general({0.7, 1.3, 3.0, -1.5}) ==
          doctest::Approx(-0.0077097100729552426).epsilon(1e-11));
}

TEST_CASE("x = 0 collapses to 1/Gamma(beta)") {
    CHECK(ml_general({0.5, 2.5, 7.0, 0.0}) ==
          doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-15));
}

TEST_CASE("parameter and range validation") {
    CHECK_THROWS_AS(ml_general({-0.5, 1.0, 1.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(ml_general({0.5, 0.0, 1.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(ml(0.5, 1.0, -51.0), std::range_error);
    CHECK_NOTHROW(ml(0.5, 1.0, -4.0));
    // Inside the range guard but beyond what double cancellation allows:
    // refuse rather than return noise.
    CHECK_THROWS_AS(ml(0.5, 1.0, -12.0), fracmix::series_error);
}

TEST_CASE("series failure carries diagnostics") {
    try {
        ml_general({0.5, 1.0, 1.0, 1.0}, {1e-12, 3});
        FAIL("expected series_error");
    } catch (const fracmix::series_error& e) {
        CHECK(e.terms_used() == 3);
        CHECK(std::isfinite(e.partial_sum()));
    }
}

TEST_CASE("factorial helpers") {
    CHECK(rising_factorial(3.0, 4) == doctest::Approx(360.0));
    CHECK(rising_factorial(2.5, 0) == 1.0);
    CHECK(falling_factorial(0.5, 2) == doctest::Approx(-0.25));
    CHECK(gen_binom(5.0, 2) == doctest::Approx(10.0));
    CHECK(gen_binom(0.5, 3) == doctest::Approx(0.0625));
    CHECK(gen_binom(2.0, 5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(gen_binom(1.0, -1), std::domain_error);
}

TEST_CASE("unsigned Stirling numbers of the first kind") {
    CHECK(stirling1_unsigned(5, 2) == doctest::Approx(50.0));
    CHECK(stirling1_unsigned(6, 3) == doctest::Approx(225.0));
    CHECK(stirling1_unsigned(4, 5) == 0.0);
    CHECK(stirling1_unsigned(0, 0) == 1.0);
    double row_sum = 0.0;
    for (int n = 0; n <= 8; ++n) row_sum += stirling1_unsigned(8, n);
    CHECK(row_sum == doctest::Approx(40320.0));  // 8!
    CHECK_THROWS_AS(stirling1_unsigned(171, 3), std::range_error);
}

}  // TEST_SUITE
