#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "fracmix/fracpoisson.hpp"

using namespace fracmix::fracpoisson;

TEST_SUITE("fracpoisson") {

TEST_CASE("order classification") {
    CHECK(FracOrder(0.5).regime() == FracOrder::Regime::TimeFractional);
    CHECK(FracOrder(1.5).regime() == FracOrder::Regime::SpaceFractional);
    CHECK_THROWS_AS(FracOrder(1.0), std::domain_error);
    CHECK_THROWS_AS(FracOrder(0.0), std::domain_error);
    CHECK_THROWS_AS(FracOrder(-0.5), std::domain_error);
}

TEST_CASE("time-fractional pmf reference values") {
    // k = 0 is the relaxation function; 40-digit series references.
    CHECK(pmf_time_frac(1.0, 0.5, 1.0, 0) ==
          doctest::Approx(0.4275835761558070).epsilon(1e-12));
    CHECK(pmf_time_frac(1.0, 0.6, 1.0, 3) ==
          doctest::Approx(0.080656773113509583).epsilon(1e-12));
    CHECK(pmf_time_frac(1.0, 0.5, 0.0, 0) == 1.0);
    CHECK(pmf_time_frac(1.0, 0.5, 0.0, 4) == 0.0);
    CHECK_THROWS_AS(pmf_time_frac(1.0, 1.5, 1.0, 0), std::domain_error);
    CHECK_THROWS_AS(pmf_time_frac(-1.0, 0.5, 1.0, 0), std::domain_error);
}

TEST_CASE("time-fractional pmf table normalizes") {
    const auto table = pmf_table(1.0, FracOrder(0.7), 1.5, 1e-10);
    double sum = 0.0;
    for (double p : table.probs) {
        CHECK(p >= 0.0);
        sum += p;
    }
    CHECK(sum + table.tail_bound == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(table.tail_bound < 1e-10);
}

TEST_CASE("space-fractional pmf reference values") {
    // Direct defining series at small argument, 40 digits.
    CHECK(pmf_space_frac(0.5, 1.5, 0.3, 0) ==
          doctest::Approx(0.82779630982753932).epsilon(1e-12));
    CHECK(pmf_space_frac(0.5, 1.5, 0.3, 1) ==
          doctest::Approx(0.10429579957770151).epsilon(1e-12));
    CHECK(pmf_space_frac(0.5, 1.5, 0.3, 2) ==
          doctest::Approx(0.023952856928128398).epsilon(1e-12));
    CHECK(pmf_space_frac(0.5, 1.5, 0.3, 3) ==
          doctest::Approx(0.010191621441868674).epsilon(1e-12));
}

TEST_CASE("space-fractional pmf at k = 0 is exponential") {
    for (double nu : {1.25, 1.5, 2.0, 3.0}) {
        for (double t : {0.2, 1.0, 4.0}) {
            CHECK(pmf_space_frac(2.0, nu, t, 0) ==
                  doctest::Approx(std::exp(-std::pow(2.0, 1.0 / nu) * t)).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(pmf_space_frac(1.0, 0.5, 1.0, 0), std::domain_error);
    CHECK_THROWS_AS(pmf_space_frac(1.0, 1.5, 1.0, kSpacePmfMaxK + 1), std::range_error);
}

TEST_CASE("space-fractional pmf table normalizes") {
    const auto table = pmf_table(1.0, FracOrder(1.5), 1.0, 1e-8, 120);
    double sum = 0.0;
    for (double p : table.probs) {
        CHECK(p >= 0.0);
        sum += p;
    }
    CHECK(sum + table.tail_bound == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("absolute bound dominates the pmf") {
    for (int k : {0, 1, 3, 7}) {
        for (double t : {0.2, 1.0, 3.0, 10.0}) {
            CHECK(pmf_space_frac_abs_bound(1.3, 1.5, t, k) >=
                  std::abs(pmf_space_frac(1.3, 1.5, t, k)));
        }
    }
}

TEST_CASE("fractional difference operator") {
    const std::vector<double> f{1.0, 1.0, 1.0};
    CHECK(frac_difference(1.0, f, 0) == doctest::Approx(1.0));
    CHECK(frac_difference(1.0, f, 2) == doctest::Approx(0.0));
    CHECK(frac_difference(0.5, f, 2) == doctest::Approx(0.375).epsilon(1e-14));

    const std::vector<double> g{0.5, 0.3, 0.1};
    CHECK(frac_difference(1.0, g, 2) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK_THROWS_AS(frac_difference(1.5, f, 1), std::domain_error);
    CHECK_THROWS_AS(frac_difference(0.5, f, 3), std::domain_error);
}

TEST_CASE("overdispersion factor") {
    CHECK(z_factor(0.5) ==
          doctest::Approx(2.0 - 4.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(z_factor(1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(z_factor(1.5), std::domain_error);
}

TEST_CASE("moment formulas match pmf sums") {
    const double lambda = 1.0, nu = 0.6, t = 1.0;
    const auto m = tf_moments(lambda, nu, t);
    const auto table = pmf_table(lambda, FracOrder(nu), t, 1e-13, 400);
    double mean = 0.0, second = 0.0;
    for (size_t k = 0; k < table.probs.size(); ++k) {
        mean += k * table.probs[k];
        second += static_cast<double>(k) * k * table.probs[k];
    }
    CHECK(m.mean == doctest::Approx(mean).epsilon(1e-9));
    CHECK(m.variance == doctest::Approx(second - mean * mean).epsilon(1e-8));
    CHECK(m.z == doctest::Approx(z_factor(nu)));
}

}  // TEST_SUITE
