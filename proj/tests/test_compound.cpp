#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "fracmix/compound.hpp"

using namespace fracmix;
using compound::make_spec;

TEST_SUITE("compound") {

TEST_CASE("pmf assembles counting pmf and convolutions") {
    const auto spec = make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    jumplaws::ConvolutionTable conv(spec.law);
    const double t = 1.3;

    CHECK(compound_pmf(spec, conv, t, 0) ==
          doctest::Approx(fracpoisson::pmf_time_frac(1.0, 0.6, t, 0)).epsilon(1e-14));
    const double q1 = jumplaws::ztnb_pmf(spec.law, 1);
    const double q2 = jumplaws::ztnb_pmf(spec.law, 2);
    CHECK(compound_pmf(spec, conv, t, 1) ==
          doctest::Approx(q1 * fracpoisson::pmf_time_frac(1.0, 0.6, t, 1)).epsilon(1e-13));
    CHECK(compound_pmf(spec, conv, t, 2) ==
          doctest::Approx(q2 * fracpoisson::pmf_time_frac(1.0, 0.6, t, 1) +
                          q1 * q1 * fracpoisson::pmf_time_frac(1.0, 0.6, t, 2))
              .epsilon(1e-13));
    CHECK(compound_pmf(spec, conv, 0.0, 0) == 1.0);
    CHECK(compound_pmf(spec, conv, 0.0, 3) == 0.0);
}

TEST_CASE("pmf tables normalize in both regimes") {
    const auto time_spec = make_spec(jumplaws::make_pig(1.0, 1.0), 0.7);
    const auto tt = compound::compound_pmf_table(time_spec, 1.0, 1e-9);
    double sum = 0.0;
    for (double p : tt.probs) sum += p;
    CHECK(sum + tt.tail_bound == doctest::Approx(1.0).epsilon(1e-8));

    const auto space_spec = make_spec(jumplaws::make_pa(0.5, 1.0), 1.5);
    const auto st = compound::compound_pmf_table(space_spec, 1.0, 1e-7);
    sum = 0.0;
    for (double p : st.probs) sum += p;
    CHECK(sum + st.tail_bound == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("eta below one has no series pmf") {
    const auto spec = make_spec(jumplaws::make_pa(0.5, 1.0), 0.6, 0.8);
    CHECK_THROWS_AS(compound_pmf(spec, 1.0, 0), std::domain_error);
    CHECK_THROWS_AS(compound::compound_moments(spec, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_spec(jumplaws::make_pa(0.5, 1.0), 0.6, 1.2), std::domain_error);
}

TEST_CASE("moments match pmf sums") {
    const auto spec = make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    const double t = 1.0;
    const auto m = compound::compound_moments(spec, t);
    const auto table = compound::compound_pmf_table(spec, t, 1e-12, 600);
    double mean = 0.0, second = 0.0;
    for (size_t k = 0; k < table.probs.size(); ++k) {
        mean += k * table.probs[k];
        second += static_cast<double>(k) * k * table.probs[k];
    }
    CHECK(m.mean == doctest::Approx(mean).epsilon(1e-6));
    CHECK(m.variance == doctest::Approx(second - mean * mean).epsilon(1e-5));
    CHECK(m.gap == doctest::Approx(m.variance - m.mean).epsilon(1e-9));
    CHECK(m.gap > 0.0);
}

TEST_CASE("space-fractional moments are rejected") {
    const auto spec = make_spec(jumplaws::make_pa(0.5, 1.0), 1.5);
    CHECK_THROWS_AS(compound::compound_moments(spec, 1.0), std::domain_error);
}

TEST_CASE("unit-jump gap reduces to the Z formula") {
    const double lambda = 1.0, t = 2.0;
    for (double nu : {0.3, 0.6, 0.9, 1.0}) {
        const auto m = compound::compound_moments_from_jumps(lambda, nu, t, 1.0, 1.0);
        const double x = lambda * std::pow(t, nu);
        CHECK(m.gap == doctest::Approx(x * x * fracpoisson::z_factor(nu)).epsilon(1e-12));
    }
}

TEST_CASE("overdispersion curve is positive and vanishes at nu = 1") {
    const auto spec = make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    const auto curve = compound::overdispersion_curve(spec, {0.2, 0.5, 0.8, 1.0}, 1.0);
    REQUIRE(curve.size() == 4);
    for (size_t i = 0; i + 1 < curve.size(); ++i) CHECK(curve[i].second > 0.0);
    // At nu = 1 only the jump-size variance contributes.
    const auto ref = compound::compound_moments_from_jumps(
        1.0, 1.0, 1.0, jumplaws::jump_mean(spec.law), jumplaws::jump_second_moment(spec.law));
    CHECK(curve.back().second == doctest::Approx(ref.gap).epsilon(1e-12));
}

}  // TEST_SUITE
