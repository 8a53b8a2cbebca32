#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fracmix/jumplaws.hpp"

using namespace fracmix::jumplaws;

namespace {

// Reference n-fold convolution built directly from the pmf, independent of
// the closed forms under test.
std::vector<std::vector<double>> conv_reference(const JumpLaw& law, int n_max, int k_max) {
    std::vector<std::vector<double>> table(static_cast<size_t>(n_max) + 1,
                                           std::vector<double>(static_cast<size_t>(k_max) + 1, 0.0));
    table[0][0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        for (int k = n; k <= k_max; ++k) {
            double acc = 0.0;
            for (int i = 1; i <= k - (n - 1); ++i) {
                acc += ztnb_pmf(law, i) * table[static_cast<size_t>(n - 1)][static_cast<size_t>(k - i)];
            }
            table[static_cast<size_t>(n)][static_cast<size_t>(k)] = acc;
        }
    }
    return table;
}

}  // namespace

TEST_SUITE("jumplaws") {

TEST_CASE("variant dispatch and box parameterizations") {
    CHECK(make_pa(0.4, 1.0).law.variant() == JumpLaw::Variant::PolyaAeppli);
    CHECK(make_nb(0.4).law.variant() == JumpLaw::Variant::Logarithmic);

    const auto pig = make_pig(1.0, 1.0);
    CHECK(pig.law.variant() == JumpLaw::Variant::PIG);
    CHECK(pig.law.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(pig.lambda == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-15));

    const auto nb = make_nb(0.5);
    CHECK(nb.lambda == doctest::Approx(-std::log(0.5)).epsilon(1e-15));

    CHECK(make_jump_law(0.3, 0.7).variant() == JumpLaw::Variant::GeneralZTNB);
    CHECK_THROWS_AS(make_jump_law(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(make_jump_law(0.5, -1.0), std::domain_error);
}

TEST_CASE("geometric member pmf") {
    const auto law = make_pa(0.3, 1.0).law;  // alpha = 0.7
    for (int k = 1; k <= 6; ++k) {
        CHECK(ztnb_pmf(law, k) ==
              doctest::Approx(std::pow(0.3, k - 1) * 0.7).epsilon(1e-13));
    }
    CHECK_THROWS_AS(ztnb_pmf(law, 0), std::domain_error);
}

TEST_CASE("logarithmic member pmf") {
    const auto law = make_nb(0.5).law;
    for (int k = 1; k <= 6; ++k) {
        CHECK(ztnb_pmf(law, k) ==
              doctest::Approx(-std::pow(0.5, k) / (k * std::log(0.5))).epsilon(1e-13));
    }
}

TEST_CASE("pmf normalizes for a general law") {
    const auto law = make_jump_law(0.4, 0.7);
    double sum = 0.0;
    for (int k = 1; k <= 300; ++k) sum += ztnb_pmf(law, k);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pgf equals 1 at u = 1 and matches a truncated series") {
    for (const auto& law : {make_pa(0.4, 1.0).law, make_pig(0.7, 1.3).law, make_nb(0.3).law,
                            make_jump_law(0.55, -0.2)}) {
        CHECK(ztnb_pgf(law, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        const double u = 0.6;
        double series = 0.0;
        double upow = 1.0;
        for (int k = 1; k <= 400; ++k) {
            upow *= u;
            series += ztnb_pmf(law, k) * upow;
        }
        CHECK(ztnb_pgf(law, u) == doctest::Approx(series).epsilon(1e-12));
    }
    // make_pa(0.4, .) has alpha = 0.6, so the pgf radius is 1/(1-alpha) = 2.5.
    CHECK_THROWS_AS(ztnb_pgf(make_pa(0.4, 1.0).law, 2.6), std::domain_error);
}

TEST_CASE("closed-form convolutions match the reference recursion") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (const JumpLaw law : {JumpLaw{alpha, 1.0}, JumpLaw{alpha, 0.0}}) {
            ConvolutionTable table(law);
            const auto ref = conv_reference(law, 6, 15);
            for (int n = 0; n <= 6; ++n) {
                for (int k = 0; k <= 15; ++k) {
                    CHECK(table.conv(n, k) ==
                          doctest::Approx(ref[static_cast<size_t>(n)][static_cast<size_t>(k)])
                              .epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("logarithmic convolution frozen values") {
    // p = 0.5, three-fold convolution, 40-digit reference recursion.
    ConvolutionTable table(make_nb(0.5).law);
    CHECK(table.conv(3, 3) == doctest::Approx(0.37534758839461318).epsilon(1e-12));
    CHECK(table.conv(3, 5) == doctest::Approx(0.16421456992264327).epsilon(1e-12));
}

TEST_CASE("brute-force convolution rows sum to 1") {
    ConvolutionTable table(make_pig(1.0, 1.0).law);
    for (int n = 1; n <= 4; ++n) {
        double sum = 0.0;
        for (int k = n; k <= 250; ++k) sum += table.conv(n, k);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(table.conv(2, 1) == 0.0);
    CHECK(table.conv(0, 0) == 1.0);
    CHECK(table.conv(0, 3) == 0.0);
}

TEST_CASE("moments from the pgf") {
    const auto pa = make_pa(0.5, 1.0).law;
    CHECK(jump_mean(pa) == doctest::Approx(2.0).epsilon(1e-6));              // 1/p
    CHECK(jump_second_moment(pa) == doctest::Approx(6.0).epsilon(1e-4));     // (2-p)/p^2

    const auto nb = make_nb(0.5).law;
    const double mean_nb = -1.0 / std::log(0.5);  // (1-p)/(p |log p|) with p = 1/2
    CHECK(jump_mean(nb) == doctest::Approx(mean_nb).epsilon(1e-6));
}

}  // TEST_SUITE
