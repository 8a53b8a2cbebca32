#include "fracmix/fracpoisson.hpp"

#include <algorithm>
#include <cmath>

#include "fracmix/jumplaws.hpp"

namespace fracmix::fracpoisson {

using specfun::MLParams;
using specfun::SeriesControl;

double pmf_time_frac(double lambda, double nu, double t, int k, const SeriesControl& c) {
    if (!(lambda > 0.0)) throw std::domain_error("pmf_time_frac: lambda must be positive");
    if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("pmf_time_frac: nu must lie in (0,1)");
    if (t < 0.0) throw std::domain_error("pmf_time_frac: t must be >= 0");
    if (k < 0) throw std::domain_error("pmf_time_frac: k must be >= 0");
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;

    const double x = lambda * std::pow(t, nu);
    const double series = specfun::ml_general({nu, nu * k + 1.0, k + 1.0, -x}, c);
    return std::pow(x, k) * series;
}

namespace {

constexpr int kStirlingCap = kSpacePmfMaxK;

// Signed Stirling numbers of the first kind, (y)_k = sum_m s1[k][m] y^m,
// and Stirling numbers of the second kind for the Bell polynomials.
struct StirlingTables {
    std::vector<std::vector<double>> s1, s2;
    StirlingTables() {
        s1.assign(kStirlingCap + 1, std::vector<double>(kStirlingCap + 1, 0.0));
        s2 = s1;
        s1[0][0] = s2[0][0] = 1.0;
        for (int k = 0; k < kStirlingCap; ++k) {
            for (int n = 0; n <= kStirlingCap; ++n) {
                const double below = n >= 1 ? s1[k][n - 1] : 0.0;
                s1[k + 1][n] = below - k * s1[k][n];
            }
            for (int n = 1; n <= kStirlingCap; ++n) {
                s2[k + 1][n] = s2[k][n - 1] + n * s2[k][n];
            }
        }
    }
};

const StirlingTables& stirling_tables() {
    static const StirlingTables tables;
    return tables;
}

}  // namespace

// The defining series sum_r (-x)^r/r! (r/nu)_k alternates with transiently
// huge terms, so it is hopeless in floating point once x is moderate.
// Expanding the falling factorial in powers of r and folding each power
// sum into a Bell polynomial gives the equivalent finite form
//   p_k = ((-1)^k / k!) e^{-x} sum_m s(k,m) nu^{-m} sum_j S(m,j) (-x)^j
// with x = lambda^{1/nu} t, which factors out the e^{-x} cancellation.
double pmf_space_frac(double lambda, double nu, double t, int k) {
    if (!(lambda > 0.0)) throw std::domain_error("pmf_space_frac: lambda must be positive");
    if (!(nu > 1.0)) throw std::domain_error("pmf_space_frac: nu must lie in (1,inf)");
    if (t < 0.0) throw std::domain_error("pmf_space_frac: t must be >= 0");
    if (k < 0) throw std::domain_error("pmf_space_frac: k must be >= 0");
    if (k > kStirlingCap) {
        throw std::range_error("pmf_space_frac: k exceeds the supported range");
    }
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;

    const auto& tables = stirling_tables();
    const double x = std::pow(lambda, 1.0 / nu) * t;

    double total = 0.0;
    for (int m = 0; m <= k; ++m) {
        const double s1 = tables.s1[k][m];
        if (s1 == 0.0) continue;
        double bell = 0.0;
        double xpow = 1.0;
        for (int j = 0; j <= m; ++j) {
            bell += tables.s2[m][j] * xpow;
            xpow *= -x;
        }
        total += s1 * std::pow(nu, -static_cast<double>(m)) * bell;
    }
    double sign_over_fact = 1.0;
    for (int i = 1; i <= k; ++i) sign_over_fact /= -i;
    const double p = sign_over_fact * std::exp(-x) * total;
    // Tiny negative values can appear from rounding deep in the tail.
    return p < 0.0 && p > -1e-12 ? 0.0 : p;
}

double pmf_space_frac_abs_bound(double lambda, double nu, double t, int k) {
    if (!(lambda > 0.0)) throw std::domain_error("pmf_space_frac_abs_bound: lambda must be positive");
    if (!(nu > 1.0)) throw std::domain_error("pmf_space_frac_abs_bound: nu must lie in (1,inf)");
    if (t < 0.0) throw std::domain_error("pmf_space_frac_abs_bound: t must be >= 0");
    if (k < 0 || k > kStirlingCap) {
        throw std::range_error("pmf_space_frac_abs_bound: k out of the supported range");
    }
    if (t == 0.0) return 1.0;

    const auto& tables = stirling_tables();
    const double x = std::pow(lambda, 1.0 / nu) * t;

    double total = 0.0;
    for (int m = 0; m <= k; ++m) {
        const double s1 = std::abs(tables.s1[k][m]);
        if (s1 == 0.0) continue;
        double bell = 0.0;
        double xpow = 1.0;
        for (int j = 0; j <= m; ++j) {
            bell += tables.s2[m][j] * xpow;
            xpow *= x;
        }
        total += s1 * std::pow(nu, -static_cast<double>(m)) * bell;
    }
    double fact = 1.0;
    for (int i = 1; i <= k; ++i) fact *= i;
    return std::exp(-x) * total / fact;
}

double frac_difference(double eta, std::span<const double> f, int k) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::domain_error("frac_difference: eta must lie in (0,1]");
    }
    if (k < 0 || static_cast<size_t>(k) >= f.size()) {
        throw std::domain_error("frac_difference: k out of range for the sequence");
    }
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double coeff = specfun::gen_binom(eta, j);
        sum += (j % 2 == 0 ? 1.0 : -1.0) * coeff * f[static_cast<size_t>(k - j)];
    }
    return sum;
}

double z_factor(double nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::domain_error("z_factor: nu must lie in (0,1]");
    const double g_nu = std::tgamma(nu);
    return (1.0 / std::tgamma(2.0 * nu) - 1.0 / (nu * g_nu * g_nu)) / nu;
}

Moments tf_moments(double lambda, double nu, double t) {
    if (!(lambda > 0.0)) throw std::domain_error("tf_moments: lambda must be positive");
    if (!(nu > 0.0 && nu <= 1.0)) throw std::domain_error("tf_moments: nu must lie in (0,1]");
    if (!(t > 0.0)) throw std::domain_error("tf_moments: t must be positive");
    const double x = lambda * std::pow(t, nu);
    const double mean = x / std::tgamma(nu + 1.0);
    const double z = z_factor(nu);
    return {mean, mean + x * x * z, z};
}

PmfTable pmf_table(double lambda, const FracOrder& nu, double t, double eps, int k_cap) {
    PmfTable table;
    table.t = t;
    const bool space = nu.regime() == FracOrder::Regime::SpaceFractional;
    if (space) k_cap = std::min(k_cap, kSpacePmfMaxK);
    double sum = 0.0;
    for (int k = 0; k <= k_cap; ++k) {
        const double p = space ? pmf_space_frac(lambda, nu.nu, t, k)
                               : pmf_time_frac(lambda, nu.nu, t, k);
        table.probs.push_back(p);
        sum += p;
        if (1.0 - sum < eps) break;
    }
    table.tail_bound = std::max(0.0, 1.0 - sum);
    return table;
}

}  // namespace fracmix::fracpoisson
