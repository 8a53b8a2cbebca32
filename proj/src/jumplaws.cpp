#include "fracmix/jumplaws.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmix/specfun.hpp"

namespace fracmix::jumplaws {

using specfun::gen_binom;

JumpLaw make_jump_law(double alpha, double r) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("JumpLaw: alpha must lie in (0,1)");
    }
    if (!(r > -1.0)) {
        throw std::domain_error("JumpLaw: r must be > -1");
    }
    return JumpLaw{alpha, r};
}

LawWithRate make_pa(double p, double lambda) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("make_pa: p must lie in (0,1)");
    if (!(lambda > 0.0)) throw std::domain_error("make_pa: lambda must be positive");
    return {make_jump_law(1.0 - p, 1.0), lambda};
}

LawWithRate make_pig(double beta, double mu) {
    if (!(beta > 0.0) || !(mu > 0.0)) {
        throw std::domain_error("make_pig: beta and mu must be positive");
    }
    const double alpha = 1.0 - 2.0 * beta / (1.0 + 2.0 * beta);
    const double lambda = mu / beta * (std::sqrt(1.0 + 2.0 * beta) - 1.0);
    return {make_jump_law(alpha, -0.5), lambda};
}

LawWithRate make_nb(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("make_nb: p must lie in (0,1)");
    return {make_jump_law(p, 0.0), -std::log(p)};
}

double ztnb_pmf(const JumpLaw& law, int k) {
    if (k < 1) throw std::domain_error("ztnb_pmf: k must be >= 1");
    const double a = law.alpha;
    if (law.variant() == JumpLaw::Variant::Logarithmic) {
        return -std::pow(1.0 - a, k) / (k * std::log(a));
    }
    return gen_binom(law.r + k - 1, k) * std::pow(1.0 - a, k) /
           (std::pow(a, -law.r) - 1.0);
}

double ztnb_pgf(const JumpLaw& law, double u) {
    const double a = law.alpha;
    if (!(std::abs(u) < 1.0 / (1.0 - a))) {
        throw std::domain_error("ztnb_pgf: |u| must be < 1/(1-alpha)");
    }
    const double w = 1.0 - u * (1.0 - a);
    if (law.variant() == JumpLaw::Variant::Logarithmic) {
        return std::log(w) / std::log(a);
    }
    const double ar = std::pow(a, law.r);
    const double wr = std::pow(w, law.r);
    return ar / (1.0 - ar) * (1.0 - wr) / wr;
}

double ConvolutionTable::conv(int n, int k) {
    if (n < 0 || k < 0) throw std::domain_error("conv: n and k must be >= 0");
    if (n == 0) return k == 0 ? 1.0 : 0.0;
    if (k < n) return 0.0;

    switch (law_.variant()) {
        case JumpLaw::Variant::PolyaAeppli: {
            // q_k^{*n} = C(k-1, n-1) (1-p)^n p^{k-n} with p = 1-alpha.
            const double p = 1.0 - law_.alpha;
            return gen_binom(k - 1, n - 1) * std::pow(1.0 - p, n) * std::pow(p, k - n);
        }
        case JumpLaw::Variant::Logarithmic: {
            // q_k^{*n} = n!/(-log p)^n (1-p)^k |s(k,n)| / k! with p = alpha.
            const double p = law_.alpha;
            double out = specfun::stirling1_unsigned(k, n);
            for (int i = 1; i <= n; ++i) out *= i / (-std::log(p));
            for (int i = 1; i <= k; ++i) out *= (1.0 - p) / i;
            return out;
        }
        default:
            return brute_force(n, k);
    }
}

double ConvolutionTable::brute_force(int n, int k) {
    // Triangular DP over q^{*m} = q^{*(m-1)} * q, rows cached up to (n,k).
    const size_t nn = static_cast<size_t>(n);
    const size_t kk = static_cast<size_t>(k);
    if (cache_.size() < nn + 1) cache_.resize(nn + 1);
    if (cache_[0].size() < kk + 1) {
        cache_[0].assign(kk + 1, 0.0);
        cache_[0][0] = 1.0;
    }
    for (size_t m = 1; m <= nn; ++m) {
        auto& row = cache_[m];
        const auto& prev = cache_[m - 1];
        const size_t old = row.size();
        if (old >= kk + 1) continue;
        row.resize(kk + 1, 0.0);
        for (size_t j = std::max(old, m); j <= kk; ++j) {
            double acc = 0.0;
            for (size_t i = 1; i <= j - (m - 1); ++i) {
                const double prev_val = (j - i < prev.size()) ? prev[j - i] : 0.0;
                if (prev_val != 0.0) acc += ztnb_pmf(law_, static_cast<int>(i)) * prev_val;
            }
            row[j] = acc;
        }
    }
    return cache_[nn][kk];
}

double conv_pmf(const JumpLaw& law, int n, int k) {
    ConvolutionTable table(law);
    return table.conv(n, k);
}

namespace {
constexpr double kPgfStep = 1e-5;
}

double jump_mean(const JumpLaw& law) {
    return (ztnb_pgf(law, 1.0 + kPgfStep) - ztnb_pgf(law, 1.0 - kPgfStep)) / (2.0 * kPgfStep);
}

double jump_second_moment(const JumpLaw& law) {
    const double g_plus = ztnb_pgf(law, 1.0 + kPgfStep);
    const double g_minus = ztnb_pgf(law, 1.0 - kPgfStep);
    const double g1 = ztnb_pgf(law, 1.0);
    const double second_deriv = (g_plus - 2.0 * g1 + g_minus) / (kPgfStep * kPgfStep);
    const double first_deriv = (g_plus - g_minus) / (2.0 * kPgfStep);
    // E[X^2] = g''(1) + g'(1).
    return second_deriv + first_deriv;
}

}  // namespace fracmix::jumplaws
