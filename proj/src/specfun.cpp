#include "fracmix/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fracmix::specfun {

namespace {

void check_params(const MLParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.gamma > 0.0)) {
        throw std::domain_error("ml_general: alpha, beta, gamma must be positive");
    }
    if (std::abs(p.x) > kMLSafeRange) {
        throw std::range_error("ml_general: |x| > " + std::to_string(kMLSafeRange) +
                               " is outside the supported range");
    }
}

}  // namespace

double ml_general(const MLParams& p, const SeriesControl& c) {
    check_params(p);
    if (!(c.abs_tol > 0.0) || c.max_terms < 1) {
        throw std::domain_error("ml_general: invalid SeriesControl");
    }
    if (p.x == 0.0) {
        return 1.0 / std::tgamma(p.beta);
    }

    const double log_ax = std::log(std::abs(p.x));
    const double lg_gamma = std::lgamma(p.gamma);
    const bool alternating = p.x < 0.0;

    // Kahan accumulation; terms via log-gamma to survive transient growth.
    double sum = 0.0;
    double comp = 0.0;
    double prev_abs = std::numeric_limits<double>::infinity();
    double peak_abs = 0.0;
    for (int r = 0; r < c.max_terms; ++r) {
        const double log_term = std::lgamma(p.gamma + r) - lg_gamma + r * log_ax -
                                std::lgamma(r + 1.0) - std::lgamma(p.alpha * r + p.beta);
        double term = std::exp(log_term);
        if (alternating && (r % 2 == 1)) term = -term;

        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        const double abs_term = std::abs(term);
        peak_abs = std::max(peak_abs, abs_term);
        if (r >= 2 && abs_term < c.abs_tol && (!alternating || abs_term <= prev_abs)) {
            // For x < 0 the series alternates with positive coefficients, so a
            // decreasing term bounds the tail by its own magnitude.
            // Alternating sums cancel down from the peak term; when fewer
            // than ~6 significant digits survive the cancellation, refuse
            // to return the noise.
            if (alternating && peak_abs * 1e-10 > std::abs(sum)) {
                throw series_error("ml_general: catastrophic cancellation (|x| too large)", sum,
                                   r + 1);
            }
            return sum;
        }
        prev_abs = abs_term;
    }
    throw series_error("ml_general: no convergence within max_terms", sum, c.max_terms);
}

double ml(double alpha, double beta, double x, const SeriesControl& c) {
    return ml_general({alpha, beta, 1.0, x}, c);
}

double rising_factorial(double g, int r) {
    if (r < 0) throw std::domain_error("rising_factorial: r must be >= 0");
    double out = 1.0;
    for (int i = 0; i < r; ++i) out *= g + i;
    return out;
}

double falling_factorial(double g, int r) {
    if (r < 0) throw std::domain_error("falling_factorial: r must be >= 0");
    double out = 1.0;
    for (int i = 0; i < r; ++i) out *= g - i;
    return out;
}

double gen_binom(double g, int r) {
    if (r < 0) throw std::domain_error("gen_binom: r must be >= 0");
    double out = 1.0;
    for (int i = 0; i < r; ++i) out *= (g - i) / (i + 1);
    return out;
}

double stirling1_unsigned(int k, int n) {
    if (k < 0 || n < 0) throw std::domain_error("stirling1_unsigned: negative index");
    if (n > k) return 0.0;
    if (k > 170) {
        throw std::range_error(
            "stirling1_unsigned: k > 170 overflows double; log-space evaluation not provided");
    }
    // Row-by-row triangular recurrence.
    std::vector<double> row(static_cast<size_t>(k) + 1, 0.0);
    row[0] = 1.0;
    for (int kk = 0; kk < k; ++kk) {
        for (int nn = std::min(kk + 1, k); nn >= 1; --nn) {
            row[nn] = row[nn - 1] + kk * row[nn];
        }
        row[0] = 0.0;  // |s(k,0)| = 0 for k >= 1
    }
    return row[n];
}

}  // namespace fracmix::specfun
