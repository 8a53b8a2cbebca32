#pragma once

#include <stdexcept>
#include <string>

namespace fracmix {

/// Thrown when a series fails to meet its tolerance within the term budget.
/// Carries the partial sum and the number of terms consumed.
class series_error : public std::runtime_error {
public:
    series_error(const std::string& what, double partial_sum, int terms_used)
        : std::runtime_error(what), partial_sum_(partial_sum), terms_used_(terms_used) {}

    double partial_sum() const { return partial_sum_; }
    int terms_used() const { return terms_used_; }

private:
    double partial_sum_;
    int terms_used_;
};

namespace specfun {

/// Parameters of the three-index Mittag-Leffler series
/// sum_{r>=0} (gamma)^(r) x^r / (r! Gamma(alpha r + beta)).
struct MLParams {
    double alpha;  // series index, > 0
    double beta;   // shift, > 0
    double gamma;  // generalization order, > 0
    double x;      // argument
};

struct SeriesControl {
    double abs_tol = 1e-12;
    int max_terms = 10000;
};

/// Largest |x| accepted by ml_general. Beyond this the series loses too
/// many digits to transient term growth (documented for alpha >= 0.3).
inline constexpr double kMLSafeRange = 50.0;

/// Generalized Mittag-Leffler function. Terms are evaluated in log space
/// with sign tracking and accumulated with compensated summation; for
/// x < 0 the series alternates and summation stops once the term bound
/// certifies the tail. Reduces to the two-parameter function at gamma = 1.
double ml_general(const MLParams& p, const SeriesControl& c = {});

/// Two-parameter Mittag-Leffler E_{alpha,beta}(x).
double ml(double alpha, double beta, double x, const SeriesControl& c = {});

/// Pochhammer symbol g(g+1)...(g+r-1); 1 when r = 0.
double rising_factorial(double g, int r);

/// g(g-1)...(g-r+1); 1 when r = 0.
double falling_factorial(double g, int r);

/// Generalized binomial coefficient (g choose r) = (g)_r / r!.
double gen_binom(double g, int r);

/// Unsigned Stirling number of the first kind |s(k,n)| by the triangular
/// recurrence |s(k+1,n)| = |s(k,n-1)| + k|s(k,n)|. Computed in double:
/// exact up to k = 20, high-precision (not exact) beyond; values follow
/// k! growth so k beyond ~170 overflows and is rejected.
double stirling1_unsigned(int k, int n);

}  // namespace specfun
}  // namespace fracmix
