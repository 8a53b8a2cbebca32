#pragma once

#include <vector>

namespace fracmix::jumplaws {

/// Zero-truncated negative binomial jump-size law with parameters
/// alpha in (0,1) and r > -1. Special members: r = 1 geometric
/// (Polya-Aeppli), r = -1/2 extended truncated NB (Poisson Inverse
/// Gaussian), r = 0 logarithmic (Negative Binomial).
struct JumpLaw {
    double alpha;
    double r;

    enum class Variant { PolyaAeppli, PIG, Logarithmic, GeneralZTNB };

    Variant variant() const {
        if (r == 1.0) return Variant::PolyaAeppli;
        if (r == -0.5) return Variant::PIG;
        if (r == 0.0) return Variant::Logarithmic;
        return Variant::GeneralZTNB;
    }
};

JumpLaw make_jump_law(double alpha, double r);

/// Jump law plus Poisson intensity, as fixed by the worked parameter boxes.
struct LawWithRate {
    JumpLaw law;
    double lambda;
};

/// Polya-Aeppli box: alpha = 1-p, r = 1; lambda free.
LawWithRate make_pa(double p, double lambda);
/// Poisson Inverse Gaussian box: alpha = 1 - 2beta/(1+2beta), r = -1/2,
/// lambda = (mu/beta)((1+2beta)^{1/2} - 1).
LawWithRate make_pig(double beta, double mu);
/// Negative Binomial box: alpha = p, r = 0, lambda = -log p.
LawWithRate make_nb(double p);

/// q_k for k >= 1.
double ztnb_pmf(const JumpLaw& law, int k);

/// Probability generating function g_q(u); requires |u| < 1/(1-alpha).
double ztnb_pgf(const JumpLaw& law, double u);

/// n-fold convolution q_k^{*n} = P(X_1+...+X_n = k). Closed forms for the
/// Polya-Aeppli and logarithmic members, cached dynamic-programming
/// convolution otherwise. Cache is per-instance; share one table across
/// repeated queries rather than the free function below.
class ConvolutionTable {
public:
    explicit ConvolutionTable(const JumpLaw& law) : law_(law) {}

    double conv(int n, int k);
    const JumpLaw& law() const { return law_; }

private:
    double brute_force(int n, int k);

    JumpLaw law_;
    std::vector<std::vector<double>> cache_;  // cache_[n][k]
};

/// One-shot q_k^{*n}; builds a fresh table per call.
double conv_pmf(const JumpLaw& law, int n, int k);

/// E[X_1], computed from the pgf by central finite differences at u = 1.
double jump_mean(const JumpLaw& law);
/// E[X_1^2], from pgf first and second differences at u = 1.
double jump_second_moment(const JumpLaw& law);

}  // namespace fracmix::jumplaws
