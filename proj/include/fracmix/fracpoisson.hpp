#pragma once

#include <span>
#include <vector>

#include "fracmix/specfun.hpp"

namespace fracmix::fracpoisson {

/// Fractional order of the time change. nu in (0,1) selects the
/// inverse-stable clock (time-fractional process), nu in (1,inf) the
/// stable clock (space-fractional process). nu = 1 is the classical
/// Poisson reference and is deliberately not representable here.
struct FracOrder {
    enum class Regime { TimeFractional, SpaceFractional };

    explicit FracOrder(double nu_) : nu(nu_) {
        if (!(nu > 0.0) || nu == 1.0) {
            throw std::domain_error("FracOrder: nu must be positive and != 1");
        }
    }

    Regime regime() const {
        return nu < 1.0 ? Regime::TimeFractional : Regime::SpaceFractional;
    }

    double nu;
};

/// Probabilities over k = 0..K for a fixed time, with the unaccounted
/// tail mass recorded explicitly.
struct PmfTable {
    double t;
    std::vector<double> probs;
    double tail_bound;
};

/// P(N_lambda^nu(t) = k) = (lambda t^nu)^k E^{k+1}_{nu, nu k+1}(-lambda t^nu),
/// for nu in (0,1).
double pmf_time_frac(double lambda, double nu, double t, int k,
                     const specfun::SeriesControl& c = {});

/// Largest k supported by pmf_space_frac (Stirling triangles in double).
inline constexpr int kSpacePmfMaxK = 120;

/// P(N-hat_lambda^nu(t) = k) for nu in (1,inf). Evaluated through the
/// finite Stirling-number reduction of the defining series (see the
/// implementation notes); equals exp(-lambda^{1/nu} t) at k = 0.
double pmf_space_frac(double lambda, double nu, double t, int k);

/// Certified upper bound on |pmf_space_frac| at (t, k): the same finite
/// Stirling sum with every term in absolute value, i.e. exp(-x) times a
/// polynomial with nonnegative coefficients. Integrable in t, so usable
/// as a tail truncation bound for the right-sided derivative.
double pmf_space_frac_abs_bound(double lambda, double nu, double t, int k);

/// (1-B)^eta f(k) = sum_{j=0}^{k} (-1)^j C(eta,j) f(k-j); entries of f
/// below index 0 are taken as 0, so the sum is finite.
double frac_difference(double eta, std::span<const double> f, int k);

struct Moments {
    double mean;
    double variance;
    double z;
};

/// Overdispersion factor Z(nu) = (1/nu)(1/Gamma(2 nu) - 1/(nu Gamma(nu)^2)).
double z_factor(double nu);

/// Mean, variance and Z(nu) of the time-fractional Poisson count at time t.
/// nu = 1 is allowed here as the classical reference (Z = 0).
Moments tf_moments(double lambda, double nu, double t);

/// Pmf table over k = 0..K with K grown until the recorded tail mass
/// drops below eps (or k_cap is hit; the tail bound is reported either way).
PmfTable pmf_table(double lambda, const FracOrder& nu, double t, double eps = 1e-6,
                   int k_cap = 4096);

}  // namespace fracmix::fracpoisson
