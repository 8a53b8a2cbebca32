#pragma once

#include <vector>

#include "fracmix/fracpoisson.hpp"
#include "fracmix/jumplaws.hpp"

namespace fracmix::compound {

/// A concrete process from the family: jump law, Poisson intensity, the
/// fractional order of the outer clock, and the optional second order
/// eta of the inner counting process (eta = 1 recovers the one-parameter
/// processes).
struct ProcessSpec {
    jumplaws::JumpLaw law;
    double lambda;
    fracpoisson::FracOrder nu;
    double eta = 1.0;
};

ProcessSpec make_spec(jumplaws::LawWithRate lw, double nu, double eta = 1.0);

/// p_k^nu(t) resp. p-hat_k^nu(t): the count pmf of the compound process,
/// sum_{n=1}^{k} q_k^{*n} P(N^nu(t) = n) for k >= 1 and the underlying
/// fractional Poisson mass at zero for k = 0. Requires eta = 1.
double compound_pmf(const ProcessSpec& spec, jumplaws::ConvolutionTable& conv, double t, int k);
double compound_pmf(const ProcessSpec& spec, double t, int k);

struct CompoundMoments {
    double mean;
    double variance;
    double gap;  // variance - mean, the overdispersion gap
};

/// Wald-formula moments of M^nu(t) for nu in (0,1] (time-fractional or the
/// classical reference). Space-fractional specs are rejected: those
/// processes have infinite mean.
CompoundMoments compound_moments(const ProcessSpec& spec, double t);

/// Same formulas with the jump moments supplied directly (used for the
/// unit-jump reference law, where the gap reduces to (lambda t^nu)^2 Z(nu)).
CompoundMoments compound_moments_from_jumps(double lambda, double nu, double t,
                                            double jump_mean, double jump_second_moment);

/// (nu, gap) table over a grid of time-fractional orders.
std::vector<std::pair<double, double>> overdispersion_curve(const ProcessSpec& spec,
                                                            const std::vector<double>& nu_grid,
                                                            double t);

/// Pmf table for the compound process at time t, truncated adaptively.
fracpoisson::PmfTable compound_pmf_table(const ProcessSpec& spec, double t, double eps = 1e-6,
                                         int k_cap = 4096);

}  // namespace fracmix::compound
