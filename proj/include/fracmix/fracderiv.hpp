#pragma once

#include <functional>
#include <vector>

namespace fracmix::fracderiv {

/// Samples of f on the uniform grid t0 + i h.
struct GridFunction {
    double t0;
    double h;
    std::vector<double> values;
};

/// Caputo derivative of order nu in (0,1) at grid node i, by the L1
/// scheme (piecewise-linear f with exact kernel integration on each
/// subinterval). Requires t0 = 0 and i >= 1; error O(h^{2-nu}) for C^2
/// functions.
double caputo_l1(const GridFunction& f, double nu, int i);

/// Function on [0,inf) with a certified nonincreasing pointwise bound on
/// |f| used to truncate tail integrals.
struct TailFunction {
    std::function<double(double)> eval;
    std::function<double(double)> decay_bound;
};

/// Right-sided Riemann-Liouville derivative on [0,inf) of order nu in
/// (1,2], at the point t. For nu < 2 the inner integral
/// int_t^inf f(s)(s-t)^{1-nu} ds is computed by adaptive quadrature with
/// the endpoint singularity removed by substitution, truncated where the
/// decay bound certifies the remainder; the outer (d/dt)^2 uses central
/// differences with step quad_tol^{1/4}. nu = 2 has m = 3 and the whole
/// operator collapses to the classical d^2/dt^2, evaluated directly.
double rl_right_quad(const TailFunction& f, double nu, double t, double quad_tol);

}  // namespace fracmix::fracderiv
