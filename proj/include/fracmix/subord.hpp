#pragma once

#include <cstdint>
#include <random>
#include <variant>

#include "fracmix/compound.hpp"

namespace fracmix::subord {

/// Reproducible random source. Identical (seed, stream_id) pairs yield
/// identical draw sequences; distinct stream ids give independent
/// substreams for parallel Monte Carlo drivers.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::mt19937_64& engine() { return engine_; }

    double uniform();              // U(0,1), open at both ends
    double exponential();          // rate 1
    double normal();               // standard normal
    std::int64_t poisson(double mean);
    double gamma(double shape, double rate);

private:
    std::mt19937_64 engine_;
};

struct StableSubordinator {
    double alpha;  // in (0,1)
};
struct InverseStable {
    double nu;  // in (0,1)
};
struct InverseGaussian {
    double mu;    // > 0
    double beta;  // > 0
};
struct GammaProc {
    double p;  // in (0,1); rate p/(1-p), shape t
};
struct CompoundPoissonExp {
    double mu;    // Poisson intensity of the jump count
    double beta;  // rate of the exponential summands
};

using SubordinatorSpec =
    std::variant<StableSubordinator, InverseStable, InverseGaussian, GammaProc, CompoundPoissonExp>;

/// One draw of the stable subordinator A^alpha(t), Laplace transform
/// E[e^{-theta A^alpha(t)}] = e^{-theta^alpha t}. Kanter construction.
double sample_stable(double alpha, double t, RandomStream& rng);

/// One draw of the inverse stable subordinator L^nu(t), via the exact
/// distributional identity L^nu(t) = (t / A^nu(1))^nu.
double sample_inv_stable(double nu, double t, RandomStream& rng);

/// One draw of S(t) for any variant. CompoundPoissonExp carries an atom at
/// zero (probability e^{-mu t}); the others are strictly positive a.s.
double sample_subordinator(const SubordinatorSpec& s, double t, RandomStream& rng);

/// kappa_S(theta) = log E[e^{theta S(1)}]. Returns +infinity where the mgf
/// diverges (not an error).
double kappa_s(const SubordinatorSpec& s, double theta);

/// The mixed-representation subordinator matching a process spec's jump
/// law and rate (the three worked examples). Throws for laws without a
/// named subordinator.
SubordinatorSpec subordinator_for(const compound::ProcessSpec& spec);

/// One draw of the count at time t through the mixed-representation chain:
/// outer clock (L^nu or A^{1/nu}), then S, then (for eta < 1) a stable
/// time change A^eta, then a unit-rate Poisson draw.
std::int64_t simulate_count(const compound::ProcessSpec& spec, double t, RandomStream& rng);

}  // namespace fracmix::subord
