#include "fracmix/subord.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fracmix::subord {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RandomStream::uniform() {
    // Strictly inside (0,1); engine output is fully specified by the standard.
    return (static_cast<double>(engine_()) + 0.5) * 0x1p-64;
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t RandomStream::poisson(double mean) {
    if (mean < 0.0) throw std::domain_error("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    // Heavy-tailed stable clocks occasionally produce astronomical means;
    // there the relative Poisson fluctuation is ~mean^{-1/2} and already
    // far below any tolerance in use.
    if (mean > 1e15) return static_cast<std::int64_t>(std::llround(mean));
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(engine_);
}

double RandomStream::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw std::domain_error("gamma: bad parameters");
    std::gamma_distribution<double> dist(shape, 1.0 / rate);
    return dist(engine_);
}

double sample_stable(double alpha, double t, RandomStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("sample_stable: alpha must lie in (0,1)");
    }
    if (!(t > 0.0)) throw std::domain_error("sample_stable: t must be positive");
    // Kanter's representation for Laplace exponent theta^alpha at t = 1,
    // scaled by the Levy scaling A(t) = t^{1/alpha} A(1).
    const double u = rng.uniform() * std::numbers::pi;
    const double w = rng.exponential();
    const double a = std::pow(std::sin(alpha * u) / std::sin(u), 1.0 / (1.0 - alpha)) *
                     std::sin((1.0 - alpha) * u) / std::sin(alpha * u);
    return std::pow(t, 1.0 / alpha) * std::pow(a / w, (1.0 - alpha) / alpha);
}

double sample_inv_stable(double nu, double t, RandomStream& rng) {
    if (!(nu > 0.0 && nu < 1.0)) {
        throw std::domain_error("sample_inv_stable: nu must lie in (0,1)");
    }
    if (!(t > 0.0)) throw std::domain_error("sample_inv_stable: t must be positive");
    const double a1 = sample_stable(nu, 1.0, rng);
    return std::pow(t / a1, nu);
}

namespace {

double sample_inverse_gaussian(double mean, double shape, RandomStream& rng) {
    // Michael-Schucany-Haas transformation with a uniform acceptance step.
    const double z = rng.normal();
    const double y = z * z;
    const double x = mean + mean * mean * y / (2.0 * shape) -
                     mean / (2.0 * shape) *
                         std::sqrt(4.0 * mean * shape * y + mean * mean * y * y);
    if (rng.uniform() <= mean / (mean + x)) return x;
    return mean * mean / x;
}

}  // namespace

double sample_subordinator(const SubordinatorSpec& s, double t, RandomStream& rng) {
    if (!(t > 0.0)) throw std::domain_error("sample_subordinator: t must be positive");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableSubordinator>) {
                return sample_stable(v.alpha, t, rng);
            } else if constexpr (std::is_same_v<T, InverseStable>) {
                return sample_inv_stable(v.nu, t, rng);
            } else if constexpr (std::is_same_v<T, InverseGaussian>) {
                // Mean mu t, shape (mu t)^2 / beta matches the stated density.
                const double m = v.mu * t;
                return sample_inverse_gaussian(m, m * m / v.beta, rng);
            } else if constexpr (std::is_same_v<T, GammaProc>) {
                return rng.gamma(t, v.p / (1.0 - v.p));
            } else {
                const std::int64_t n = rng.poisson(v.mu * t);
                if (n == 0) return 0.0;  // atom at zero
                return rng.gamma(static_cast<double>(n), v.beta);
            }
        },
        s);
}

double kappa_s(const SubordinatorSpec& s, double theta) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StableSubordinator>) {
                if (theta > 0.0) return kInf;
                return -std::pow(-theta, v.alpha);
            } else if constexpr (std::is_same_v<T, InverseStable>) {
                // E[e^{theta L(1)}] = E_{nu,1}(theta), entire in theta.
                return std::log(specfun::ml(v.nu, 1.0, theta));
            } else if constexpr (std::is_same_v<T, InverseGaussian>) {
                if (theta >= 1.0 / (2.0 * v.beta)) return kInf;
                return -v.mu / v.beta * (std::sqrt(1.0 - 2.0 * v.beta * theta) - 1.0);
            } else if constexpr (std::is_same_v<T, GammaProc>) {
                const double rate = v.p / (1.0 - v.p);
                if (theta >= rate) return kInf;
                return -std::log(1.0 - theta / rate);
            } else {
                if (theta >= v.beta) return kInf;
                return v.mu * theta / (v.beta - theta);
            }
        },
        s);
}

SubordinatorSpec subordinator_for(const compound::ProcessSpec& spec) {
    using V = jumplaws::JumpLaw::Variant;
    const double alpha = spec.law.alpha;
    switch (spec.law.variant()) {
        case V::PolyaAeppli: {
            const double p = 1.0 - alpha;
            return CompoundPoissonExp{spec.lambda / p, (1.0 - p) / p};
        }
        case V::PIG: {
            const double beta = (1.0 - alpha) / (2.0 * alpha);
            const double mu = spec.lambda * beta / (std::sqrt(1.0 + 2.0 * beta) - 1.0);
            return InverseGaussian{mu, beta};
        }
        case V::Logarithmic: {
            const double p = alpha;
            if (std::abs(spec.lambda + std::log(p)) > 1e-9) {
                throw std::domain_error(
                    "subordinator_for: Negative Binomial requires lambda = -log(alpha)");
            }
            return GammaProc{p};
        }
        default:
            throw std::domain_error(
                "subordinator_for: no mixed representation for a general ZTNB law");
    }
}

std::int64_t simulate_count(const compound::ProcessSpec& spec, double t, RandomStream& rng) {
    if (t < 0.0) throw std::domain_error("simulate_count: t must be >= 0");
    if (t == 0.0) return 0;
    const SubordinatorSpec sub = subordinator_for(spec);

    const double clock = spec.nu.regime() == fracpoisson::FracOrder::Regime::TimeFractional
                             ? sample_inv_stable(spec.nu.nu, t, rng)
                             : sample_stable(1.0 / spec.nu.nu, t, rng);
    if (clock <= 0.0) return 0;
    double s = sample_subordinator(sub, clock, rng);
    if (s <= 0.0) return 0;
    if (spec.eta < 1.0) s = sample_stable(spec.eta, s, rng);
    return rng.poisson(s);
}

}  // namespace fracmix::subord
