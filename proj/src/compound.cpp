#include "fracmix/compound.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

namespace fracmix::compound {

using fracpoisson::FracOrder;

ProcessSpec make_spec(jumplaws::LawWithRate lw, double nu, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::domain_error("make_spec: eta must lie in (0,1]");
    }
    return ProcessSpec{lw.law, lw.lambda, FracOrder(nu), eta};
}

namespace {

double counting_pmf(const ProcessSpec& spec, double t, int n) {
    return spec.nu.regime() == FracOrder::Regime::TimeFractional
               ? fracpoisson::pmf_time_frac(spec.lambda, spec.nu.nu, t, n)
               : fracpoisson::pmf_space_frac(spec.lambda, spec.nu.nu, t, n);
}

void require_eta_one(const ProcessSpec& spec, const char* who) {
    if (spec.eta != 1.0) {
        throw std::domain_error(std::string(who) + ": series pmf only exists for eta = 1");
    }
}

}  // namespace

double compound_pmf(const ProcessSpec& spec, jumplaws::ConvolutionTable& conv, double t, int k) {
    require_eta_one(spec, "compound_pmf");
    if (k < 0) throw std::domain_error("compound_pmf: k must be >= 0");
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return counting_pmf(spec, t, 0);
    double sum = 0.0;
    for (int n = 1; n <= k; ++n) {
        const double w = conv.conv(n, k);
        if (w != 0.0) sum += w * counting_pmf(spec, t, n);
    }
    return sum;
}

double compound_pmf(const ProcessSpec& spec, double t, int k) {
    jumplaws::ConvolutionTable conv(spec.law);
    return compound_pmf(spec, conv, t, k);
}

CompoundMoments compound_moments_from_jumps(double lambda, double nu, double t, double jump_mean,
                                            double jump_second_moment) {
    const auto base = fracpoisson::tf_moments(lambda, nu, t);
    const double x = lambda * std::pow(t, nu);
    const double mean = base.mean * jump_mean;
    const double gap = base.mean * (jump_second_moment - jump_mean) +
                       x * x * base.z * jump_mean * jump_mean;
    return {mean, mean + gap, gap};
}

CompoundMoments compound_moments(const ProcessSpec& spec, double t) {
    if (spec.nu.regime() == FracOrder::Regime::SpaceFractional) {
        throw std::domain_error("compound_moments: space-fractional processes have infinite mean");
    }
    require_eta_one(spec, "compound_moments");
    return compound_moments_from_jumps(spec.lambda, spec.nu.nu, t, jumplaws::jump_mean(spec.law),
                                       jumplaws::jump_second_moment(spec.law));
}

std::vector<std::pair<double, double>> overdispersion_curve(const ProcessSpec& spec,
                                                            const std::vector<double>& nu_grid,
                                                            double t) {
    const double m1 = jumplaws::jump_mean(spec.law);
    const double m2 = jumplaws::jump_second_moment(spec.law);
    std::vector<std::pair<double, double>> out;
    out.reserve(nu_grid.size());
    for (double nu : nu_grid) {
        if (!(nu > 0.0 && nu <= 1.0)) {
            throw std::domain_error("overdispersion_curve: grid values must lie in (0,1]");
        }
        out.emplace_back(nu, compound_moments_from_jumps(spec.lambda, nu, t, m1, m2).gap);
    }
    return out;
}

fracpoisson::PmfTable compound_pmf_table(const ProcessSpec& spec, double t, double eps, int k_cap) {
    require_eta_one(spec, "compound_pmf_table");
    if (spec.nu.regime() == FracOrder::Regime::SpaceFractional) {
        k_cap = std::min(k_cap, fracpoisson::kSpacePmfMaxK);
    }
    jumplaws::ConvolutionTable conv(spec.law);
    fracpoisson::PmfTable table;
    table.t = t;
    double sum = 0.0;
    for (int k = 0; k <= k_cap; ++k) {
        const double p = compound_pmf(spec, conv, t, k);
        table.probs.push_back(p);
        sum += p;
        if (1.0 - sum < eps) break;
    }
    table.tail_bound = std::max(0.0, 1.0 - sum);
    return table;
}

}  // namespace fracmix::compound
