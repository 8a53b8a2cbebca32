#pragma once

#include <span>
#include <vector>

namespace fracmix::stats {

/// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
double chi2_sf(double stat, int df);

/// Pearson chi-square statistic for observed counts vs expected counts
/// (same length; expected entries must be positive).
double chi2_statistic(std::span<const long> observed, std::span<const double> expected);

/// Two-sample Kolmogorov-Smirnov test; returns the asymptotic p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_and_se(std::span<const double> xs);

}  // namespace fracmix::stats
