#include "fracmix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace fracmix::stats {

double chi2_sf(double stat, int df) {
    if (df < 1) throw std::domain_error("chi2_sf: df must be >= 1");
    if (stat <= 0.0) return 1.0;
    return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

double chi2_statistic(std::span<const long> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("chi2_statistic: length mismatch");
    }
    double stat = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) {
            throw std::invalid_argument("chi2_statistic: expected counts must be positive");
        }
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

namespace {

// Kolmogorov distribution tail Q(x) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 x^2}.
double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(ia / na - ib / nb));
    }
    const double en = std::sqrt(na * nb / (na + nb));
    return kolmogorov_sf((en + 0.12 + 0.11 / en) * d);
}

MeanSe mean_and_se(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("mean_and_se: need at least two samples");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace fracmix::stats
