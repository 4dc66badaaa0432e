#include "rac/moments.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "rac/error.hpp"

namespace rac {

namespace {

struct MeanVar {
    double mean;
    double var;
};

// Two-pass mean/variance.
MeanVar mean_var(std::span<const double> xs, VarianceConvention convention) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double n = static_cast<double>(xs.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double divisor = convention == VarianceConvention::Sample ? n - 1.0 : n;
    return {mean, ss / divisor};
}

double mean(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

SampleMoments compute_moments(const MarketDataset& d, VarianceConvention convention) {
    auto c = d.consumption().values();
    const std::size_t min_len = convention == VarianceConvention::Sample ? 3 : 2;
    if (c.size() < min_len) {
        throw Error(ErrorCode::SeriesTooShort,
                    "need at least " + std::to_string(min_len) + " consumption entries");
    }

    std::vector<double> growth(c.size() - 1);
    std::vector<double> log_growth(c.size() - 1);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        growth[i] = c[i + 1] / c[i];
        log_growth[i] = std::log(growth[i]);
    }
    std::vector<double> log_level(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) log_level[i] = std::log(c[i]);

    SampleMoments m;
    if (growth.size() == 1) {
        // a single growth observation has zero dispersion under either divisor
        m.mu_x = log_growth[0];
        m.sigma2_x = 0.0;
    } else {
        auto lx = mean_var(log_growth, convention);
        m.mu_x = lx.mean;
        m.sigma2_x = lx.var;
    }
    auto lz = mean_var(log_level, convention);
    m.mu_z = lz.mean;
    m.sigma2_z = lz.var;
    m.mean_x = mean(growth);
    m.mean_Re = mean(d.equity_return().values());
    m.mean_Rf = mean(d.riskfree_return().values());
    return m;
}

double lognormal_moment(double a, double mu, double sigma2) {
    if (sigma2 < 0.0) {
        throw Error(ErrorCode::NegativeVariance, "log-variance must be non-negative");
    }
    return std::exp(a * mu + 0.5 * a * a * sigma2);
}

double consistency_gap(const SampleMoments& m) {
    return std::log(m.mean_x) - (m.mu_x + 0.5 * m.sigma2_x);
}

}  // namespace rac
