#pragma once

#include "rac/dataset.hpp"

namespace rac {

/// Divisor used for every variance in SampleMoments.
enum class VarianceConvention {
    Population,  ///< divide by n (default)
    Sample,      ///< divide by n - 1
};

/// Sample statistics consumed by calibration and utility evaluation.
///
/// mu_x / sigma2_x describe one-step log growth ln(c_{t+1} / c_t);
/// mu_z / sigma2_z describe log consumption levels over the full span,
/// final year included. The mean_* fields are arithmetic means of gross
/// quantities.
struct SampleMoments {
    double mu_x = 0.0;
    double sigma2_x = 0.0;
    double mean_x = 1.0;
    double mean_Re = 1.0;
    double mean_Rf = 1.0;
    double mu_z = 0.0;
    double sigma2_z = 0.0;
};

/// Throws SeriesTooShort when fewer than two consumption entries exist (or
/// fewer than three with the sample divisor).
SampleMoments compute_moments(const MarketDataset& d,
                              VarianceConvention convention = VarianceConvention::Population);

/// E(z^a) for log-normal z with log-mean `mu` and log-variance `sigma2`:
/// exp(a*mu + a^2*sigma2/2). Throws NegativeVariance when sigma2 < 0.
double lognormal_moment(double a, double mu, double sigma2);

/// ln(mean_x) - (mu_x + sigma2_x / 2). Zero iff the sample satisfies the
/// log-normal mean identity exactly; this is the only quantity that
/// separates the third pricing equation from the difference of the first
/// two.
double consistency_gap(const SampleMoments& m);

}  // namespace rac
