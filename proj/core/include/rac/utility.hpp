#pragma once

#include "rac/moments.hpp"

namespace rac {

enum class UtilityForm {
    Shifted,    ///< (c^(1-rho) - 1) / (1 - rho); ln c at rho = 1
    Unshifted,  ///< c^(1-rho) / (1 - rho); undefined at rho = 1
};

/// CRRA utility with coefficient of relative risk aversion `rho` >= 0.
struct UtilitySpec {
    double rho = 1.0;
    UtilityForm form = UtilityForm::Shifted;
};

/// Below this distance from rho = 1 the shifted form is evaluated by its
/// series in (1 - rho) rather than by direct subtraction.
inline constexpr double kLogLimitBand = 1e-8;

/// Throws NonPositiveConsumption for c <= 0, UndefinedAtLogLimit for the
/// unshifted form at rho = 1, InvalidArgument for rho < 0.
double crra_utility(double c, const UtilitySpec& spec);

/// E[u(c)] for log-normal consumption levels with log-mean mu_z and
/// log-variance sigma2_z, shifted form only:
/// (exp((1-rho) mu_z + (1-rho)^2 sigma2_z / 2) - 1) / (1 - rho), and mu_z at rho = 1.
///
/// Conditional and unconditional expectations are taken to coincide, so the
/// full-sample level moments stand in for the time-t forecast.
double expected_utility_unconditional(const SampleMoments& m, const UtilitySpec& spec);

/// beta * eta * expected_u. Requires beta in (0, 1] and eta > 0.
double uncertain_utility(double expected_u, double beta, double eta);

/// Certain utility today against discounted, sufficiency-adjusted expected
/// utility next period. `uncertain == beta * eta * expected_u` by construction.
struct UtilityComparison {
    double certain = 0.0;
    double uncertain = 0.0;
    double eta = 1.0;
    double beta = 1.0;
    double expected_u = 0.0;
};

UtilityComparison make_comparison(double certain, double expected_u, double beta, double eta);

/// Portfolio positions and prices for the consumption identity
/// c_t = theta_t y_t + theta_t p_t + z_t q_t - z_{t+1} q_t - theta_{t+1} p_t.
struct Holdings {
    double theta_t = 0.0;     ///< equity held entering t
    double theta_next = 0.0;  ///< equity carried into t+1
    double z_t = 0.0;         ///< risk-free asset held entering t
    double z_next = 0.0;      ///< risk-free asset carried into t+1
    double p_t = 0.0;         ///< equity price
    double q_t = 0.0;         ///< risk-free asset price
    double y_t = 0.0;         ///< dividend
};

/// Throws NonPositiveConsumption when the identity yields c_t <= 0 and
/// InvalidArgument when holdings leave [0, 1] or prices are negative.
double implied_consumption(const Holdings& h);

}  // namespace rac
