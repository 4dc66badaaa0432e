#include "rac/utility.hpp"

#include <cmath>

#include "rac/error.hpp"

namespace rac {

namespace {

void check_rho(double rho) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw Error(ErrorCode::InvalidArgument, "rho must be finite and non-negative");
    }
}

void check_beta_eta(double beta, double eta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "beta must lie in (0, 1]");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw Error(ErrorCode::InvalidArgument, "eta must be strictly positive");
    }
}

// (exp(a*L) - 1) / a for a possibly tiny. expm1 keeps full precision away from
// a = 0; inside the band use L + a L^2 / 2 + a^2 L^3 / 6.
double shifted_power_log(double a, double log_c) {
    if (a == 0.0) return log_c;
    if (std::abs(a) < kLogLimitBand) {
        return log_c * (1.0 + a * log_c / 2.0 + a * a * log_c * log_c / 6.0);
    }
    return std::expm1(a * log_c) / a;
}

}  // namespace

double crra_utility(double c, const UtilitySpec& spec) {
    if (!(c > 0.0)) {
        throw Error(ErrorCode::NonPositiveConsumption, "consumption must be strictly positive");
    }
    check_rho(spec.rho);
    const double a = 1.0 - spec.rho;
    if (spec.form == UtilityForm::Unshifted) {
        if (a == 0.0) {
            throw Error(ErrorCode::UndefinedAtLogLimit,
                        "unshifted CRRA utility c^(1-rho)/(1-rho) is undefined at rho = 1");
        }
        return std::pow(c, a) / a;
    }
    return shifted_power_log(a, std::log(c));
}

double expected_utility_unconditional(const SampleMoments& m, const UtilitySpec& spec) {
    if (spec.form != UtilityForm::Shifted) {
        throw Error(ErrorCode::InvalidArgument, "unconditional expected utility uses the shifted form");
    }
    check_rho(spec.rho);
    if (m.sigma2_z < 0.0) {
        throw Error(ErrorCode::NegativeVariance, "sigma2_z must be non-negative");
    }
    const double a = 1.0 - spec.rho;
    // ln E[c^a] = a mu_z + a^2 sigma2_z / 2, so E[u] = (E[c^a] - 1) / a
    //           = (exp(a * (mu_z + a sigma2_z / 2)) - 1) / a.
    return shifted_power_log(a, m.mu_z + 0.5 * a * m.sigma2_z);
}

double uncertain_utility(double expected_u, double beta, double eta) {
    check_beta_eta(beta, eta);
    return beta * eta * expected_u;
}

UtilityComparison make_comparison(double certain, double expected_u, double beta, double eta) {
    return UtilityComparison{certain, uncertain_utility(expected_u, beta, eta), eta, beta, expected_u};
}

double implied_consumption(const Holdings& h) {
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(h.theta_t) || !unit(h.theta_next) || !unit(h.z_t) || !unit(h.z_next)) {
        throw Error(ErrorCode::InvalidArgument, "holdings must lie in [0, 1]");
    }
    if (!(h.p_t >= 0.0) || !(h.q_t >= 0.0) || !(h.y_t >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "prices and dividend must be non-negative");
    }
    const double c = h.theta_t * h.y_t + h.theta_t * h.p_t + h.z_t * h.q_t - h.z_next * h.q_t -
                     h.theta_next * h.p_t;
    if (!(c > 0.0)) {
        throw Error(ErrorCode::NonPositiveConsumption, "holdings imply non-positive consumption");
    }
    return c;
}

}  // namespace rac
