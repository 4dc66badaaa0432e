#include "rac/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "rac/error.hpp"
#include "rac/root_find.hpp"

namespace rac {

namespace {

void check_beta(double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "beta must lie in (0, 1]");
    }
}

void check_moments(const SampleMoments& m) {
    if (!(m.mean_x > 0.0) || !(m.mean_Re > 0.0) || !(m.mean_Rf > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mean gross growth and returns must be positive");
    }
    if (m.sigma2_x < 0.0 || m.sigma2_z < 0.0) {
        throw Error(ErrorCode::NegativeVariance, "sample variances must be non-negative");
    }
}

double max_abs(const Residuals& r) {
    return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

}  // namespace

Residuals system_residuals(const SufficiencyFactors& f, double rho, double beta, const SampleMoments& m) {
    check_beta(beta);
    if (!(f.zeta > 0.0) || !(f.xi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "sufficiency factors must be strictly positive");
    }
    const double ln_beta = std::log(beta);
    const double ln_rf = std::log(m.mean_Rf);
    const double ln_re = std::log(m.mean_Re);
    const double ln_ex = std::log(m.mean_x);
    const double ln_zeta = std::log(f.zeta);
    const double ln_xi = std::log(f.xi);
    const double mu = m.mu_x;
    const double s2 = m.sigma2_x;
    const double a = 1.0 - rho;

    return {
        ln_rf - (-ln_beta - ln_xi + rho * mu - 0.5 * rho * rho * s2),
        ln_re - (ln_ex - ln_beta - ln_zeta - a * mu - 0.5 * a * a * s2),
        (ln_re - ln_rf) - (ln_xi - ln_zeta + rho * s2),
    };
}

Jacobian system_jacobian(double rho, const SampleMoments& m) {
    const double mu = m.mu_x;
    const double s2 = m.sigma2_x;
    return {{
        {0.0, 1.0, -mu + rho * s2},
        {1.0, 0.0, -mu - (1.0 - rho) * s2},
        {1.0, -1.0, -s2},
    }};
}

double condition_diagnostic(const Jacobian& j) {
    Eigen::Matrix3d mat;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) mat(r, c) = j[r][c];
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(mat);
    const auto& sv = svd.singularValues();
    const double largest = sv(0);
    if (largest == 0.0) return std::numeric_limits<double>::max();
    const double smallest = std::max(sv(2), std::numeric_limits<double>::epsilon() * largest);
    return std::max(1.0, largest / smallest);
}

SufficiencyFactors solve_closed_form_given_rho(double rho, double beta, const SampleMoments& m) {
    check_beta(beta);
    check_moments(m);
    const double mu = m.mu_x;
    const double s2 = m.sigma2_x;
    const double a = 1.0 - rho;
    const double ln_beta = std::log(beta);
    SufficiencyFactors f;
    f.xi = std::exp(-std::log(m.mean_Rf) - ln_beta + rho * mu - 0.5 * rho * rho * s2);
    f.zeta = std::exp(std::log(m.mean_x) - ln_beta - a * mu - 0.5 * a * a * s2 - std::log(m.mean_Re));
    return f;
}

CalibrationResult calibrate_at_rho(double rho, double beta, const SampleMoments& m) {
    CalibrationResult out;
    out.rho = rho;
    out.factors = solve_closed_form_given_rho(rho, beta, m);
    out.residuals = system_residuals(out.factors, rho, beta, m);
    out.condition_diagnostic = condition_diagnostic(system_jacobian(rho, m));
    out.consistency_gap = consistency_gap(m);
    return out;
}

CalibrationResult solve_system(double beta, const SampleMoments& m, std::optional<InitialGuess> init,
                               const SolverOptions& options) {
    check_beta(beta);
    check_moments(m);

    const double gap = consistency_gap(m);
    if (std::abs(gap) < options.degeneracy_tol) {
        std::ostringstream msg;
        msg << "consistency gap " << gap << " is below " << options.degeneracy_tol
            << ": the risk-premium equation is the difference of the two pricing equations, "
               "so every rho (with its closed-form zeta, xi) solves the system";
        throw Error(ErrorCode::DegenerateSystem, msg.str());
    }

    auto premium_residual = [&](double rho) {
        return system_residuals(solve_closed_form_given_rho(rho, beta, m), rho, beta, m)[2];
    };

    const double rho0 = std::clamp(init ? init->rho : 1.0, options.rho_lower, options.rho_upper);
    double rho = rho0;
    if (std::abs(premium_residual(rho0)) > options.residual_tol) {
        auto bracket = numerics::expand_bracket(premium_residual, rho0, options.initial_step,
                                                options.rho_lower, options.rho_upper);
        if (!bracket) {
            std::ostringstream msg;
            msg.precision(6);
            msg << "no root for rho in [" << options.rho_lower << ", " << options.rho_upper
                << "]: with zeta and xi eliminated, the risk-premium residual stays at "
                << premium_residual(rho0) << ", which is the consistency gap " << gap
                << " and does not depend on rho; rho is not identified by this sample";
            throw Error(ErrorCode::NoConvergence, msg.str());
        }
        numerics::NewtonOptions newton;
        newton.f_tol = std::min(options.residual_tol, 1e-12);
        newton.max_iterations = options.max_iterations;
        rho = numerics::damped_newton(premium_residual, *bracket, newton).x;
    }

    CalibrationResult out = calibrate_at_rho(rho, beta, m);
    const auto& f = out.factors;
    if (!(f.zeta > 0.0 && f.zeta <= options.factor_upper && f.xi > 0.0 && f.xi <= options.factor_upper)) {
        throw Error(ErrorCode::NoConvergence, "root found outside the admissible factor region (0, " +
                                                  std::to_string(options.factor_upper) + "]");
    }
    if (!(max_abs(out.residuals) < options.residual_tol)) {
        throw Error(ErrorCode::NoConvergence, "residuals did not reach the requested tolerance");
    }
    return out;
}

}  // namespace rac
