#pragma once

#include <array>
#include <optional>

#include "rac/moments.hpp"

namespace rac {

/// Sufficiency factors of the model: zeta for equity investors, xi for
/// risk-free asset investors. Both strictly positive.
struct SufficiencyFactors {
    double zeta = 1.0;
    double xi = 1.0;
};

/// Residuals ordered as (risk-free pricing, equity pricing, risk premium).
using Residuals = std::array<double, 3>;

/// Rows follow Residuals; columns are d/d ln(zeta), d/d ln(xi), d/d rho.
using Jacobian = std::array<std::array<double, 3>, 3>;

struct CalibrationResult {
    SufficiencyFactors factors;
    double rho = 0.0;
    Residuals residuals{};
    double condition_diagnostic = 1.0;
    double consistency_gap = 0.0;
};

/// LHS - RHS of
///   ln Rf            = -ln beta - ln xi + rho mu_x - rho^2 sigma2_x / 2
///   ln E(Re)         = ln E(x) - ln beta - ln zeta - (1-rho) mu_x - (1-rho)^2 sigma2_x / 2
///   ln E(Re) - ln Rf = ln xi - ln zeta + rho sigma2_x
Residuals system_residuals(const SufficiencyFactors& f, double rho, double beta, const SampleMoments& m);

/// Analytic Jacobian of system_residuals. Row 3 equals row 2 minus row 1 at
/// every point, so its rank never exceeds two.
Jacobian system_jacobian(double rho, const SampleMoments& m);

/// Ratio of largest to smallest singular value, with the smallest floored at
/// machine epsilon times the largest. Always >= 1.
double condition_diagnostic(const Jacobian& j);

/// Solves the first two equations exactly for (zeta, xi) at a given rho.
/// The third residual at the result equals consistency_gap(m) whatever rho is.
SufficiencyFactors solve_closed_form_given_rho(double rho, double beta, const SampleMoments& m);

struct InitialGuess {
    double zeta = 1.0;
    double xi = 1.0;
    double rho = 1.0;  ///< log utility
};

struct SolverOptions {
    double rho_lower = 0.0;
    double rho_upper = 60.0;
    double factor_upper = 10.0;
    double residual_tol = 1e-9;
    double degeneracy_tol = 1e-12;  ///< |consistency_gap| below this is DegenerateSystem
    double initial_step = 0.25;     ///< first half-width of the rho bracket
    int max_iterations = 200;
};

/// Root of system_residuals for (zeta, xi, rho) with beta held fixed.
///
/// zeta and xi are eliminated in closed form, leaving a one-dimensional
/// root-find in rho on the risk-premium residual (bracket expanded
/// geometrically from the initial rho, then damped Newton). Only the rho of
/// `init` is used; the factors are determined by rho.
///
/// Throws DegenerateSystem when |consistency_gap| < degeneracy_tol (a whole
/// family of roots exists) and NoConvergence when no root is found in the
/// search region. The risk-premium residual after elimination is the
/// consistency gap itself, independent of rho, so for a sample whose gap is
/// not negligible the search reports NoConvergence.
///
/// beta is an input rather than an unknown. If positions are traded before
/// the one-period horizon ends, re-date beta for the shorter horizon and call
/// again; the factors are re-estimated from the same moments.
CalibrationResult solve_system(double beta, const SampleMoments& m,
                               std::optional<InitialGuess> init = std::nullopt,
                               const SolverOptions& options = {});

/// Assembles a CalibrationResult for an externally chosen rho: closed-form
/// factors plus residuals and diagnostics.
CalibrationResult calibrate_at_rho(double rho, double beta, const SampleMoments& m);

}  // namespace rac
