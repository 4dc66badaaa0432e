#pragma once

#include <functional>
#include <optional>

namespace rac::numerics {

using ScalarFunction = std::function<double(double)>;

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Grows an interval around x0 geometrically (half-width `step`, doubling)
/// until f changes sign across an endpoint pair or both sides have hit
/// [lower, upper]. Returns nullopt when no sign change was found.
std::optional<Bracket> expand_bracket(const ScalarFunction& f, double x0, double step, double lower,
                                      double upper, int max_expansions = 64);

struct NewtonOptions {
    double f_tol = 1e-12;
    double x_tol = 1e-14;
    int max_iterations = 200;
    double fd_step = 1e-7;  ///< relative step for the central-difference slope
};

struct RootResult {
    double x;
    double fx;
    int iterations;
};

/// Damped Newton inside a sign-changing bracket. Each Newton step is halved
/// until |f| decreases; a step that leaves the bracket or fails to decrease
/// falls back to bisection. Throws rac::Error(NoConvergence) when the
/// iteration budget runs out.
RootResult damped_newton(const ScalarFunction& f, Bracket bracket, const NewtonOptions& options = {});

}  // namespace rac::numerics
