#include "rac/root_find.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rac/error.hpp"

namespace rac::numerics {

namespace {

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

std::optional<Bracket> expand_bracket(const ScalarFunction& f, double x0, double step, double lower,
                                      double upper, int max_expansions) {
    x0 = std::clamp(x0, lower, upper);
    const double f0 = f(x0);
    if (f0 == 0.0) return Bracket{x0, x0, f0, f0};

    double prev_lo = x0, prev_hi = x0;
    double f_prev_lo = f0, f_prev_hi = f0;
    for (int k = 0; k < max_expansions; ++k) {
        const double lo = std::max(lower, x0 - step);
        const double hi = std::min(upper, x0 + step);
        const double f_lo = lo < prev_lo ? f(lo) : f_prev_lo;
        const double f_hi = hi > prev_hi ? f(hi) : f_prev_hi;
        if (f_lo == 0.0) return Bracket{lo, lo, f_lo, f_lo};
        if (f_hi == 0.0) return Bracket{hi, hi, f_hi, f_hi};
        // check the newly added outer segments first, then the full interval
        if (opposite(f_lo, f_prev_lo)) return Bracket{lo, prev_lo, f_lo, f_prev_lo};
        if (opposite(f_prev_hi, f_hi)) return Bracket{prev_hi, hi, f_prev_hi, f_hi};
        if (lo == lower && hi == upper) return std::nullopt;
        prev_lo = lo;
        prev_hi = hi;
        f_prev_lo = f_lo;
        f_prev_hi = f_hi;
        step *= 2.0;
    }
    return std::nullopt;
}

RootResult damped_newton(const ScalarFunction& f, Bracket b, const NewtonOptions& options) {
    if (b.lo == b.hi) return RootResult{b.lo, b.f_lo, 0};
    if (b.lo > b.hi) {
        std::swap(b.lo, b.hi);
        std::swap(b.f_lo, b.f_hi);
    }
    if (!opposite(b.f_lo, b.f_hi)) {
        throw Error(ErrorCode::InvalidArgument, "damped_newton needs a sign-changing bracket");
    }

    double x = 0.5 * (b.lo + b.hi);
    double fx = f(x);
    for (int it = 1; it <= options.max_iterations; ++it) {
        if (std::abs(fx) <= options.f_tol) return RootResult{x, fx, it};

        // shrink the bracket with the current iterate
        if (opposite(fx, b.f_lo)) {
            b.hi = x;
            b.f_hi = fx;
        } else {
            b.lo = x;
            b.f_lo = fx;
        }
        if (b.hi - b.lo <= options.x_tol * std::max(1.0, std::abs(x))) {
            return RootResult{x, fx, it};
        }

        const double h = options.fd_step * std::max(1.0, std::abs(x));
        const double slope = (f(x + h) - f(x - h)) / (2.0 * h);

        bool accepted = false;
        if (slope != 0.0 && std::isfinite(slope)) {
            double dx = -fx / slope;
            for (int damp = 0; damp < 8; ++damp, dx *= 0.5) {
                const double trial = x + dx;
                if (trial <= b.lo || trial >= b.hi) continue;
                const double f_trial = f(trial);
                if (std::abs(f_trial) < std::abs(fx)) {
                    x = trial;
                    fx = f_trial;
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            x = 0.5 * (b.lo + b.hi);
            fx = f(x);
        }
    }
    throw Error(ErrorCode::NoConvergence,
                "damped Newton exhausted " + std::to_string(options.max_iterations) + " iterations");
}

}  // namespace rac::numerics
