#pragma once

#include <optional>
#include <string_view>

#include "rac/dataset.hpp"
#include "rac/utility.hpp"

namespace rac {

/// Shape of the certain utility curve.
enum class Curvature {
    StrictlyConcave,
    StrictlyConvexIncreasing,
    Linear,      ///< counts as both concave and convex, and increasing
    Horizontal,  ///< constant; concave and convex but not increasing
};

/// Which family of definitions applies.
///
/// GroupOne assumes a concave certain curve for every investor (with the
/// single exception of the not-enough-risk-averse case, which needs an
/// increasing convex curve). GroupTwo lets curvature vary by investor.
enum class DefinitionGroup { GroupOne, GroupTwo };

enum class AttitudeLabel {
    RiskAverse,
    RiskLoving,
    NotEnoughRiskLoving,
    NotEnoughRiskAverse,
    RiskNeutral,
};

/// Sign of the extra utility an investor attaches to uncertain outcomes.
enum class AllocationSign { Negative, Positive, Zero };

struct RiskAttitude {
    AttitudeLabel label;
    DefinitionGroup group;
    int defining_equation;  ///< 1..10, numbering of the definitional inequalities
    AllocationSign allocation;

    friend bool operator==(const RiskAttitude&, const RiskAttitude&) = default;
};

inline constexpr double kDefaultEqualityTol = 1e-9;

/// eta < 1 -> Negative, eta > 1 -> Positive, eta == 1 -> Zero. The reading
/// holds because the CRRA curve in use has rho >= 0.
AllocationSign allocation_sign(double eta, double rho);

/// Applies the definitional inequalities to `cmp`.
///
/// With delta = certain - uncertain, |delta| <= tol is risk-neutral.
/// Otherwise the label follows from the allocation sign, the sign of delta
/// and the curvature (defining_equation in parentheses):
///
///   group one   negative, delta > 0                  -> risk-averse (1)
///               positive, delta < 0                  -> risk-loving (2)
///               positive, delta > 0                  -> not enough risk-loving (3)
///               negative, delta < 0, convex increasing -> not enough risk-averse (5)
///   group two   concave, negative, delta > 0         -> risk-averse (6)
///               concave, positive, delta > 0         -> not enough risk-loving (7)
///               convex,  positive, delta < 0         -> risk-loving (8)
///               convex increasing, negative, delta < 0 -> not enough risk-averse (9)
///
/// Risk-neutral has defining_equation 4 in group one and 10 in group two.
///
/// Throws Unclassifiable when no definition matches (including any zero
/// allocation, which the definitions exclude) and InvalidCombination when
/// the only matching definition is not-enough-risk-averse on a horizontal
/// curve.
RiskAttitude classify(const UtilityComparison& cmp, Curvature curvature, DefinitionGroup group,
                      double tol = kDefaultEqualityTol);

/// Curvature of a CRRA curve: rho > 0 is strictly concave, rho == 0 linear.
Curvature crra_curvature(double rho);

struct PipelineOutcome {
    UtilityComparison comparison;
    RiskAttitude attitude;
};

/// Certain utility of the second-to-last year's consumption against
/// beta * eta * E[u] of next year's, with E[u] the log-normal expectation
/// over the dataset's consumption levels (shifted CRRA form).
PipelineOutcome classify_pipeline(const MarketDataset& d, double eta, double rho, double beta,
                                  DefinitionGroup group, double tol = kDefaultEqualityTol);

std::string_view label_text(AttitudeLabel label) noexcept;
std::optional<AttitudeLabel> parse_label_text(std::string_view text) noexcept;
std::string_view to_string(DefinitionGroup group) noexcept;
std::string_view to_string(Curvature curvature) noexcept;
std::string_view to_string(AllocationSign sign) noexcept;

}  // namespace rac
