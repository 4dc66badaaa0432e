#include "rac/classify.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "rac/error.hpp"
#include "rac/moments.hpp"

namespace rac {

namespace {

bool is_concave(Curvature c) { return c != Curvature::StrictlyConvexIncreasing; }
bool is_convex(Curvature c) { return c != Curvature::StrictlyConcave; }

enum class Direction { CertainAbove, CertainBelow };

std::string describe(const UtilityComparison& cmp, Curvature curvature, DefinitionGroup group) {
    return "certain " + std::to_string(cmp.certain) + ", uncertain " + std::to_string(cmp.uncertain) +
           ", eta " + std::to_string(cmp.eta) + ", curvature " + std::string(to_string(curvature)) +
           ", " + std::string(to_string(group));
}

// Not-enough-risk-averse needs an increasing convex curve.
RiskAttitude not_enough_risk_averse(Curvature curvature, DefinitionGroup group, int equation,
                                    const UtilityComparison& cmp) {
    if (curvature == Curvature::Horizontal) {
        throw Error(ErrorCode::InvalidCombination,
                    "not-enough-risk-averse is not defined for a horizontal certain utility curve (" +
                        describe(cmp, curvature, group) + ")");
    }
    if (curvature == Curvature::StrictlyConcave) {
        throw Error(ErrorCode::Unclassifiable,
                    "negative allocation with uncertain above certain utility needs an increasing "
                    "convex curve (" + describe(cmp, curvature, group) + ")");
    }
    return {AttitudeLabel::NotEnoughRiskAverse, group, equation, AllocationSign::Negative};
}

}  // namespace

AllocationSign allocation_sign(double eta, double rho) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw Error(ErrorCode::InvalidArgument, "eta must be strictly positive");
    }
    if (!(rho >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "allocation reading requires rho >= 0");
    }
    if (eta < 1.0) return AllocationSign::Negative;
    if (eta > 1.0) return AllocationSign::Positive;
    return AllocationSign::Zero;
}

RiskAttitude classify(const UtilityComparison& cmp, Curvature curvature, DefinitionGroup group, double tol) {
    if (!(tol >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "equality tolerance must be non-negative");
    }
    if (!std::isfinite(cmp.certain) || !std::isfinite(cmp.uncertain)) {
        throw Error(ErrorCode::InvalidArgument, "utilities must be finite");
    }
    if (!(cmp.eta > 0.0) || !(cmp.beta > 0.0 && cmp.beta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "comparison needs eta > 0 and beta in (0, 1]");
    }

    // The sign reading of eta is stated for rho >= 0, which is the only
    // range UtilitySpec admits.
    const AllocationSign sign = allocation_sign(cmp.eta, 0.0);
    if (sign == AllocationSign::Zero) {
        throw Error(ErrorCode::Unclassifiable,
                    "zero utility allocation (eta = 1) is excluded from the definitions (" +
                        describe(cmp, curvature, group) + ")");
    }

    const double delta = cmp.certain - cmp.uncertain;
    const bool one = group == DefinitionGroup::GroupOne;
    if (std::abs(delta) <= tol) {
        return {AttitudeLabel::RiskNeutral, group, one ? 4 : 10, sign};
    }
    const auto dir = delta > 0.0 ? Direction::CertainAbove : Direction::CertainBelow;
    const bool negative = sign == AllocationSign::Negative;

    if (one) {
        if (negative && dir == Direction::CertainAbove) return {AttitudeLabel::RiskAverse, group, 1, sign};
        if (!negative && dir == Direction::CertainBelow) return {AttitudeLabel::RiskLoving, group, 2, sign};
        if (!negative && dir == Direction::CertainAbove)
            return {AttitudeLabel::NotEnoughRiskLoving, group, 3, sign};
        return not_enough_risk_averse(curvature, group, 5, cmp);
    }

    if (dir == Direction::CertainAbove) {
        if (!is_concave(curvature)) {
            throw Error(ErrorCode::Unclassifiable,
                        "certain above uncertain utility is only defined for a concave curve (" +
                            describe(cmp, curvature, group) + ")");
        }
        return negative ? RiskAttitude{AttitudeLabel::RiskAverse, group, 6, sign}
                        : RiskAttitude{AttitudeLabel::NotEnoughRiskLoving, group, 7, sign};
    }
    if (!negative) {
        if (!is_convex(curvature)) {
            throw Error(ErrorCode::Unclassifiable,
                        "positive allocation with uncertain above certain utility needs a convex curve (" +
                            describe(cmp, curvature, group) + ")");
        }
        return {AttitudeLabel::RiskLoving, group, 8, sign};
    }
    return not_enough_risk_averse(curvature, group, 9, cmp);
}

Curvature crra_curvature(double rho) {
    if (!(rho >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "rho must be non-negative");
    }
    return rho > 0.0 ? Curvature::StrictlyConcave : Curvature::Linear;
}

PipelineOutcome classify_pipeline(const MarketDataset& d, double eta, double rho, double beta,
                                  DefinitionGroup group, double tol) {
    const UtilitySpec spec{rho, UtilityForm::Shifted};
    const double c_now = d.consumption().at_year(d.last_year() - 1);
    const double certain = crra_utility(c_now, spec);
    const double expected_u = expected_utility_unconditional(compute_moments(d), spec);
    const auto cmp = make_comparison(certain, expected_u, beta, eta);
    return {cmp, classify(cmp, crra_curvature(rho), group, tol)};
}

std::string_view label_text(AttitudeLabel label) noexcept {
    switch (label) {
        case AttitudeLabel::RiskAverse: return "Risk-averse";
        case AttitudeLabel::RiskLoving: return "Risk-loving";
        case AttitudeLabel::NotEnoughRiskLoving: return "Not enough risk-loving";
        case AttitudeLabel::NotEnoughRiskAverse: return "Not enough risk-averse";
        case AttitudeLabel::RiskNeutral: return "Risk-neutral";
    }
    return "";
}

std::optional<AttitudeLabel> parse_label_text(std::string_view text) noexcept {
    static constexpr std::array labels = {AttitudeLabel::RiskAverse, AttitudeLabel::RiskLoving,
                                          AttitudeLabel::NotEnoughRiskLoving,
                                          AttitudeLabel::NotEnoughRiskAverse, AttitudeLabel::RiskNeutral};
    for (auto l : labels) {
        if (label_text(l) == text) return l;
    }
    return std::nullopt;
}

std::string_view to_string(DefinitionGroup group) noexcept {
    return group == DefinitionGroup::GroupOne ? "group one" : "group two";
}

std::string_view to_string(Curvature curvature) noexcept {
    switch (curvature) {
        case Curvature::StrictlyConcave: return "strictly concave";
        case Curvature::StrictlyConvexIncreasing: return "strictly convex increasing";
        case Curvature::Linear: return "linear";
        case Curvature::Horizontal: return "horizontal";
    }
    return "";
}

std::string_view to_string(AllocationSign sign) noexcept {
    switch (sign) {
        case AllocationSign::Negative: return "negative";
        case AllocationSign::Positive: return "positive";
        case AllocationSign::Zero: return "zero";
    }
    return "";
}

}  // namespace rac
