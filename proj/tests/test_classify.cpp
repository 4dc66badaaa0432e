#include <doctest.h>

#include <cmath>
#include <vector>

#include "rac/calibration.hpp"
#include "rac/classify.hpp"
#include "rac/error.hpp"
#include "rac/moments.hpp"
#include "test_support.hpp"

using namespace rac;

namespace {

UtilityComparison cmp_of(double certain, double uncertain, double eta) {
    UtilityComparison c;
    c.certain = certain;
    c.uncertain = uncertain;
    c.eta = eta;
    c.beta = 0.99;
    c.expected_u = uncertain / (0.99 * eta);
    return c;
}

std::optional<ErrorCode> error_of(const UtilityComparison& c, Curvature k, DefinitionGroup g, double tol = 1e-9) {
    try {
        classify(c, k, g, tol);
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

constexpr auto kOne = DefinitionGroup::GroupOne;
constexpr auto kTwo = DefinitionGroup::GroupTwo;
constexpr std::array kCurvatures = {Curvature::StrictlyConcave, Curvature::StrictlyConvexIncreasing,
                                    Curvature::Linear, Curvature::Horizontal};

}  // namespace

TEST_CASE("published-style comparisons") {
    auto eq = classify(cmp_of(7.103787, 6.192703, 0.961745), Curvature::StrictlyConcave, kTwo);
    CHECK(eq.label == AttitudeLabel::RiskAverse);
    CHECK(eq.defining_equation == 6);
    CHECK(eq.allocation == AllocationSign::Negative);

    auto rf = classify(cmp_of(7.103787, 6.563893, 1.019392), Curvature::StrictlyConcave, kTwo);
    CHECK(rf.label == AttitudeLabel::NotEnoughRiskLoving);
    CHECK(rf.defining_equation == 7);
    CHECK(rf.allocation == AllocationSign::Positive);
}

TEST_CASE("group one labels") {
    const auto k = Curvature::StrictlyConcave;
    CHECK(classify(cmp_of(2, 1, 0.9), k, kOne).label == AttitudeLabel::RiskAverse);
    CHECK(classify(cmp_of(2, 1, 0.9), k, kOne).defining_equation == 1);
    CHECK(classify(cmp_of(1, 2, 1.1), k, kOne).label == AttitudeLabel::RiskLoving);
    CHECK(classify(cmp_of(1, 2, 1.1), k, kOne).defining_equation == 2);
    CHECK(classify(cmp_of(2, 1, 1.1), k, kOne).label == AttitudeLabel::NotEnoughRiskLoving);
    CHECK(classify(cmp_of(2, 1, 1.1), k, kOne).defining_equation == 3);
    CHECK(classify(cmp_of(1, 1, 1.1), k, kOne).defining_equation == 4);
    auto nera = classify(cmp_of(1, 2, 0.9), Curvature::StrictlyConvexIncreasing, kOne);
    CHECK(nera.label == AttitudeLabel::NotEnoughRiskAverse);
    CHECK(nera.defining_equation == 5);
    CHECK(error_of(cmp_of(1, 2, 0.9), k, kOne) == ErrorCode::Unclassifiable);
}

TEST_CASE("group two labels") {
    CHECK(classify(cmp_of(1, 2, 1.1), Curvature::StrictlyConvexIncreasing, kTwo).defining_equation == 8);
    CHECK(classify(cmp_of(1, 2, 0.9), Curvature::StrictlyConvexIncreasing, kTwo).defining_equation == 9);
    CHECK(classify(cmp_of(1, 2, 0.9), Curvature::Linear, kTwo).label == AttitudeLabel::NotEnoughRiskAverse);
    CHECK(classify(cmp_of(3, 3, 0.9), Curvature::StrictlyConcave, kTwo).label == AttitudeLabel::RiskNeutral);
    CHECK(classify(cmp_of(3, 3, 0.9), Curvature::StrictlyConcave, kTwo).defining_equation == 10);
    CHECK(error_of(cmp_of(1, 2, 1.1), Curvature::StrictlyConcave, kTwo) == ErrorCode::Unclassifiable);
    CHECK(error_of(cmp_of(2, 1, 0.9), Curvature::StrictlyConvexIncreasing, kTwo) == ErrorCode::Unclassifiable);
}

TEST_CASE("horizontal curve with the not-enough-risk-averse pattern is an invalid combination") {
    CHECK(error_of(cmp_of(1, 2, 0.9), Curvature::Horizontal, kOne) == ErrorCode::InvalidCombination);
    CHECK(error_of(cmp_of(1, 2, 0.9), Curvature::Horizontal, kTwo) == ErrorCode::InvalidCombination);
}

TEST_CASE("zero allocation is never classified") {
    for (auto k : kCurvatures) {
        for (auto g : {kOne, kTwo}) {
            CHECK(error_of(cmp_of(2, 1, 1.0), k, g) == ErrorCode::Unclassifiable);
            CHECK(error_of(cmp_of(1, 1, 1.0), k, g) == ErrorCode::Unclassifiable);
        }
    }
    CHECK(allocation_sign(1.0, 2.0) == AllocationSign::Zero);
    CHECK(allocation_sign(0.5, 2.0) == AllocationSign::Negative);
    CHECK(allocation_sign(1.5, 0.0) == AllocationSign::Positive);
    CHECK_THROWS_AS(allocation_sign(0.0, 1.0), Error);
    CHECK_THROWS_AS(allocation_sign(1.0, -1.0), Error);
}

TEST_CASE("label follows the sign of the utility gap") {
    test::Gen gen(2024);
    for (int i = 0; i < 5000; ++i) {
        const double certain = gen.uniform(-10, 10), uncertain = gen.uniform(-10, 10);
        double eta = gen.uniform(0.5, 1.5);
        if (eta == 1.0) eta = 0.75;
        const auto k = kCurvatures[gen.integer(0, 3)];
        const auto g = gen.coin() ? kOne : kTwo;
        const double delta = certain - uncertain;
        RiskAttitude a;
        try {
            a = classify(cmp_of(certain, uncertain, eta), k, g);
        } catch (const Error& e) {
            CHECK((e.code() == ErrorCode::Unclassifiable || e.code() == ErrorCode::InvalidCombination));
            continue;
        }
        if (std::abs(delta) <= 1e-9) {
            CHECK(a.label == AttitudeLabel::RiskNeutral);
        } else if (delta > 0) {
            CHECK((a.label == AttitudeLabel::RiskAverse || a.label == AttitudeLabel::NotEnoughRiskLoving));
        } else {
            CHECK((a.label == AttitudeLabel::RiskLoving || a.label == AttitudeLabel::NotEnoughRiskAverse));
        }
        CHECK(a.allocation == (eta < 1 ? AllocationSign::Negative : AllocationSign::Positive));
        CHECK(a.group == g);
    }
}

TEST_CASE("a wider tolerance never turns risk-neutral into something else") {
    test::Gen gen(55);
    for (int i = 0; i < 2000; ++i) {
        const double certain = gen.uniform(0, 10);
        const double uncertain = certain + gen.uniform(-1e-3, 1e-3);
        const double eta = gen.coin() ? 0.9 : 1.1;
        const double t1 = gen.log_uniform(1e-8, 1e-2), t2 = t1 * gen.uniform(1.0, 10.0);
        const auto c = cmp_of(certain, uncertain, eta);
        auto first = error_of(c, Curvature::StrictlyConcave, kOne, t1);
        if (first) continue;
        if (classify(c, Curvature::StrictlyConcave, kOne, t1).label == AttitudeLabel::RiskNeutral) {
            CHECK(classify(c, Curvature::StrictlyConcave, kOne, t2).label == AttitudeLabel::RiskNeutral);
        }
    }
}

TEST_CASE("labels are invariant to positive affine rescaling of utility") {
    test::Gen gen(808);
    for (int i = 0; i < 2000; ++i) {
        const double certain = gen.uniform(-10, 10), uncertain = gen.uniform(-10, 10);
        if (std::abs(certain - uncertain) < 1e-6) continue;
        const double eta = gen.coin() ? gen.uniform(0.5, 0.99) : gen.uniform(1.01, 1.5);
        const double a = gen.log_uniform(1e-2, 1e2), b = gen.uniform(-100, 100);
        const auto k = kCurvatures[gen.integer(0, 3)];
        const auto g = gen.coin() ? kOne : kTwo;
        const auto c1 = cmp_of(certain, uncertain, eta);
        const auto c2 = cmp_of(a * certain + b, a * uncertain + b, eta);
        auto e1 = error_of(c1, k, g, 0.0), e2 = error_of(c2, k, g, 0.0);
        CHECK(e1 == e2);
        if (!e1 && !e2) CHECK(classify(c1, k, g, 0.0).label == classify(c2, k, g, 0.0).label);
    }
}

TEST_CASE("both groups agree on a strictly concave curve where both classify") {
    test::Gen gen(4242);
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto c = cmp_of(gen.uniform(-5, 5), gen.uniform(-5, 5), gen.coin() ? 0.9 : 1.1);
        if (error_of(c, Curvature::StrictlyConcave, kOne) || error_of(c, Curvature::StrictlyConcave, kTwo)) continue;
        ++compared;
        CHECK(classify(c, Curvature::StrictlyConcave, kOne).label ==
              classify(c, Curvature::StrictlyConcave, kTwo).label);
    }
    CHECK(compared > 500);
}

TEST_CASE("published variants: equity risk-averse, risk-free not enough risk-loving in both groups") {
    struct Case {
        MarketDataset d;
        double rho, zeta, xi;
    };
    std::vector<Case> cases = {
        {test::reference_dataset(), test::kRhoRealized, test::kZetaRealized, test::kXiRealized},
        {test::projected_reference_dataset(), test::kRhoProjected, test::kZetaProjected, test::kXiProjected},
    };
    for (const auto& c : cases) {
        for (auto g : {kOne, kTwo}) {
            auto eq = classify_pipeline(c.d, c.zeta, c.rho, test::kBeta, g);
            CHECK(eq.attitude.label == AttitudeLabel::RiskAverse);
            CHECK(eq.attitude.defining_equation == (g == kOne ? 1 : 6));
            auto rf = classify_pipeline(c.d, c.xi, c.rho, test::kBeta, g);
            CHECK(rf.attitude.label == AttitudeLabel::NotEnoughRiskLoving);
            CHECK(rf.attitude.defining_equation == (g == kOne ? 3 : 7));
        }
    }
}

TEST_CASE("pipeline on constant consumption") {
    test::Gen gen(6);
    for (int i = 0; i < 100; ++i) {
        const double k = gen.uniform(1.5, 5000.0);
        const double eps = gen.log_uniform(1e-6, 0.5);
        std::vector<double> c(20, k), ones(20, 1.0);
        MarketDataset d(AnnualSeries(1950, c), AnnualSeries(1950, ones), AnnualSeries(1950, ones));
        auto out = classify_pipeline(d, 1.0 - eps, 2.0, 1.0, kTwo);
        CHECK(out.comparison.certain == doctest::Approx(crra_utility(k, {2.0})));
        CHECK(out.attitude.label == AttitudeLabel::RiskAverse);
    }
}

TEST_CASE("pipeline uses the second-to-last year as the certain year") {
    auto d = test::reference_dataset();
    auto out = classify_pipeline(d, test::kZetaRealized, test::kRhoRealized, test::kBeta, kTwo);
    CHECK(std::abs(out.comparison.certain - 7.103787) < 1e-5);
    CHECK(out.comparison.uncertain ==
          doctest::Approx(test::kBeta * test::kZetaRealized * out.comparison.expected_u));
}

TEST_CASE("crra curvature and text helpers") {
    CHECK(crra_curvature(0.0) == Curvature::Linear);
    CHECK(crra_curvature(1e-12) == Curvature::StrictlyConcave);
    CHECK_THROWS_AS(crra_curvature(-0.1), Error);
    for (auto l : {AttitudeLabel::RiskAverse, AttitudeLabel::RiskLoving, AttitudeLabel::NotEnoughRiskLoving,
                   AttitudeLabel::NotEnoughRiskAverse, AttitudeLabel::RiskNeutral}) {
        CHECK(parse_label_text(label_text(l)) == l);
    }
    CHECK_FALSE(parse_label_text("risk averse"));
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(classify(cmp_of(1, 2, 0.9), Curvature::Linear, kTwo, -1.0), Error);
    auto c = cmp_of(1, 2, 0.9);
    c.certain = std::nan("");
    CHECK(error_of(c, Curvature::Linear, kTwo) == ErrorCode::InvalidArgument);
}
