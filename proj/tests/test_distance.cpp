#include "mfp/distance.hpp"
#include "mfp/sequence.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace mfp;

namespace {

FiniteDistanceSpace two_by_two(double d01, double d10) {
    return FiniteDistanceSpace::from_rows({{0.0, d01}, {d10, 0.0}});
}

}  // namespace

TEST(Distance, AbsoluteValueOnLine) {
    EXPECT_DOUBLE_EQ(abs_line().distance(1.0, 4.0), 3.0);
    EXPECT_DOUBLE_EQ(distance(abs_line(), 4.0, 1.0), 3.0);
}

TEST(Distance, SquaredDifference) {
    EXPECT_DOUBLE_EQ(squared_line().distance(1.0, 3.0), 4.0);
    EXPECT_DOUBLE_EQ(squared_space(1).distance(RealVec{1.0}, RealVec{3.0}), 4.0);
}

TEST(Distance, FiniteTableLookup) {
    const auto s = two_by_two(2.0, 5.0);
    EXPECT_DOUBLE_EQ(s.distance(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(s.distance(1, 0), 5.0);
    EXPECT_DOUBLE_EQ(s.as_space().distance(0, 1), 2.0);
}

TEST(Distance, FiniteIndexOutOfRangeIsDomainError) {
    const auto s = two_by_two(2.0, 5.0);
    EXPECT_THROW(s.distance(0, 2), DomainError);
    EXPECT_THROW(s.as_space().distance(2, 0), DomainError);
}

TEST(Distance, VectorSpacesCheckDimension) {
    EXPECT_DOUBLE_EQ(abs_space(2).distance({0.0, 0.0}, {1.0, -3.0}), 3.0);
    EXPECT_DOUBLE_EQ(euclidean_space(2).distance({0.0, 0.0}, {3.0, 4.0}), 5.0);
    EXPECT_DOUBLE_EQ(squared_space(2).distance({0.0, 0.0}, {3.0, 4.0}), 25.0);
    EXPECT_THROW(abs_space(2).distance({0.0}, {1.0, 2.0}), DomainError);
}

TEST(Distance, NonFiniteAndNegativeValuesRejected) {
    const DistanceSpace<double> nan_space("nan", [](double, double) { return std::nan(""); });
    EXPECT_THROW(nan_space.distance(0.0, 1.0), NumericError);
    const DistanceSpace<double> negative("neg", [](double x, double y) { return x - y; });
    EXPECT_THROW(negative.distance(0.0, 1.0), DomainError);
}

TEST(Distance, SDistanceNeedsConstant) {
    EXPECT_THROW(DistanceSpace<double>("bad", [](double, double) { return 0.0; }, {DistanceClass::SDistance}),
                 ArgumentError);
    EXPECT_THROW(DistanceSpace<double>("bad", [](double, double) { return 0.0; }, {}, 0.0), ArgumentError);
    EXPECT_EQ(squared_line().s_constant(), 2.0);
}

TEST(Distance, MetricDeclarationImpliesBoth) {
    ClassSet a{DistanceClass::Metric};
    EXPECT_TRUE(a.contains(DistanceClass::Symmetric));
    EXPECT_TRUE(a.contains(DistanceClass::Quasimetric));
    ClassSet b{DistanceClass::Symmetric, DistanceClass::Quasimetric};
    EXPECT_TRUE(b.contains(DistanceClass::Metric));
    ClassSet c{DistanceClass::Symmetric};
    EXPECT_FALSE(c.contains(DistanceClass::Metric));
}

TEST(Distance, BuiltinDeclarations) {
    EXPECT_TRUE(abs_line().declared().contains(DistanceClass::Metric));
    EXPECT_TRUE(abs_line().declared().contains(DistanceClass::Complete));
    EXPECT_FALSE(squared_line().declared().contains(DistanceClass::Quasimetric));
    EXPECT_TRUE(squared_line().declared().contains(DistanceClass::Symmetric));
    EXPECT_TRUE(squared_line().declared().contains(DistanceClass::SDistance));
}

TEST(Distance, ClassNamesRoundTrip) {
    for (auto c : kAllDistanceClasses) EXPECT_EQ(parse_distance_class(to_string(c)), c);
    EXPECT_FALSE(parse_distance_class("Ultrametric").has_value());
}

TEST(Ball, StrictInequality) {
    EXPECT_TRUE(ball_contains(abs_line(), 0.0, 1.0, 0.5));
    EXPECT_FALSE(ball_contains(abs_line(), 0.0, 1.0, 1.0));
    EXPECT_FALSE(ball_contains(two_by_two(2.0, 1.0).as_space(), Index{0}, 2.0, Index{1}));
}

TEST(Ball, NonPositiveRadiusRejected) {
    EXPECT_THROW(ball_contains(abs_line(), 0.0, 0.0, 0.0), ArgumentError);
    EXPECT_THROW(ball_contains(abs_line(), 0.0, -1.0, 0.0), ArgumentError);
}

TEST(FiniteSpace, ShapeAndValueChecks) {
    EXPECT_THROW(FiniteDistanceSpace(0, {}), ArgumentError);
    EXPECT_THROW(FiniteDistanceSpace(2, {0.0, 1.0, 1.0}), ArgumentError);
    EXPECT_THROW(FiniteDistanceSpace::from_rows({{0.0, -1.0}, {1.0, 0.0}}), ArgumentError);
    EXPECT_THROW(FiniteDistanceSpace::from_rows({{0.0, INFINITY}, {1.0, 0.0}}), ArgumentError);
}

TEST(FiniteSpace, AxiomTwoViolationReported) {
    EXPECT_FALSE(two_by_two(1.0, 0.0).axiom_ii_violation().has_value());
    const auto v = two_by_two(0.0, 0.0).axiom_ii_violation();
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, (std::pair<Index, Index>{0, 1}));
    const auto diag = FiniteDistanceSpace::from_rows({{1.0, 1.0}, {1.0, 0.0}}).axiom_ii_violation();
    ASSERT_TRUE(diag.has_value());
    EXPECT_EQ(diag->first, diag->second);
}

TEST(FiniteSpace, RelabelAndScale) {
    const auto s = FiniteDistanceSpace::from_rows({{0, 1, 2}, {3, 0, 4}, {5, 6, 0}});
    const std::vector<Index> perm{2, 0, 1};
    const auto r = s.relabeled(perm);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) EXPECT_EQ(r(perm[i], perm[j]), s(i, j));
    }
    EXPECT_EQ(s.scaled(2.0)(1, 2), 8.0);
    EXPECT_THROW(s.scaled(0.0), ArgumentError);
}

TEST(FiniteSpace, FromPoints) {
    const std::vector<double> pts{0.0, 1.0, 3.0};
    const auto s = FiniteDistanceSpace::from_points(pts, [](double x, double y) { return (x - y) * (x - y); });
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s(0, 2), 9.0);
    EXPECT_EQ(s(2, 1), 4.0);
}

// Sequences.

namespace {

// d(x_n, x_m) = 2^-min(n,m) off the diagonal.
DistanceSpace<Index> dyadic_indices() {
    return DistanceSpace<Index>("dyadic", [](Index n, Index m) {
        return n == m ? 0.0 : std::ldexp(1.0, -static_cast<int>(std::min(n, m)));
    });
}

std::vector<double> harmonic(std::size_t count) {
    std::vector<double> out;
    for (std::size_t n = 1; n <= count; ++n) out.push_back(1.0 / static_cast<double>(n));
    return out;
}

}  // namespace

TEST(Sequence, StepArrays) {
    const SequenceTrace<double> t(abs_line(), {0.0, 1.0, 3.0});
    ASSERT_EQ(t.step_fwd().size(), 2u);
    EXPECT_EQ(t.step_fwd()[1], 2.0);
    EXPECT_EQ(t.step_bwd()[0], 1.0);
}

TEST(Sequence, DyadicTraceIsCauchy) {
    std::vector<Index> pts(30);
    for (Index n = 0; n < 30; ++n) pts[n] = n;
    const SequenceTrace<Index> t(dyadic_indices(), pts);
    EXPECT_TRUE(is_cauchy(t, 1e-3, 5));
}

TEST(Sequence, AlternatingIsNotCauchy) {
    std::vector<double> pts;
    for (int n = 0; n < 40; ++n) pts.push_back(n % 2);
    EXPECT_FALSE(is_cauchy(SequenceTrace<double>(abs_line(), pts), 0.5, 5));
}

TEST(Sequence, ConstantIsCauchyAtAnyTolerance) {
    const SequenceTrace<double> t(abs_line(), std::vector<double>(20, 7.0));
    EXPECT_TRUE(is_cauchy(t, 1e-300, 8));
    EXPECT_TRUE(is_strongly_asymptotically_regular(t, 1e-300, 8));
}

TEST(Sequence, WindowTooLong) {
    const SequenceTrace<double> t(abs_line(), {1.0, 2.0, 3.0});
    EXPECT_THROW(is_cauchy(t, 1.0, 3), ArgumentError);
    EXPECT_THROW(is_cauchy(t, 0.0, 1), ArgumentError);
    EXPECT_THROW(is_convergent_to(t, 0.0, 1.0, 0), ArgumentError);
    EXPECT_NO_THROW(is_cauchy(t, 1.0, 2));
}

TEST(Sequence, HarmonicConvergesToZeroOnly) {
    const SequenceTrace<double> t(abs_line(), harmonic(500));
    EXPECT_TRUE(is_convergent_to(t, 0.0, 1e-2, 3));
    EXPECT_FALSE(is_convergent_to(t, 1.0, 1e-2, 3));
}

TEST(Sequence, ConvergenceMeasuredFromTheLimit) {
    // d(x,y) = max(y - x, 0) + min(1, max(x - y, 0)): moving up costs the full gap,
    // moving down costs at most 1.
    const DistanceSpace<double> q("up-down", [](double x, double y) {
        return std::max(y - x, 0.0) + std::min(1.0, std::max(x - y, 0.0));
    });
    std::vector<double> pts;
    for (int n = 0; n < 20; ++n) pts.push_back(0.0);
    const SequenceTrace<double> t(q, pts);
    // From limit 5 down to 0 costs 1; from 0 up to 5 costs 5.
    EXPECT_DOUBLE_EQ(q.distance(5.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(q.distance(0.0, 5.0), 5.0);
    EXPECT_TRUE(is_convergent_to(t, 5.0, 1.0, 4));
    EXPECT_FALSE(is_convergent_to(t, -5.0, 1.0, 4));
}

TEST(Sequence, HalvingOrbitIsRegularWithinForty) {
    std::vector<double> pts{1.0};
    while (pts.size() < 41) pts.push_back(pts.back() / 2.0);
    EXPECT_TRUE(is_strongly_asymptotically_regular(SequenceTrace<double>(abs_line(), pts), 1e-6, 8));
}

TEST(Sequence, IncrementOrbitIsNotRegular) {
    std::vector<double> pts{0.0};
    while (pts.size() < 200) pts.push_back(pts.back() + 1.0);
    EXPECT_FALSE(is_strongly_asymptotically_regular(SequenceTrace<double>(abs_line(), pts), 1.5, 8));
}
