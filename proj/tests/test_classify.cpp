#include "mfp/classify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace mfp;

namespace {

FiniteDistanceSpace points(std::vector<double> pts, bool squared = false) {
    return FiniteDistanceSpace::from_points(pts, [squared](double x, double y) {
        return squared ? (x - y) * (x - y) : std::abs(x - y);
    });
}

}  // namespace

TEST(Classify, AbsoluteValueOnThreePoints) {
    const auto r = classify_finite(points({0, 1, 2}));
    ASSERT_TRUE(r.fundamental_ok);
    for (auto c : kAllDistanceClasses) {
        EXPECT_TRUE(r.passes(c)) << to_string(c);
        EXPECT_TRUE(r.verdict(c).evaluated) << to_string(c);
    }
    ASSERT_TRUE(r.minimal_s.has_value());
    EXPECT_DOUBLE_EQ(*r.minimal_s, 1.0);
}

TEST(Classify, SquaredDifferenceBreaksTriangle) {
    const auto s = points({0, 1, 3}, true);
    const auto r = classify_finite(s);
    EXPECT_TRUE(r.passes(DistanceClass::Symmetric));
    EXPECT_FALSE(r.passes(DistanceClass::Quasimetric));
    EXPECT_FALSE(r.passes(DistanceClass::Metric));
    EXPECT_TRUE(r.passes(DistanceClass::SDistance));
    // indices (0, 2, 1) are the points (0, 3, 1): 9 > 1 + 4
    EXPECT_EQ(r.verdict(DistanceClass::Quasimetric).counterexample, (std::vector<Index>{0, 2, 1}));
    EXPECT_TRUE(counterexample_violates(s, DistanceClass::Quasimetric, r.verdict(DistanceClass::Quasimetric).counterexample));
    ASSERT_TRUE(r.minimal_s.has_value());
    EXPECT_NEAR(*r.minimal_s, 1.8, 1e-12);
}

TEST(Classify, TwoPointAsymmetric) {
    const auto s = FiniteDistanceSpace::from_rows({{0, 1}, {2, 0}});
    const auto r = classify_finite(s);
    EXPECT_FALSE(r.passes(DistanceClass::Symmetric));
    EXPECT_TRUE(r.passes(DistanceClass::Quasimetric));
    EXPECT_FALSE(r.passes(DistanceClass::Metric));
    EXPECT_EQ(r.verdict(DistanceClass::Metric).counterexample, r.verdict(DistanceClass::Symmetric).counterexample);
    EXPECT_TRUE(counterexample_violates(s, DistanceClass::Symmetric, r.verdict(DistanceClass::Symmetric).counterexample));
}

TEST(Classify, AxiomTwoFailureStopsEvaluation) {
    const auto r = classify_finite(FiniteDistanceSpace::from_rows({{0, 0}, {0, 0}}));
    EXPECT_FALSE(r.fundamental_ok);
    EXPECT_EQ(r.fundamental_witness, (std::vector<Index>{0, 1}));
    for (auto c : kAllDistanceClasses) {
        EXPECT_FALSE(r.verdict(c).evaluated);
        EXPECT_FALSE(r.passes(c));
    }
    EXPECT_FALSE(r.minimal_s.has_value());
}

TEST(Classify, ZeroChainFailsNAndF) {
    // d(0,1) = d(1,2) = 0 but d(0,2) = 1.
    const auto s = FiniteDistanceSpace::from_rows({{0, 0, 1}, {1, 0, 0}, {1, 1, 0}});
    const auto r = classify_finite(s);
    EXPECT_FALSE(r.passes(DistanceClass::NDistance));
    EXPECT_FALSE(r.passes(DistanceClass::FDistance));
    EXPECT_EQ(r.verdict(DistanceClass::NDistance).counterexample, (std::vector<Index>{0, 1, 2}));
    EXPECT_TRUE(counterexample_violates(s, DistanceClass::NDistance, r.verdict(DistanceClass::NDistance).counterexample));
    EXPECT_FALSE(r.passes(DistanceClass::SDistance));
    EXPECT_TRUE(std::isinf(*r.minimal_s));
    EXPECT_FALSE(r.passes(DistanceClass::HDistance));
    EXPECT_FALSE(r.passes(DistanceClass::CDistance));
    EXPECT_TRUE(r.passes(DistanceClass::Complete));
}

TEST(Classify, ZeroEntryWithoutChainKeepsN) {
    // One zero direction, nothing to chain through.
    const auto s = FiniteDistanceSpace::from_rows({{0, 0}, {1, 0}});
    const auto r = classify_finite(s);
    EXPECT_TRUE(r.passes(DistanceClass::NDistance));
    EXPECT_TRUE(r.passes(DistanceClass::FDistance));
    EXPECT_FALSE(r.passes(DistanceClass::HDistance));
    const auto& h = r.verdict(DistanceClass::HDistance).counterexample;
    EXPECT_TRUE(counterexample_violates(s, DistanceClass::HDistance, h));
    const auto& c = r.verdict(DistanceClass::CDistance).counterexample;
    EXPECT_TRUE(counterexample_violates(s, DistanceClass::CDistance, c));
}

TEST(Classify, DeltaWitnessesRecorded) {
    const auto r = classify_finite(points({0, 1, 3}));
    EXPECT_FALSE(r.n_delta_witness.empty());
    EXPECT_FALSE(r.f_delta_witness.empty());
    for (const auto& w : r.n_delta_witness) {
        EXPECT_GT(w.delta, 0.0);
        EXPECT_GT(w.epsilon, 0.0);
    }
    const auto quiet = classify_finite(points({0, 1, 3}), {.rel_slack = 1e-12, .record_delta_witness = false});
    EXPECT_TRUE(quiet.n_delta_witness.empty());
}

TEST(Classify, SinglePoint) {
    const auto r = classify_finite(FiniteDistanceSpace(1, {0.0}));
    EXPECT_TRUE(r.fundamental_ok);
    for (auto c : kAllDistanceClasses) EXPECT_TRUE(r.passes(c));
    EXPECT_EQ(r.minimal_s, 1.0);
}

TEST(Classify, ClassifiedSpaceDeclaresPassedClasses) {
    const auto s = points({0, 1, 3}, true);
    const auto view = classified_space(s, classify_finite(s));
    EXPECT_TRUE(view.declared().contains(DistanceClass::Symmetric));
    EXPECT_FALSE(view.declared().contains(DistanceClass::Quasimetric));
    EXPECT_TRUE(view.declared().contains(DistanceClass::SDistance));
    EXPECT_NEAR(*view.s_constant(), 1.8, 1e-12);
}

TEST(Classify, FalseWitnessIsRejected) {
    const auto s = points({0, 1, 2});
    EXPECT_FALSE(counterexample_violates(s, DistanceClass::Quasimetric, {0, 2, 1}));
    EXPECT_FALSE(counterexample_violates(s, DistanceClass::Symmetric, {0, 1}));
    EXPECT_FALSE(counterexample_violates(s, DistanceClass::Quasimetric, {0, 9, 1}));
}
