// Randomized properties with seeded generators. Each failure prints the
// generating seed.

#include "mfp/classify.hpp"
#include "mfp/oracle.hpp"
#include "mfp/product.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace mfp;

namespace {

// Integer table with zero diagonal; off-diagonal zeros are allowed as long as
// no pair is zero in both directions.
oracle::Matrix gen_matrix(std::mt19937_64& rng) {
    const std::size_t n = 1 + rng() % 5;
    std::uniform_int_distribution<int> value(0, 4);
    const bool symmetric = rng() % 3 == 0;
    oracle::Matrix d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i][j] = value(rng);
            d[j][i] = symmetric ? d[i][j] : value(rng);
            if (d[i][j] + d[j][i] == 0.0) d[i][j] = d[j][i] = 1.0;
        }
    }
    return d;
}

oracle::Matrix gen_points_matrix(std::mt19937_64& rng) {
    const std::size_t n = 1 + rng() % 5;
    std::uniform_int_distribution<int> coord(-6, 6);
    std::vector<double> pts;
    while (pts.size() < n) {
        const double p = coord(rng);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const double power = rng() % 2 == 0 ? 1.0 : 2.0;
    return oracle::matrix_from_points(pts, [power](double x, double y) { return std::pow(std::abs(x - y), power); });
}

std::vector<Index> gen_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<Index> p(n);
    std::iota(p.begin(), p.end(), Index{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

void expect_matches_reference(const oracle::Matrix& d, std::uint64_t seed) {
    const auto space = FiniteDistanceSpace::from_rows(d);
    const auto r = classify_finite(space);
    ASSERT_TRUE(r.fundamental_ok) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::Symmetric), oracle::symmetric(d)) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::Quasimetric), oracle::triangle(d)) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::Metric), oracle::symmetric(d) && oracle::triangle(d)) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::NDistance), oracle::zero_chaining(d)) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::FDistance), oracle::zero_chaining(d)) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::HDistance), oracle::positive_off_diagonal(d)) << "seed " << seed;
    EXPECT_EQ(r.passes(DistanceClass::CDistance), oracle::positive_off_diagonal(d)) << "seed " << seed;
    EXPECT_TRUE(r.passes(DistanceClass::Complete));
    const double s = oracle::minimal_s(d);
    ASSERT_TRUE(r.minimal_s);
    if (std::isinf(s)) {
        EXPECT_TRUE(std::isinf(*r.minimal_s)) << "seed " << seed;
        EXPECT_FALSE(r.passes(DistanceClass::SDistance)) << "seed " << seed;
    } else {
        EXPECT_NEAR(*r.minimal_s, s, 1e-12 * std::max(1.0, s)) << "seed " << seed;
        EXPECT_TRUE(r.passes(DistanceClass::SDistance)) << "seed " << seed;
    }
    for (auto c : kAllDistanceClasses) {
        const auto& v = r.verdict(c);
        if (v.evaluated && !v.passed) {
            EXPECT_TRUE(counterexample_violates(space, c, v.counterexample)) << "seed " << seed;
        }
    }
}

}  // namespace

TEST(Properties, ClassifierMatchesReferenceOnTables) {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        std::mt19937_64 rng(seed);
        expect_matches_reference(gen_matrix(rng), seed);
    }
}

TEST(Properties, ClassifierMatchesReferenceOnPoints) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        expect_matches_reference(gen_points_matrix(rng), seed);
    }
}

TEST(Properties, VerdictsInvariantUnderRelabeling) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(2000 + seed);
        const auto space = FiniteDistanceSpace::from_rows(gen_matrix(rng));
        const auto perm = gen_permutation(space.size(), rng);
        const auto a = classify_finite(space);
        const auto b = classify_finite(space.relabeled(perm));
        for (auto c : kAllDistanceClasses) EXPECT_EQ(a.passes(c), b.passes(c)) << "seed " << seed;
        EXPECT_EQ(*a.minimal_s, *b.minimal_s) << "seed " << seed;
    }
}

TEST(Properties, VerdictsInvariantUnderScaling) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(3000 + seed);
        const auto space = FiniteDistanceSpace::from_rows(gen_matrix(rng));
        const double c = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        const auto a = classify_finite(space);
        const auto b = classify_finite(space.scaled(c));
        for (auto cls : kAllDistanceClasses) EXPECT_EQ(a.passes(cls), b.passes(cls)) << "seed " << seed;
        if (std::isinf(*a.minimal_s)) {
            EXPECT_TRUE(std::isinf(*b.minimal_s));
        } else {
            EXPECT_NEAR(*a.minimal_s, *b.minimal_s, 1e-12 * *a.minimal_s) << "seed " << seed;
        }
    }
}

TEST(Properties, ProductSandwichOnFiniteSpaces) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(4000 + seed);
        const auto d = gen_matrix(rng);
        const std::size_t m = 1 + rng() % 3;
        const auto sup = oracle::product_matrix(d, m, false);
        const auto sum = oracle::product_matrix(d, m, true);
        const auto base = FiniteDistanceSpace::from_rows(d);
        EXPECT_EQ(materialize_product(base, m, ProductMode::Sup).rows(), sup);
        for (std::size_t a = 0; a < sup.size(); ++a) {
            for (std::size_t b = 0; b < sup.size(); ++b) {
                EXPECT_LE(sup[a][b], sum[a][b]);
                EXPECT_LE(sum[a][b], static_cast<double>(m) * sup[a][b]);
            }
        }
    }
}

TEST(Properties, EnumerationMatchesReference) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        std::mt19937_64 rng(5000 + seed);
        RandomInstanceOptions o;
        o.space.n = 1 + rng() % 4;
        o.m = 1 + rng() % 3;
        o.image_size = rng() % 3;
        const auto inst = random_instance(o, rng());
        const oracle::Instance ref{inst.space.rows(), inst.table, inst.lambda.zero_based()};
        const auto want = oracle::fixed_points(ref);
        const auto got = enumerate_fixed_points(inst);
        ASSERT_EQ(got.size(), want.size()) << "seed " << seed;
        for (std::size_t k = 0; k < got.size(); ++k) {
            EXPECT_EQ(oracle::Tuple(got[k].begin(), got[k].end()), want[k]) << "seed " << seed;
        }
        EXPECT_EQ(fixed_points_of_lifted_table(inst), got) << "seed " << seed;
    }
}

TEST(Properties, FalseWitnessesRejected) {
    // Random index lists are accepted only when they really violate the class.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(6000 + seed);
        const auto d = gen_matrix(rng);
        const auto space = FiniteDistanceSpace::from_rows(d);
        const std::size_t n = d.size();
        const Index x = rng() % n;
        const Index y = rng() % n;
        const Index z = rng() % n;
        EXPECT_EQ(counterexample_violates(space, DistanceClass::Symmetric, {x, y}), d[x][y] != d[y][x]);
        EXPECT_EQ(counterexample_violates(space, DistanceClass::Quasimetric, {x, y, z}),
                  d[x][y] > (d[x][z] + d[z][y]) * (1 + 1e-12));
    }
}
