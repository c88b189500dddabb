#pragma once

#include "mfp/distance.hpp"
#include "mfp/lambda.hpp"
#include "mfp/picard.hpp"
#include "mfp/product.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mfp {

/// A finite space, an operator table over its m-tuples, and a family.
struct FiniteInstance {
    FiniteDistanceSpace space;
    /// F on every m-tuple, lexicographic order.
    std::vector<Index> table;
    LambdaFamily lambda;

    FiniteInstance(FiniteDistanceSpace space, std::vector<Index> table, LambdaFamily lambda);

    std::size_t n() const noexcept { return space.size(); }
    std::size_t m() const noexcept { return lambda.arity(); }
    std::size_t tuple_count() const noexcept { return table.size(); }

    MultiOperator<Index> op() const;
    DistanceSpace<Index> distance_space() const;
};

/// A fixed point set in lexicographic order.
using FixedPointSet = std::vector<Tuple<Index>>;

/// Direct definition: a_i = F(a_{lambda_i(1)}, ..., a_{lambda_i(m)}) for all i.
FixedPointSet enumerate_fixed_points(const FiniteInstance& inst);

/// lambda F as a map on tuple codes, built without going through the MultiOperator path.
std::vector<Index> lifted_table(const FiniteInstance& inst);

/// Codes c with lifted_table[c] = c.
FixedPointSet fixed_points_of_lifted_table(const FiniteInstance& inst);

struct ExactConstants {
    /// sup d(F x, F y) / d^m(x, y)
    double k_sup_F = 0.0;
    /// m * sup d(F x, F y) / sum-distance(x, y)
    double k_sum_F = 0.0;
    /// sup d^m(lambda F x, lambda F y) / d^m(x, y)
    double k_lifted_sup = 0.0;
    /// sup sum-distance(lambda F x, lambda F y) / sum-distance(x, y)
    double k_lifted_sum = 0.0;
    /// k_lifted_sup <= k_sup_F, up to a relative 1e-12.
    bool lifted_sup_within_F = false;
    /// k_lifted_sum <= k_sum_F, up to a relative 1e-12.
    bool lifted_sum_within_F = false;
};

/// Exact suprema over every ordered pair of m-tuples; 0/0 pairs are skipped
/// and c/0 with c > 0 makes the constant infinite.
ExactConstants exact_contraction_constants(const FiniteInstance& inst);

struct StartOutcome {
    Tuple<Index> start;
    SolveStatus status = SolveStatus::MaxIterExceeded;
    std::optional<Tuple<Index>> endpoint;
    std::size_t iterations = 0;
};

enum class ContractionRoute { None, Sup, Sum };

std::string_view to_string(ContractionRoute r) noexcept;

struct CrossValidationReport {
    FixedPointSet fixed_points;
    bool enumeration_paths_agree = false;
    ExactConstants constants;
    bool balanced = false;
    /// Which exact constant licensed the uniqueness assertion.
    ContractionRoute route = ContractionRoute::None;
    bool asserted = false;
    std::vector<StartOutcome> starts;
    /// Every converged endpoint is an enumerated fixed point.
    bool endpoints_sound = false;
    /// When asserted: a single fixed point reached from every start.
    bool agreement = false;
    std::optional<std::uint64_t> seed;
};

/// Solves from every start in X^m and compares against enumeration. Uniqueness
/// is asserted when the lifted sup constant is below 1, or the family is
/// balanced and the lifted sum constant is below 1.
CrossValidationReport cross_validate(const FiniteInstance& inst, const SolverConfig& config = {});

// Random instances.

enum class RandomShape {
    /// arbitrary nonnegative table with zero diagonal
    Any,
    Symmetric,
    /// shortest-path closure of an asymmetric table
    Quasimetric,
    /// shortest-path closure of a symmetric table
    Metric,
};

struct RandomSpaceOptions {
    std::size_t n = 3;
    RandomShape shape = RandomShape::Any;
    /// off-diagonal entries drawn from {1..max_value} (or {0..max_value} if zeros allowed)
    int max_value = 5;
    /// When true, entries above the diagonal may be zero (axiom (ii) is still kept).
    bool allow_zero = false;
};

FiniteDistanceSpace random_finite_space(const RandomSpaceOptions& options, std::mt19937_64& rng);

/// Random family with every entry uniform on {0..m-1}.
LambdaFamily random_family(std::size_t m, std::mt19937_64& rng);

struct RandomInstanceOptions {
    RandomSpaceOptions space;
    std::size_t m = 2;
    /// Draw F values from a random subset of this many points; 0 means any point.
    std::size_t image_size = 0;
    /// Use a random family; otherwise a standard family of arity m.
    bool random_lambda = true;
};

FiniteInstance random_instance(const RandomInstanceOptions& options, std::uint64_t seed);

}  // namespace mfp
