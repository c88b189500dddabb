#pragma once

#include "mfp/distance.hpp"
#include "mfp/lambda.hpp"
#include "mfp/oracle.hpp"
#include "mfp/picard.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace mfp {

inline constexpr int kSchemaVersion = 1;

/// A problem over R^dim with a builtin space and a parametric operator.
struct ContinuousProblem {
    std::string name;
    std::string description;
    std::size_t dim = 1;
    DistanceSpace<RealVec> space;
    MultiOperator<RealVec> op;
    LambdaFamily lambda;
    Tuple<RealVec> start;
    SolverConfig solver;
    double box_lo = -10.0;
    double box_hi = 10.0;
    std::uint64_t seed = 0;
    std::size_t samples = 10'000;
    /// Known fixed points; empty when none are recorded.
    std::vector<Tuple<RealVec>> expected;
    /// Whether `expected` is the complete fixed point set.
    bool expected_complete = false;
    nlohmann::json source;
};

/// A problem over a finite table.
struct FiniteProblem {
    std::string name;
    std::string description;
    FiniteInstance instance;
    Tuple<Index> start;
    SolverConfig solver;
    std::uint64_t seed = 0;
    std::vector<Tuple<Index>> expected;
    bool expected_complete = false;
    nlohmann::json source;
};

using Problem = std::variant<ContinuousProblem, FiniteProblem>;

const std::string& problem_name(const Problem& p);

/// Problem documents for the builtin catalog, in the problem file format.
const std::vector<nlohmann::json>& builtin_problem_documents();

/// The builtin catalog:
///   P1 coupled affine F(x,y) = x/4 + y/4 + 1 on (R, |.|), fixed point (2,2)
///   P2 tripled family, F(x,y,z) = (x+z)/6 + 1, fixed point (3/2, 3/2, 3/2)
///   P3 cyclic N = 4, F = (x1+x2+x3+x4)/8 + 1, fixed point (2,2,2,2)
///   P4 P1's operator on the squared-difference s-distance (s = 2), k = 1/4
///   P5 F = min on {0,1,2} with the coupled family; every diagonal point is fixed
///   P6 F(x) = x + 1 mod 3, m = 1; no fixed point
///   P7 coupled F(x,y) = (sin x + sin y)/4; fixed point (0,0)
std::vector<Problem> builtin_problems();

std::optional<Problem> find_builtin(const std::string& name);

/// Parses a problem document; throws ParseError with a JSON pointer on malformed input.
Problem parse_problem(const nlohmann::json& doc);

}  // namespace mfp
