#pragma once

#include "mfp/distance.hpp"
#include "mfp/product.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mfp {

/// m index maps lambda_i : {1..m} -> {1..m}, one table row per output
/// coordinate. Stored 0-based; `one_based()` gives the presentation form.
class LambdaFamily {
public:
    /// From a 1-based table; throws ArgumentError unless it is m x m with
    /// entries in {1..m}.
    static LambdaFamily from_one_based(const std::vector<std::vector<std::size_t>>& table);
    static LambdaFamily from_zero_based(std::vector<std::vector<std::size_t>> table);

    std::size_t arity() const noexcept { return rows_.size(); }

    /// lambda_i(j), both 0-based.
    std::size_t at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
    std::span<const std::size_t> row(std::size_t i) const { return rows_.at(i); }

    std::vector<std::vector<std::size_t>> one_based() const;
    const std::vector<std::vector<std::size_t>>& zero_based() const noexcept { return rows_; }

    friend bool operator==(const LambdaFamily&, const LambdaFamily&) = default;

private:
    explicit LambdaFamily(std::vector<std::vector<std::size_t>> rows) : rows_(std::move(rows)) {}

    std::vector<std::vector<std::size_t>> rows_;
};

/// Rows (1,2),(2,1).
LambdaFamily coupled_family();
/// Rows (1,2,3),(2,1,2),(3,2,1).
LambdaFamily tripled_family();
/// Row 1 is the identity; row i is the cycle starting at i.
LambdaFamily cyclic_family(std::size_t n);
/// Every row the identity.
LambdaFamily identity_family(std::size_t m);

struct FamilyConditionReport {
    std::size_t m = 0;
    std::vector<bool> surjective;
    /// index_counts[t] = #{(i, j) : lambda_i(j) = t}, t 0-based.
    std::vector<std::size_t> index_counts;
    /// Every index appears at most m times across the table.
    bool balanced = false;
    /// |union_j lambda_i^{-1}(j)| = m for every i. Holds for every family, since
    /// the preimages of all targets cover the domain.
    bool literal_union_condition = true;

    bool all_surjective() const {
        for (bool s : surjective) {
            if (!s) return false;
        }
        return true;
    }

    friend bool operator==(const FamilyConditionReport&, const FamilyConditionReport&) = default;
};

FamilyConditionReport family_conditions(const LambdaFamily& lambda);

/// An operator F : X^m -> X.
template <class P>
struct MultiOperator {
    using Fn = std::function<P(std::span<const P>)>;

    std::size_t arity = 0;
    Fn eval;
    std::string description;

    P operator()(std::span<const P> x) const {
        if (x.size() != arity) throw ArgumentError("operator '" + description + "' expects " +
                                                   std::to_string(arity) + " arguments");
        return eval(x);
    }
};

/// The self-map of X^m whose i-th output is F applied to the
/// lambda_i-rearranged input.
template <class P>
class LiftedOperator {
public:
    LiftedOperator(MultiOperator<P> op, LambdaFamily lambda)
        : op_(std::move(op)), lambda_(std::move(lambda)) {
        if (op_.arity != lambda_.arity()) {
            throw ArgumentError("operator arity " + std::to_string(op_.arity) +
                                " does not match family arity " + std::to_string(lambda_.arity()));
        }
        if (!op_.eval) throw ArgumentError("operator has no evaluation function");
    }

    std::size_t arity() const noexcept { return lambda_.arity(); }
    const MultiOperator<P>& op() const noexcept { return op_; }
    const LambdaFamily& family() const noexcept { return lambda_; }

    /// F(x_{lambda_i(1)}, ..., x_{lambda_i(m)})
    P component(std::size_t i, std::span<const P> x) const {
        const auto row = lambda_.row(i);
        Tuple<P> arranged;
        arranged.reserve(row.size());
        for (std::size_t j : row) arranged.push_back(x[j]);
        return op_.eval(arranged);
    }

    Tuple<P> operator()(std::span<const P> x) const {
        if (x.size() != arity()) throw ArgumentError("lifted operator expects an m-tuple");
        Tuple<P> out;
        out.reserve(arity());
        for (std::size_t i = 0; i < arity(); ++i) out.push_back(component(i, x));
        return out;
    }

private:
    MultiOperator<P> op_;
    LambdaFamily lambda_;
};

template <class P>
LiftedOperator<P> lift(MultiOperator<P> op, LambdaFamily lambda) {
    return LiftedOperator<P>(std::move(op), std::move(lambda));
}

struct FixedPointCheck {
    bool is_fixed = false;
    /// sum_i d(a_i, b_i) + d(b_i, a_i) with b = lambda F(a)
    double residual = 0.0;
};

/// Residual is symmetrized since only d(x,y) + d(y,x) = 0 identifies points.
template <class P>
double fixed_point_residual(const DistanceSpace<P>& space, std::span<const P> a,
                            std::span<const P> image) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r += space.symmetrized(a[i], image[i]);
    return r;
}

template <class P>
FixedPointCheck is_multiple_fixed_point(const MultiOperator<P>& op, const LambdaFamily& lambda,
                                        std::span<const P> a, const DistanceSpace<P>& space,
                                        double tol) {
    if (tol < 0.0) throw ArgumentError("tolerance must be nonnegative");
    const LiftedOperator<P> lifted(op, lambda);
    const Tuple<P> image = lifted(a);
    const double r = fixed_point_residual<P>(space, a, image);
    return {r <= tol, r};
}

/// F given by its value on every m-tuple of {0..n-1}, lexicographically indexed.
MultiOperator<Index> table_operator(std::size_t n, std::size_t m, std::vector<Index> values,
                                    std::string description = "table");

}  // namespace mfp
