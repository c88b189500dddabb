#pragma once

#include "mfp/classify.hpp"
#include "mfp/distance.hpp"

#include <algorithm>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace mfp {

/// A point of X^m.
template <class P>
using Tuple = std::vector<P>;

/// How coordinate distances are combined on X^m: the supremum d^m or the sum.
enum class ProductMode { Sup, Sum };

std::string_view to_string(ProductMode mode) noexcept;

/// max_i d(x_i, y_i)
template <class P>
double sup_distance(const DistanceSpace<P>& base, std::span<const P> x, std::span<const P> y) {
    double out = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) out = std::max(out, base.distance(x[i], y[i]));
    return out;
}

/// sum_i d(x_i, y_i)
template <class P>
double sum_distance(const DistanceSpace<P>& base, std::span<const P> x, std::span<const P> y) {
    double out = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) out += base.distance(x[i], y[i]);
    return out;
}

template <class P>
double product_distance(const DistanceSpace<P>& base, ProductMode mode, std::span<const P> x,
                        std::span<const P> y) {
    return mode == ProductMode::Sup ? sup_distance(base, x, y) : sum_distance(base, x, y);
}

/// (X^m, d^m) or (X^m, sum-distance) over a base space.
///
/// Every declared class of the base, including the s-constant, carries over
/// to the product in both modes.
template <class P>
class ProductDistanceSpace {
public:
    ProductDistanceSpace(DistanceSpace<P> base, std::size_t arity, ProductMode mode)
        : base_(std::move(base)), arity_(arity), mode_(mode), space_(make_space(base_, arity, mode)) {}

    const DistanceSpace<P>& base() const noexcept { return base_; }
    std::size_t arity() const noexcept { return arity_; }
    ProductMode mode() const noexcept { return mode_; }

    double distance(const Tuple<P>& x, const Tuple<P>& y) const { return space_.distance(x, y); }

    /// The product as a distance space in its own right.
    const DistanceSpace<Tuple<P>>& space() const noexcept { return space_; }

private:
    static DistanceSpace<Tuple<P>> make_space(const DistanceSpace<P>& base, std::size_t arity,
                                              ProductMode mode) {
        if (arity < 1) throw ArgumentError("product arity must be at least 1");
        std::string name = base.name() + (mode == ProductMode::Sup ? "^sup" : "^sum") +
                           std::to_string(arity);
        return DistanceSpace<Tuple<P>>(
            std::move(name),
            [base, mode](const Tuple<P>& x, const Tuple<P>& y) {
                return product_distance<P>(base, mode, x, y);
            },
            base.declared(), base.s_constant(),
            [base, arity](const Tuple<P>& x) {
                return x.size() == arity &&
                       std::all_of(x.begin(), x.end(), [&](const P& p) { return base.contains(p); });
            });
    }

    DistanceSpace<P> base_;
    std::size_t arity_;
    ProductMode mode_;
    DistanceSpace<Tuple<P>> space_;
};

template <class P>
ProductDistanceSpace<P> product(const DistanceSpace<P>& base, std::size_t m, ProductMode mode) {
    return ProductDistanceSpace<P>(base, m, mode);
}

/// Checks d^m <= sum-distance <= m * d^m on every sampled pair, the explicit
/// modulus behind the uniform equivalence of the two product distances.
template <class P>
bool check_uniform_equivalence(const DistanceSpace<P>& base, std::size_t m,
                               std::span<const std::pair<Tuple<P>, Tuple<P>>> pairs) {
    if (m < 1) throw ArgumentError("product arity must be at least 1");
    const auto sup = product(base, m, ProductMode::Sup);
    const auto sum = product(base, m, ProductMode::Sum);
    for (const auto& [x, y] : pairs) {
        const double a = sup.distance(x, y);
        const double b = sum.distance(x, y);
        if (a > b || b > static_cast<double>(m) * a) return false;
    }
    return true;
}

// Finite products. Tuples are numbered lexicographically:
// (i_1, ..., i_m) <-> sum_k i_k * n^(m-k).

inline constexpr std::size_t kProductCarrierLimit = 1'000'000;
/// Classification is cubic in the carrier size; larger products are refused.
inline constexpr std::size_t kClassifyCarrierLimit = 512;
/// The materialized N x N table must fit in memory as well.
inline constexpr std::size_t kMaterializeCarrierLimit = 2048;

/// n^m, throwing ResourceError when it exceeds `limit`.
std::size_t checked_power(std::size_t n, std::size_t m, std::size_t limit);

Index encode_tuple(std::span<const Index> tuple, std::size_t n);
Tuple<Index> decode_tuple(Index code, std::size_t n, std::size_t m);

FiniteDistanceSpace materialize_product(const FiniteDistanceSpace& base, std::size_t m,
                                       ProductMode mode);

struct ClassComparison {
    DistanceClass cls;
    bool base = false;
    bool sup = false;
    bool sum = false;
    /// base passes => both products pass
    bool preserved = false;

    friend bool operator==(const ClassComparison&, const ClassComparison&) = default;
};

struct ClosureReport {
    std::size_t base_n = 0;
    std::size_t m = 0;
    std::size_t product_n = 0;
    AxiomReport base;
    AxiomReport sup;
    AxiomReport sum;
    std::vector<ClassComparison> comparisons;
    /// Product minimal_s exceeds the base value by at most a relative 1e-12 in both modes.
    bool s_bound_holds = false;
    bool all_preserved = false;

    friend bool operator==(const ClosureReport&, const ClosureReport&) = default;
};

/// Materializes both products, classifies them, and compares each class
/// against the base.
ClosureReport check_closure(const FiniteDistanceSpace& base, std::size_t m);

}  // namespace mfp
