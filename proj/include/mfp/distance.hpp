#pragma once

#include "mfp/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mfp {

using Index = std::size_t;
using RealVec = std::vector<double>;

namespace defaults {
inline constexpr double kTolerance = 1e-10;
inline constexpr std::size_t kWindow = 8;
inline constexpr double kEqualityTolerance = 1e-12;
}  // namespace defaults

/// Members of the axiom hierarchy a distance may belong to.
///
/// Complete and CDistance cannot be decided for infinite carriers; for those
/// they are trusted declarations. Everything else is decidable on a finite
/// table (see classify_finite).
enum class DistanceClass : std::uint8_t {
    Symmetric,
    Quasimetric,
    Metric,
    NDistance,
    FDistance,
    SDistance,
    HDistance,
    CDistance,
    Complete,
};

inline constexpr std::array<DistanceClass, 9> kAllDistanceClasses = {
    DistanceClass::Symmetric, DistanceClass::Quasimetric, DistanceClass::Metric,
    DistanceClass::NDistance, DistanceClass::FDistance,   DistanceClass::SDistance,
    DistanceClass::HDistance, DistanceClass::CDistance,   DistanceClass::Complete,
};

std::string_view to_string(DistanceClass c) noexcept;
std::optional<DistanceClass> parse_distance_class(std::string_view name) noexcept;

/// Set of declared classes. Metric and (Symmetric and Quasimetric) are kept
/// in sync: inserting one side inserts the other.
class ClassSet {
public:
    ClassSet() = default;
    ClassSet(std::initializer_list<DistanceClass> classes) {
        for (auto c : classes) insert(c);
    }

    ClassSet& insert(DistanceClass c) noexcept {
        bits_ |= bit(c);
        if (c == DistanceClass::Metric) {
            bits_ |= bit(DistanceClass::Symmetric) | bit(DistanceClass::Quasimetric);
        }
        if (contains(DistanceClass::Symmetric) && contains(DistanceClass::Quasimetric)) {
            bits_ |= bit(DistanceClass::Metric);
        }
        return *this;
    }

    bool contains(DistanceClass c) const noexcept { return (bits_ & bit(c)) != 0; }
    bool empty() const noexcept { return bits_ == 0; }

    std::vector<DistanceClass> members() const {
        std::vector<DistanceClass> out;
        for (auto c : kAllDistanceClasses) {
            if (contains(c)) out.push_back(c);
        }
        return out;
    }

    friend bool operator==(const ClassSet&, const ClassSet&) = default;

private:
    static constexpr std::uint16_t bit(DistanceClass c) noexcept {
        return static_cast<std::uint16_t>(1u << static_cast<unsigned>(c));
    }

    std::uint16_t bits_ = 0;
};

/// A carrier together with a nonnegative distance.
///
/// The carrier is described implicitly by a membership predicate over the
/// point type `P`; the distance need not be symmetric or satisfy any triangle
/// inequality. Copies share the underlying callables, which are never mutated.
template <class P>
class DistanceSpace {
public:
    using Point = P;
    using DistanceFn = std::function<double(const P&, const P&)>;
    using MembershipFn = std::function<bool(const P&)>;

    DistanceSpace(std::string name, DistanceFn dist, ClassSet declared = {},
                  std::optional<double> s_constant = std::nullopt, MembershipFn contains = {})
        : name_(std::move(name)),
          dist_(std::move(dist)),
          contains_(std::move(contains)),
          declared_(declared),
          s_constant_(s_constant) {
        if (!dist_) throw ArgumentError("distance space '" + name_ + "' has no distance function");
        if (s_constant_ && !(*s_constant_ > 0.0 && std::isfinite(*s_constant_))) {
            throw ArgumentError("s-constant must be a positive finite real");
        }
        if (declared_.contains(DistanceClass::SDistance) && !s_constant_) {
            throw ArgumentError("space '" + name_ + "' declares SDistance without an s-constant");
        }
    }

    /// dist(x, y); throws DomainError for points outside the carrier.
    double distance(const P& x, const P& y) const {
        if (!contains(x) || !contains(y)) {
            throw DomainError("point outside the carrier of '" + name_ + "'");
        }
        const double d = dist_(x, y);
        if (std::isnan(d) || std::isinf(d)) {
            throw NumericError("distance in '" + name_ + "' evaluated to a non-finite value");
        }
        if (d < 0.0) throw DomainError("distance in '" + name_ + "' evaluated to a negative value");
        return d;
    }

    /// dist(x, y) + dist(y, x); zero exactly when x = y.
    double symmetrized(const P& x, const P& y) const { return distance(x, y) + distance(y, x); }

    bool contains(const P& x) const { return !contains_ || contains_(x); }

    const std::string& name() const noexcept { return name_; }
    const ClassSet& declared() const noexcept { return declared_; }
    std::optional<double> s_constant() const noexcept { return s_constant_; }

private:
    std::string name_;
    DistanceFn dist_;
    MembershipFn contains_;
    ClassSet declared_;
    std::optional<double> s_constant_;
};

template <class P>
double distance(const DistanceSpace<P>& space, const P& x, const P& y) {
    return space.distance(x, y);
}

/// Membership in the open ball B(center, r) = {y : dist(center, y) < r}.
template <class P>
bool ball_contains(const DistanceSpace<P>& space, const P& center, double r, const P& y) {
    if (!(r > 0.0)) throw ArgumentError("ball radius must be positive");
    return space.distance(center, y) < r;
}

/// Explicit n x n distance table over the carrier {0, ..., n-1}.
///
/// Construction checks shape and nonnegativity only. Axiom (ii) is reported by
/// axiom_ii_violation() so that classify_finite can describe the failure
/// instead of refusing the input.
class FiniteDistanceSpace {
public:
    FiniteDistanceSpace(std::size_t n, std::vector<double> row_major);

    static FiniteDistanceSpace from_rows(const std::vector<std::vector<double>>& rows);
    static FiniteDistanceSpace from_points(std::span<const double> points,
                                           const std::function<double(double, double)>& dist);

    std::size_t size() const noexcept { return n_; }

    /// Checked lookup.
    double distance(Index i, Index j) const {
        if (i >= n_ || j >= n_) throw DomainError("finite point index out of range");
        return (*table_)[i * n_ + j];
    }

    /// Unchecked lookup for inner loops.
    double operator()(Index i, Index j) const noexcept { return (*table_)[i * n_ + j]; }

    std::span<const double> values() const noexcept { return *table_; }
    std::vector<std::vector<double>> rows() const;

    /// First pair (i, j) with i <= j breaking dist(i,j) + dist(j,i) = 0 <=> i = j.
    std::optional<std::pair<Index, Index>> axiom_ii_violation() const;

    FiniteDistanceSpace scaled(double c) const;

    /// Space whose point perm[i] plays the role of point i here.
    FiniteDistanceSpace relabeled(std::span<const Index> perm) const;

    /// View as a generic space over indices. Complete is declared by default
    /// since every Cauchy sequence in a finite distance space is eventually
    /// constant.
    DistanceSpace<Index> as_space(ClassSet declared = {DistanceClass::Complete},
                                  std::optional<double> s_constant = std::nullopt) const;

    friend bool operator==(const FiniteDistanceSpace& a, const FiniteDistanceSpace& b) {
        return a.n_ == b.n_ && *a.table_ == *b.table_;
    }

private:
    std::size_t n_;
    std::shared_ptr<const std::vector<double>> table_;
};

// Builtin continuous spaces.

/// |x - y| on the real line.
DistanceSpace<double> abs_line();
/// |x - y|^2 on the real line; an s-distance with s = 2 that is not a quasimetric.
DistanceSpace<double> squared_line();

/// max_k |x_k - y_k| on R^dim.
DistanceSpace<RealVec> abs_space(std::size_t dim);
/// Euclidean distance on R^dim.
DistanceSpace<RealVec> euclidean_space(std::size_t dim);
/// Squared Euclidean distance on R^dim (s = 2).
DistanceSpace<RealVec> squared_space(std::size_t dim);

// Point finiteness, used to reject NaN/inf iterates.
inline bool point_is_finite(double x) noexcept { return std::isfinite(x); }
inline bool point_is_finite(Index) noexcept { return true; }
inline bool point_is_finite(const RealVec& x) noexcept {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace mfp
