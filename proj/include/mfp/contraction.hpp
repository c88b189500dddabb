#pragma once

#include "mfp/distance.hpp"
#include "mfp/lambda.hpp"
#include "mfp/product.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace mfp {

/// Pairs below this combined coordinate distance are treated as degenerate.
inline constexpr double kRatioGuard = 1e-300;
/// Guard on exhaustive pair enumeration, n^(2m).
inline constexpr std::size_t kPairEnumerationLimit = 100'000'000;

/// A stream of tuple pairs for supremum estimation.
template <class P>
struct PairSource {
    using Visitor = std::function<void(const Tuple<P>&, const Tuple<P>&)>;

    /// True when the stream covers every pair of a finite domain.
    bool exhaustive = false;
    std::function<void(const Visitor&)> for_each;
};

/// Every ordered pair of m-tuples over {0..n-1}; lexicographic order.
PairSource<Index> exhaustive_pairs(std::size_t n, std::size_t m);

/// Fixed list of pairs, visited in order.
template <class P>
PairSource<P> listed_pairs(std::vector<std::pair<Tuple<P>, Tuple<P>>> pairs) {
    auto shared = std::make_shared<const std::vector<std::pair<Tuple<P>, Tuple<P>>>>(std::move(pairs));
    return {false, [shared](const typename PairSource<P>::Visitor& visit) {
                for (const auto& [x, y] : *shared) visit(x, y);
            }};
}

namespace detail {

/// Builds a point of type P from its box coordinates.
template <class P>
P make_point(std::span<const double> coords);

template <>
inline double make_point<double>(std::span<const double> coords) {
    return coords[0];
}

template <>
inline RealVec make_point<RealVec>(std::span<const double> coords) {
    return RealVec(coords.begin(), coords.end());
}

template <class P>
Tuple<P> make_tuple(std::span<const double> coords, std::size_t m, std::size_t dim) {
    Tuple<P> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(make_point<P>(coords.subspan(i * dim, dim)));
    return out;
}

/// k-th element (k >= 1) of the van der Corput sequence in base b.
inline double radical_inverse(std::uint64_t k, std::uint64_t b) {
    double inv = 1.0 / static_cast<double>(b);
    double f = inv;
    double out = 0.0;
    while (k > 0) {
        out += f * static_cast<double>(k % b);
        k /= b;
        f *= inv;
    }
    return out;
}

std::uint64_t nth_prime(std::size_t index);

}  // namespace detail

/// Box sampling of pairs in [lo, hi]^(m*dim): a full coarse grid of 9, 5, 3
/// or 2 levels (the finest fitting in a quarter of the budget), then Halton pairs, then uniform random pairs
/// from a seeded generator. Deterministic given the seed.
template <class P>
PairSource<P> box_pairs(std::size_t m, std::size_t dim, double lo, double hi, std::size_t count,
                        std::uint64_t seed) {
    if (m < 1 || dim < 1) throw ArgumentError("box sampling needs positive arity and dimension");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ArgumentError("sampling box must satisfy lo < hi");
    }
    if (count < 1) throw ArgumentError("sample count must be positive");
    if constexpr (std::is_same_v<P, double>) {
        if (dim != 1) throw ArgumentError("scalar points have dimension 1");
    }
    return {false, [=](const typename PairSource<P>::Visitor& visit) {
                const std::size_t coords = m * dim;
                std::vector<double> x(coords);
                std::vector<double> y(coords);
                std::size_t produced = 0;

                // Coarse grid: G levels per coordinate, all pairs of grid tuples.
                // G - 1 is a power of two, so grid points are exact on dyadic boxes.
                std::size_t levels = 0;
                for (std::size_t g : {9u, 5u, 3u, 2u}) {
                    double pairs = std::pow(static_cast<double>(g), 2.0 * static_cast<double>(coords));
                    if (pairs <= static_cast<double>(count) / 4.0) {
                        levels = g;
                        break;
                    }
                }
                if (levels >= 2) {
                    std::size_t tuples = 1;
                    for (std::size_t k = 0; k < coords; ++k) tuples *= levels;
                    const double step = (hi - lo) / static_cast<double>(levels - 1);
                    auto fill = [&](std::size_t code, std::vector<double>& out) {
                        for (std::size_t k = coords; k-- > 0;) {
                            out[k] = lo + step * static_cast<double>(code % levels);
                            code /= levels;
                        }
                    };
                    for (std::size_t a = 0; a < tuples; ++a) {
                        fill(a, x);
                        for (std::size_t b = 0; b < tuples; ++b) {
                            fill(b, y);
                            visit(detail::make_tuple<P>(x, m, dim), detail::make_tuple<P>(y, m, dim));
                            ++produced;
                        }
                    }
                }

                // Halton pairs: one 2*coords-dimensional point per pair.
                const std::size_t halton = (count - std::min(count, produced)) / 2;
                for (std::size_t k = 1; k <= halton; ++k) {
                    for (std::size_t c = 0; c < coords; ++c) {
                        x[c] = lo + (hi - lo) * detail::radical_inverse(k, detail::nth_prime(c));
                        y[c] = lo + (hi - lo) * detail::radical_inverse(k, detail::nth_prime(coords + c));
                    }
                    visit(detail::make_tuple<P>(x, m, dim), detail::make_tuple<P>(y, m, dim));
                    ++produced;
                }

                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> unif(lo, hi);
                while (produced < count) {
                    for (std::size_t c = 0; c < coords; ++c) x[c] = unif(rng);
                    for (std::size_t c = 0; c < coords; ++c) y[c] = unif(rng);
                    visit(detail::make_tuple<P>(x, m, dim), detail::make_tuple<P>(y, m, dim));
                    ++produced;
                }
            }};
}

/// All pairs of grid tuples with `levels` points per coordinate of [lo, hi].
template <class P>
PairSource<P> grid_pairs(std::size_t m, std::size_t dim, double lo, double hi, std::size_t levels) {
    if (levels < 2) throw ArgumentError("grid needs at least two levels");
    const std::size_t tuples = checked_power(levels, m * dim, kPairEnumerationLimit);
    if (tuples > kPairEnumerationLimit / tuples) throw ResourceError("grid pair count exceeds the enumeration limit");
    return {false, [=](const typename PairSource<P>::Visitor& visit) {
                const std::size_t coords = m * dim;
                const double step = (hi - lo) / static_cast<double>(levels - 1);
                std::vector<double> x(coords);
                std::vector<double> y(coords);
                auto fill = [&](std::size_t code, std::vector<double>& out) {
                    for (std::size_t k = coords; k-- > 0;) {
                        out[k] = lo + step * static_cast<double>(code % levels);
                        code /= levels;
                    }
                };
                for (std::size_t a = 0; a < tuples; ++a) {
                    fill(a, x);
                    for (std::size_t b = 0; b < tuples; ++b) {
                        fill(b, y);
                        visit(detail::make_tuple<P>(x, m, dim), detail::make_tuple<P>(y, m, dim));
                    }
                }
            }};
}

template <class P>
struct ContractionReport {
    /// Sup: (d(F x, F y)) / max_i d(x_i, y_i). Sum: m * d(F x, F y) / sum_i d(x_i, y_i).
    ProductMode mode = ProductMode::Sup;
    double k_estimate = 0.0;
    std::optional<std::pair<Tuple<P>, Tuple<P>>> witness;
    /// Pairs drawn from the source.
    std::size_t sample_size = 0;
    /// Pairs with combined distance below kRatioGuard and image distance below it too.
    std::size_t degenerate = 0;
    /// Pairs with combined distance below kRatioGuard but a separated image; each forces k = inf.
    std::size_t degenerate_separated = 0;
    bool exact = false;
};

/// The ratio a pair contributes to the estimate (inf on a separated degenerate pair,
/// nullopt on a fully degenerate one).
template <class P>
std::optional<double> contraction_ratio(const MultiOperator<P>& op, const DistanceSpace<P>& space,
                                        ProductMode mode, const Tuple<P>& x, const Tuple<P>& y) {
    const double den = product_distance<P>(space, mode, x, y);
    const double num = space.distance(op(x), op(y));
    const double scale = mode == ProductMode::Sup ? 1.0 : static_cast<double>(x.size());
    if (den < kRatioGuard) {
        if (num < kRatioGuard) return std::nullopt;
        return std::numeric_limits<double>::infinity();
    }
    return scale * num / den;
}

template <class P>
ContractionReport<P> estimate_k(const MultiOperator<P>& op, const DistanceSpace<P>& space,
                                const PairSource<P>& source, ProductMode mode) {
    ContractionReport<P> report;
    report.mode = mode;
    report.exact = source.exhaustive;
    bool any = false;
    source.for_each([&](const Tuple<P>& x, const Tuple<P>& y) {
        ++report.sample_size;
        const auto ratio = contraction_ratio(op, space, mode, x, y);
        if (!ratio) {
            ++report.degenerate;
            return;
        }
        if (std::isinf(*ratio)) ++report.degenerate_separated;
        if (!any || *ratio > report.k_estimate) {
            report.k_estimate = *ratio;
            report.witness = std::pair{x, y};
        }
        any = true;
    });
    if (!any) {
        throw DiagnosticError("all " + std::to_string(report.sample_size) +
                              " sampled pairs are degenerate; no ratio is defined");
    }
    return report;
}

/// Estimate of the smallest k with d(F x, F y) <= k * max_i d(x_i, y_i).
template <class P>
ContractionReport<P> estimate_k_sup(const MultiOperator<P>& op, const DistanceSpace<P>& space,
                                    const PairSource<P>& source) {
    return estimate_k(op, space, source, ProductMode::Sup);
}

/// Estimate of the smallest k with d(F x, F y) <= (k/m) * sum_i d(x_i, y_i).
template <class P>
ContractionReport<P> estimate_k_sum(const MultiOperator<P>& op, const DistanceSpace<P>& space,
                                    const PairSource<P>& source) {
    return estimate_k(op, space, source, ProductMode::Sum);
}

enum class LiftVerdict { Holds, Violated, HypothesisNotMet };

std::string_view to_string(LiftVerdict v) noexcept;

/// Which per-row bound feeds the sum-form lifting check.
enum class SumHypothesis {
    /// d(F(a o lambda_i), F(b o lambda_i)) <= (k/m) sum_j d(a_{lambda_i(j)}, b_{lambda_i(j)}),
    /// the bound a sum-form contraction of F supplies row by row.
    Rearranged,
    /// d(F(a o lambda_i), F(b o lambda_i)) <= (k/m) sum_j d(a_j, b_j).
    Unrearranged,
};

struct LiftCheck {
    LiftVerdict verdict = LiftVerdict::HypothesisNotMet;
    /// Lifted distance of the images and k times the distance of the inputs.
    double lhs = 0.0;
    double rhs = 0.0;
    /// First row whose hypothesis failed, 0-based.
    std::optional<std::size_t> failing_row;
    /// Sum form only: both hypothesis readings, and whether the family is balanced.
    bool rearranged_hypothesis = false;
    bool unrearranged_hypothesis = false;
    bool balanced = true;
    std::string warning;
};

namespace detail {

inline bool within(double lhs, double rhs, double slack) {
    return lhs <= rhs + slack * std::max(std::abs(lhs), std::abs(rhs));
}

}  // namespace detail

/// Checks d^m(lambda F a, lambda F b) <= k d^m(a, b) given the per-row bound
/// d(F(a o lambda_i), F(b o lambda_i)) <= k d^m(a, b).
template <class P>
LiftCheck verify_prop31(const MultiOperator<P>& op, const LambdaFamily& lambda,
                        const DistanceSpace<P>& space, const Tuple<P>& a, const Tuple<P>& b, double k,
                        double slack = 1e-12) {
    if (k < 0.0) throw ArgumentError("k must be nonnegative");
    const LiftedOperator<P> lifted(op, lambda);
    const double input = sup_distance<P>(space, a, b);
    LiftCheck out;
    const Tuple<P> u = lifted(a);
    const Tuple<P> v = lifted(b);
    for (std::size_t i = 0; i < lambda.arity(); ++i) {
        if (!detail::within(space.distance(u[i], v[i]), k * input, slack)) {
            out.failing_row = i;
            out.verdict = LiftVerdict::HypothesisNotMet;
            return out;
        }
    }
    out.lhs = sup_distance<P>(space, u, v);
    out.rhs = k * input;
    out.verdict = detail::within(out.lhs, out.rhs, slack) ? LiftVerdict::Holds : LiftVerdict::Violated;
    return out;
}

/// Checks sum-distance(lambda F a, lambda F b) <= k sum-distance(a, b) given
/// the selected per-row bound. When the family is not balanced a warning
/// notes that only the vacuous preimage-union condition is available.
template <class P>
LiftCheck verify_prop32(const MultiOperator<P>& op, const LambdaFamily& lambda,
                        const DistanceSpace<P>& space, const Tuple<P>& a, const Tuple<P>& b, double k,
                        SumHypothesis hypothesis = SumHypothesis::Rearranged, double slack = 1e-12) {
    if (k < 0.0) throw ArgumentError("k must be nonnegative");
    const LiftedOperator<P> lifted(op, lambda);
    const std::size_t m = lambda.arity();
    const double scale = k / static_cast<double>(m);
    const double input = sum_distance<P>(space, a, b);

    LiftCheck out;
    const auto conditions = family_conditions(lambda);
    out.balanced = conditions.balanced;
    if (!out.balanced) out.warning = "condition-gate: literal-only";

    const Tuple<P> u = lifted(a);
    const Tuple<P> v = lifted(b);
    out.rearranged_hypothesis = true;
    out.unrearranged_hypothesis = true;
    for (std::size_t i = 0; i < m; ++i) {
        const double row = space.distance(u[i], v[i]);
        double arranged = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t t = lambda.at(i, j);
            arranged += space.distance(a[t], b[t]);
        }
        const bool ok_re = detail::within(row, scale * arranged, slack);
        const bool ok_un = detail::within(row, scale * input, slack);
        if ((hypothesis == SumHypothesis::Rearranged ? !ok_re : !ok_un) && !out.failing_row) {
            out.failing_row = i;
        }
        out.rearranged_hypothesis = out.rearranged_hypothesis && ok_re;
        out.unrearranged_hypothesis = out.unrearranged_hypothesis && ok_un;
    }
    out.lhs = sum_distance<P>(space, u, v);
    out.rhs = k * input;
    if (out.failing_row) {
        out.verdict = LiftVerdict::HypothesisNotMet;
        return out;
    }
    out.verdict = detail::within(out.lhs, out.rhs, slack) ? LiftVerdict::Holds : LiftVerdict::Violated;
    return out;
}

}  // namespace mfp
