#pragma once

#include "mfp/distance.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace mfp {

/// A finite prefix of a sequence in a distance space, with its consecutive
/// step distances in both orientations.
///
/// Limit notions (convergence, Cauchy, asymptotic regularity) are judged from
/// the trailing `window + 1` points of the prefix at a tolerance.
template <class P>
class SequenceTrace {
public:
    SequenceTrace(DistanceSpace<P> space, std::vector<P> points)
        : space_(std::move(space)), points_(std::move(points)) {
        if (points_.size() > 1) {
            step_fwd_.reserve(points_.size() - 1);
            step_bwd_.reserve(points_.size() - 1);
        }
        for (std::size_t n = 0; n + 1 < points_.size(); ++n) {
            step_fwd_.push_back(space_.distance(points_[n], points_[n + 1]));
            step_bwd_.push_back(space_.distance(points_[n + 1], points_[n]));
        }
    }

    const DistanceSpace<P>& space() const noexcept { return space_; }
    const std::vector<P>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

    /// dist(x_n, x_{n+1})
    std::span<const double> step_fwd() const noexcept { return step_fwd_; }
    /// dist(x_{n+1}, x_n)
    std::span<const double> step_bwd() const noexcept { return step_bwd_; }

    double pairwise(std::size_t n, std::size_t m) const {
        return space_.distance(points_.at(n), points_.at(m));
    }

private:
    DistanceSpace<P> space_;
    std::vector<P> points_;
    std::vector<double> step_fwd_;
    std::vector<double> step_bwd_;
};

namespace detail {

inline void check_tail_request(std::size_t trace_size, double tol, std::size_t window) {
    if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
    if (window == 0) throw ArgumentError("window must be positive");
    if (trace_size < window + 1) {
        throw ArgumentError("window of " + std::to_string(window) + " needs at least " +
                            std::to_string(window + 1) + " points, trace has " +
                            std::to_string(trace_size));
    }
}

}  // namespace detail

/// Finite-horizon Cauchy test: every dist(x_n, x_m), both orders, among the
/// last window + 1 points is at most tol.
template <class P>
bool is_cauchy(const SequenceTrace<P>& trace, double tol, std::size_t window = defaults::kWindow) {
    detail::check_tail_request(trace.size(), tol, window);
    const std::size_t first = trace.size() - window - 1;
    for (std::size_t n = first; n < trace.size(); ++n) {
        for (std::size_t m = n + 1; m < trace.size(); ++m) {
            if (trace.pairwise(n, m) > tol || trace.pairwise(m, n) > tol) return false;
        }
    }
    return true;
}

/// Finite-horizon convergence to a candidate limit. The distance is measured
/// from the limit to the iterate, dist(limit, x_n), which matters when the
/// distance is asymmetric.
template <class P>
bool is_convergent_to(const SequenceTrace<P>& trace, const P& limit, double tol,
                      std::size_t window = defaults::kWindow) {
    detail::check_tail_request(trace.size(), tol, window);
    const auto& space = trace.space();
    for (std::size_t n = trace.size() - window - 1; n < trace.size(); ++n) {
        if (space.distance(limit, trace.points()[n]) > tol) return false;
    }
    return true;
}

/// step_fwd[n] + step_bwd[n] <= tol over the last `window` steps.
template <class P>
bool is_strongly_asymptotically_regular(const SequenceTrace<P>& trace, double tol,
                                        std::size_t window = defaults::kWindow) {
    detail::check_tail_request(trace.size(), tol, window);
    const auto fwd = trace.step_fwd();
    const auto bwd = trace.step_bwd();
    for (std::size_t n = fwd.size() - window; n < fwd.size(); ++n) {
        if (fwd[n] + bwd[n] > tol) return false;
    }
    return true;
}

}  // namespace mfp
