#pragma once

#include "mfp/contraction.hpp"
#include "mfp/distance.hpp"
#include "mfp/lambda.hpp"
#include "mfp/product.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mfp {

struct SolverConfig {
    double tol = defaults::kTolerance;
    std::size_t max_iter = 100'000;
    std::size_t window = defaults::kWindow;
    /// Iterates considered by check_boundedness; 0 means max_iter.
    std::size_t boundedness_horizon = 0;
    double equality_tol = defaults::kEqualityTolerance;
    /// Running boundedness sup beyond which the orbit is abandoned.
    double blowup_guard = 1e12;
    /// Keep every iterate; otherwise only the trailing window + 2.
    bool keep_trace = true;

    void validate() const {
        if (!(tol > 0.0)) throw ArgumentError("tol must be positive");
        if (max_iter == 0) throw ArgumentError("max_iter must be positive");
        if (window == 0) throw ArgumentError("window must be positive");
        if (window >= max_iter) throw ArgumentError("window must be smaller than max_iter");
        if (!(equality_tol > 0.0)) throw ArgumentError("equality_tol must be positive");
        if (!(blowup_guard > 0.0)) throw ArgumentError("blowup_guard must be positive");
    }

    std::size_t horizon() const noexcept { return boundedness_horizon == 0 ? max_iter : boundedness_horizon; }
};

enum class StopReason { Settled, MaxIter, GuardTripped };

std::string_view to_string(StopReason r) noexcept;

/// The orbit a(0), a(1) = lambda F(a(0)), ... with per-step distances in both
/// product forms and orientations, and the running boundedness sup.
template <class P>
struct PicardTrace {
    LambdaFamily family = identity_family(1);
    /// Index of iterates.front() in the orbit; nonzero only for truncated traces.
    std::size_t first_index = 0;
    std::vector<Tuple<P>> iterates;
    /// Entry n refers to the step a(n) -> a(n+1).
    std::vector<double> step_sup_fwd;
    std::vector<double> step_sup_bwd;
    std::vector<double> step_sum_fwd;
    std::vector<double> step_sum_bwd;
    /// Entry n is sup over k <= n of d^m(a, a(k)) + d^m(a(k), a); likewise for the sum form.
    std::vector<double> running_sup;
    std::vector<double> running_sum_sup;
    StopReason stop_reason = StopReason::MaxIter;

    std::size_t steps() const noexcept { return step_sup_fwd.size(); }
    const Tuple<P>& last() const { return iterates.back(); }
    /// The iterate a(n), if still stored.
    const Tuple<P>& at(std::size_t n) const { return iterates.at(n - first_index); }
    bool has(std::size_t n) const noexcept {
        return n >= first_index && n - first_index < iterates.size();
    }
};

namespace detail {

template <class P>
std::string describe_point(const P& p) {
    std::ostringstream os;
    if constexpr (std::is_same_v<P, RealVec>) {
        os << '[';
        for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
        os << ']';
    } else {
        os << p;
    }
    return os.str();
}

template <class P>
std::string describe_tuple(const Tuple<P>& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + describe_point(t[i]);
    return out + ")";
}

/// Shared engine for picard_orbit and solve. With `certify`, settling also
/// requires the symmetrized fixed-point residual of the current iterate to be
/// within tol.
template <class P>
PicardTrace<P> run_orbit(const LiftedOperator<P>& lifted, const Tuple<P>& a0,
                         const DistanceSpace<P>& space, const SolverConfig& config, bool certify) {
    config.validate();
    if (a0.size() != lifted.arity()) {
        throw ArgumentError("start point has " + std::to_string(a0.size()) + " coordinates, operator arity is " +
                            std::to_string(lifted.arity()));
    }
    for (const auto& p : a0) {
        if (!space.contains(p)) throw DomainError("start point outside the carrier");
    }

    PicardTrace<P> trace;
    trace.family = lifted.family();
    trace.iterates.push_back(a0);
    trace.running_sup.push_back(0.0);
    trace.running_sum_sup.push_back(0.0);

    const std::size_t keep = config.window + 2;
    Tuple<P> current = a0;
    std::size_t settled_run = 0;
    trace.stop_reason = StopReason::MaxIter;

    for (std::size_t n = 0; n < config.max_iter; ++n) {
        Tuple<P> next = lifted(current);
        for (const auto& p : next) {
            if (!point_is_finite(p)) {
                throw NumericError("non-finite iterate a(" + std::to_string(n + 1) + ") = " +
                                   describe_tuple(next) + " from a(" + std::to_string(n) +
                                   ") = " + describe_tuple(current));
            }
        }
        const double sup_f = sup_distance<P>(space, current, next);
        const double sup_b = sup_distance<P>(space, next, current);
        const double sum_f = sum_distance<P>(space, current, next);
        const double sum_b = sum_distance<P>(space, next, current);
        trace.step_sup_fwd.push_back(sup_f);
        trace.step_sup_bwd.push_back(sup_b);
        trace.step_sum_fwd.push_back(sum_f);
        trace.step_sum_bwd.push_back(sum_b);

        const double from_start = sup_distance<P>(space, a0, next) + sup_distance<P>(space, next, a0);
        const double from_start_sum = sum_distance<P>(space, a0, next) + sum_distance<P>(space, next, a0);
        trace.running_sup.push_back(std::max(trace.running_sup.back(), from_start));
        trace.running_sum_sup.push_back(std::max(trace.running_sum_sup.back(), from_start_sum));

        trace.iterates.push_back(next);
        if (!config.keep_trace && trace.iterates.size() > keep) {
            trace.iterates.erase(trace.iterates.begin());
            ++trace.first_index;
        }

        settled_run = (sup_f + sup_b <= config.tol) ? settled_run + 1 : 0;
        if (trace.running_sup.back() > config.blowup_guard) {
            trace.stop_reason = StopReason::GuardTripped;
            break;
        }
        if (settled_run >= config.window && (!certify || sum_f + sum_b <= config.tol)) {
            trace.stop_reason = StopReason::Settled;
            break;
        }
        current = std::move(next);
    }
    return trace;
}

}  // namespace detail

/// The Picard orbit of lambda F from a0. Stops early once `window`
/// consecutive symmetrized d^m steps are within tol, or when the running
/// boundedness sup passes the blow-up guard.
template <class P>
PicardTrace<P> picard_orbit(const MultiOperator<P>& op, const LambdaFamily& lambda, const Tuple<P>& a0,
                            const DistanceSpace<P>& space, const SolverConfig& config = {}) {
    return detail::run_orbit(LiftedOperator<P>(op, lambda), a0, space, config, false);
}

struct BoundednessReport {
    bool bounded = false;
    /// sup of d^m(a, a(n)) + d^m(a(n), a) over the horizon
    double sup_form = 0.0;
    /// the same with the sum distance
    double sum_form = 0.0;
    std::size_t horizon = 0;
};

template <class P>
BoundednessReport check_boundedness(const PicardTrace<P>& trace, const SolverConfig& config = {}) {
    if (trace.running_sup.empty()) throw ArgumentError("empty trace");
    BoundednessReport out;
    out.horizon = std::min(config.horizon(), trace.running_sup.size() - 1);
    out.sup_form = trace.running_sup[out.horizon];
    out.sum_form = trace.running_sum_sup[out.horizon];
    out.bounded = std::isfinite(out.sup_form) && out.sup_form <= config.blowup_guard;
    return out;
}

/// Geometric mean of successive d^m step ratios over the latest run of
/// `window` consecutive positive steps.
template <class P>
std::optional<double> rate_estimate(const PicardTrace<P>& trace, std::size_t window = defaults::kWindow) {
    if (window < 2) return std::nullopt;
    const auto& s = trace.step_sup_fwd;
    std::size_t run = 0;
    for (std::size_t n = s.size(); n-- > 0;) {
        run = s[n] > 0.0 ? run + 1 : 0;
        if (run == window) {
            const double first = s[n];
            const double last = s[n + window - 1];
            return std::pow(last / first, 1.0 / static_cast<double>(window - 1));
        }
    }
    return std::nullopt;
}

enum class SolveStatus { Converged, MaxIterExceeded, DivergenceSuspected };

std::string_view to_string(SolveStatus s) noexcept;

template <class P>
struct SolveReport {
    SolveStatus status = SolveStatus::MaxIterExceeded;
    std::optional<Tuple<P>> fixed_point;
    /// Fixed-point residual of the last certified (or last examined) iterate.
    double residual = 0.0;
    /// Converged: index of the first iterate of the settled window. Otherwise
    /// the number of steps taken.
    std::size_t iterations = 0;
    /// Applications of lambda F.
    std::size_t evaluations = 0;
    BoundednessReport boundedness;
    std::optional<double> rate;
    /// False only when the space declares both Complete and CDistance.
    bool numerical_only = true;
    PicardTrace<P> trace;
};

/// Picard iteration of lambda F with a fixed-point certificate. Converged
/// means `window` settled steps and a symmetrized residual within tol.
template <class P>
SolveReport<P> solve(const MultiOperator<P>& op, const LambdaFamily& lambda, const Tuple<P>& a0,
                     const DistanceSpace<P>& space, const SolverConfig& config = {}) {
    const LiftedOperator<P> lifted(op, lambda);
    SolveReport<P> report;
    report.trace = detail::run_orbit(lifted, a0, space, config, true);
    const auto& t = report.trace;
    report.iterations = t.steps();
    report.evaluations = t.steps();
    report.boundedness = check_boundedness(t, config);
    report.rate = rate_estimate(t, config.window);
    report.numerical_only = !(space.declared().contains(DistanceClass::Complete) &&
                              space.declared().contains(DistanceClass::CDistance));
    if (t.steps() > 0) report.residual = t.step_sum_fwd.back() + t.step_sum_bwd.back();

    switch (t.stop_reason) {
        case StopReason::Settled:
            report.status = SolveStatus::Converged;
            report.fixed_point = t.at(t.steps() - 1);
            report.iterations = t.steps() - config.window;
            break;
        case StopReason::GuardTripped:
            report.status = SolveStatus::DivergenceSuspected;
            break;
        case StopReason::MaxIter:
            report.status = report.boundedness.bounded ? SolveStatus::MaxIterExceeded
                                                       : SolveStatus::DivergenceSuspected;
            break;
    }
    return report;
}

enum class UniquenessVerdict { Unique, NotUnique, Inconclusive };

std::string_view to_string(UniquenessVerdict v) noexcept;

template <class P>
struct UniquenessReport {
    UniquenessVerdict verdict = UniquenessVerdict::Inconclusive;
    std::vector<SolveStatus> statuses;
    std::vector<std::optional<Tuple<P>>> endpoints;
    /// Symmetrized sum-distance below which two endpoints count as one point.
    double match_tol = 0.0;
};

/// Solves from every start (concurrently) and compares the endpoints.
/// Endpoints match within max(equality_tol, tol): each is only certified to
/// residual tol, so a finer comparison would split one fixed point into many.
template <class P>
UniquenessReport<P> uniqueness_probe(const MultiOperator<P>& op, const LambdaFamily& lambda,
                                     const DistanceSpace<P>& space, const std::vector<Tuple<P>>& starts,
                                     const SolverConfig& config = {}) {
    config.validate();
    UniquenessReport<P> out;
    out.match_tol = std::max(config.equality_tol, config.tol);
    std::vector<std::future<SolveReport<P>>> jobs;
    jobs.reserve(starts.size());
    SolverConfig lean = config;
    lean.keep_trace = false;
    for (const auto& s : starts) {
        jobs.push_back(std::async(std::launch::async, [&, s] { return solve(op, lambda, s, space, lean); }));
    }
    bool all_converged = true;
    for (auto& job : jobs) {
        auto r = job.get();
        out.statuses.push_back(r.status);
        out.endpoints.push_back(r.fixed_point);
        all_converged = all_converged && r.status == SolveStatus::Converged;
    }
    if (!all_converged) {
        out.verdict = UniquenessVerdict::Inconclusive;
        return out;
    }
    out.verdict = UniquenessVerdict::Unique;
    for (std::size_t k = 1; k < out.endpoints.size(); ++k) {
        const auto& a = *out.endpoints.front();
        const auto& b = *out.endpoints[k];
        if (sum_distance<P>(space, a, b) + sum_distance<P>(space, b, a) > out.match_tol) {
            out.verdict = UniquenessVerdict::NotUnique;
            break;
        }
    }
    return out;
}

/// Decidable surrogates for the contractive-operator theorem on N-symmetric
/// spaces: vanishing steps and a recurring iterate.
struct AccumulationHypotheses {
    bool declared_symmetric = false;
    bool declared_n_distance = false;
    /// Symmetrized d^m steps within tol over the last `window` steps.
    bool asymptotically_regular = false;
    /// Same with the sum distance.
    bool asymptotically_regular_sum = false;
    /// Some pair of stored iterates lies within equality_tol (symmetrized d^m).
    bool accumulation = false;
    std::optional<std::pair<std::size_t, std::size_t>> recurrence;
    bool family_balanced = false;
    /// Sup-form clause: declared N-symmetric, regular, and recurring.
    bool sup_clause_supported = false;
    /// Sum-form clause: additionally sum-regular over a balanced family.
    bool sum_clause_supported = false;
};

/// How many trailing iterates are searched for a recurrence.
inline constexpr std::size_t kRecurrenceHorizon = 256;

template <class P>
AccumulationHypotheses theorem_42_hypotheses(const PicardTrace<P>& trace, const DistanceSpace<P>& space,
                                             const SolverConfig& config = {}) {
    AccumulationHypotheses out;
    out.declared_symmetric = space.declared().contains(DistanceClass::Symmetric);
    out.declared_n_distance = space.declared().contains(DistanceClass::NDistance);
    out.family_balanced = family_conditions(trace.family).balanced;

    const std::size_t steps = trace.steps();
    if (steps >= config.window) {
        out.asymptotically_regular = true;
        out.asymptotically_regular_sum = true;
        for (std::size_t n = steps - config.window; n < steps; ++n) {
            out.asymptotically_regular = out.asymptotically_regular &&
                                         trace.step_sup_fwd[n] + trace.step_sup_bwd[n] <= config.tol;
            out.asymptotically_regular_sum = out.asymptotically_regular_sum &&
                                             trace.step_sum_fwd[n] + trace.step_sum_bwd[n] <= config.tol;
        }
    }

    const std::size_t stored = trace.iterates.size();
    const std::size_t begin = stored > kRecurrenceHorizon ? stored - kRecurrenceHorizon : 0;
    for (std::size_t q = stored; q-- > begin + 1 && !out.recurrence;) {
        for (std::size_t p = begin; p < q; ++p) {
            const auto& a = trace.iterates[p];
            const auto& b = trace.iterates[q];
            if (sup_distance<P>(space, a, b) + sup_distance<P>(space, b, a) <= config.equality_tol) {
                out.recurrence = std::pair{trace.first_index + p, trace.first_index + q};
                break;
            }
        }
    }
    out.accumulation = out.recurrence.has_value();

    const bool n_symmetric = out.declared_symmetric && out.declared_n_distance;
    out.sup_clause_supported = n_symmetric && out.asymptotically_regular && out.accumulation;
    out.sum_clause_supported =
        n_symmetric && out.asymptotically_regular_sum && out.accumulation && out.family_balanced;
    return out;
}

/// Hypotheses for the s-distance theorem: a complete symmetric s-distance and
/// a contraction constant below 1.
struct SDistanceHypotheses {
    bool declared_complete = false;
    bool declared_symmetric = false;
    bool declared_s_distance = false;
    std::optional<double> s_declared;
    /// Least s found by classifying a finite sample of the carrier, when supplied.
    std::optional<double> s_observed;
    ProductMode mode = ProductMode::Sup;
    double k = 0.0;
    bool family_balanced = false;
    bool supported = false;
};

template <class P>
SDistanceHypotheses s_distance_hypotheses(const DistanceSpace<P>& space, const LambdaFamily& lambda,
                                          const ContractionReport<P>& contraction,
                                          std::optional<double> s_observed = std::nullopt) {
    SDistanceHypotheses out;
    out.declared_complete = space.declared().contains(DistanceClass::Complete);
    out.declared_symmetric = space.declared().contains(DistanceClass::Symmetric);
    out.declared_s_distance = space.declared().contains(DistanceClass::SDistance);
    out.s_declared = space.s_constant();
    out.s_observed = s_observed;
    out.mode = contraction.mode;
    out.k = contraction.k_estimate;
    out.family_balanced = family_conditions(lambda).balanced;
    const bool s_consistent = !s_observed || !out.s_declared || *s_observed <= *out.s_declared * (1.0 + 1e-12);
    out.supported = out.declared_complete && out.declared_symmetric && out.declared_s_distance && s_consistent &&
                    out.k < 1.0 && (out.mode == ProductMode::Sup || out.family_balanced);
    return out;
}

}  // namespace mfp
