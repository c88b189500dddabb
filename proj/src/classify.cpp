#include "mfp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace mfp {

namespace {

bool exceeds(double lhs, double rhs, double rel_slack) {
    return lhs > rhs + rel_slack * std::max(std::abs(lhs), std::abs(rhs));
}

void set_pass(ClassVerdict& v, std::string note = {}) {
    v.evaluated = true;
    v.passed = true;
    v.counterexample.clear();
    v.note = std::move(note);
}

void set_fail(ClassVerdict& v, std::vector<Index> witness, std::string note = {}) {
    v.evaluated = true;
    v.passed = false;
    v.counterexample = std::move(witness);
    v.note = std::move(note);
}

void check_symmetric(const FiniteDistanceSpace& d, double slack, ClassVerdict& v) {
    const std::size_t n = d.size();
    for (Index x = 0; x < n; ++x) {
        for (Index y = x + 1; y < n; ++y) {
            if (exceeds(d(x, y), d(y, x), slack) || exceeds(d(y, x), d(x, y), slack)) {
                set_fail(v, {x, y});
                return;
            }
        }
    }
    set_pass(v);
}

void check_quasimetric(const FiniteDistanceSpace& d, double slack, ClassVerdict& v) {
    const std::size_t n = d.size();
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            for (Index z = 0; z < n; ++z) {
                if (exceeds(d(x, y), d(x, z) + d(z, y), slack)) {
                    set_fail(v, {x, y, z});
                    return;
                }
            }
        }
    }
    set_pass(v);
}

// Returns the least s, recording a witness when it is infinite.
double minimal_s_constant(const FiniteDistanceSpace& d, ClassVerdict& v) {
    const std::size_t n = d.size();
    if (n == 1) {
        set_pass(v, "single point; s = 1 by convention");
        return 1.0;
    }
    double best = 0.0;
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            const double num = d(x, y);
            if (num == 0.0) continue;
            for (Index z = 0; z < n; ++z) {
                const double den = d(x, z) + d(z, y);
                if (den > 0.0) {
                    best = std::max(best, num / den);
                } else {
                    set_fail(v, {x, y, z}, "zero two-hop distance under a positive direct one");
                    return std::numeric_limits<double>::infinity();
                }
            }
        }
    }
    set_pass(v);
    return best;
}

// Decides N and F together. For a point x and a radius delta, the reach
// f_x(delta) = max{ d(x,z) : exists y, d(x,y) <= delta, d(y,z) <= delta } is
// nondecreasing in delta, so the largest admissible delta on the grid is the
// natural witness for each epsilon.
void check_chaining(const FiniteDistanceSpace& d, const ClassifyOptions& options,
                    AxiomReport& report) {
    auto& nv = report.verdict(DistanceClass::NDistance);
    auto& fv = report.verdict(DistanceClass::FDistance);
    const std::size_t n = d.size();

    std::set<double> positive;
    for (double v : d.values()) {
        if (v > 0.0) positive.insert(v);
    }
    if (positive.empty()) {
        set_pass(nv, "no positive distances");
        set_pass(fv, "no positive distances");
        return;
    }
    std::vector<double> grid;
    grid.push_back(*positive.begin() / 2.0);
    grid.insert(grid.end(), positive.begin(), positive.end());

    // reach[z] = min over y of max(d(x,y), d(y,z)): the least delta making z two-hop reachable.
    std::vector<double> reach(n);
    std::vector<Index> order(n);
    // uniform[e] = min over x of the admissible delta for grid[e]; 0 marks "none".
    std::vector<double> uniform(grid.size(), std::numeric_limits<double>::infinity());
    std::optional<std::vector<Index>> failure;

    for (Index x = 0; x < n; ++x) {
        std::vector<Index> via(n, 0);
        for (Index z = 0; z < n; ++z) {
            double best = std::numeric_limits<double>::infinity();
            for (Index y = 0; y < n; ++y) {
                const double r = std::max(d(x, y), d(y, z));
                if (r < best) {
                    best = r;
                    via[z] = y;
                }
            }
            reach[z] = best;
        }
        std::iota(order.begin(), order.end(), Index{0});
        std::sort(order.begin(), order.end(), [&](Index a, Index b) { return reach[a] < reach[b]; });

        // f[g] = f_x(grid[g]), by a sweep over z in order of reach.
        std::vector<double> f(grid.size(), 0.0);
        std::size_t k = 0;
        double running = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            while (k < n && reach[order[k]] <= grid[g]) {
                running = std::max(running, d(x, order[k]));
                ++k;
            }
            f[g] = running;
        }

        for (std::size_t e = 0; e < grid.size(); ++e) {
            const double eps = grid[e];
            std::optional<double> delta;
            for (std::size_t g = grid.size(); g-- > 0;) {
                if (f[g] <= eps) {
                    delta = grid[g];
                    break;
                }
            }
            if (!delta) {
                uniform[e] = 0.0;
                if (!failure) {
                    // At the smallest radius only zero distances chain; find the culprit z.
                    for (Index z = 0; z < n; ++z) {
                        if (reach[z] <= grid[0] && d(x, z) > eps) {
                            failure = std::vector<Index>{x, via[z], z};
                            break;
                        }
                    }
                }
                continue;
            }
            if (options.record_delta_witness) report.n_delta_witness.push_back({x, eps, *delta});
            uniform[e] = std::min(uniform[e], *delta);
        }
    }

    if (failure) {
        report.n_delta_witness.clear();
        set_fail(nv, *failure, "zero distances do not chain");
        set_fail(fv, *failure, "zero distances do not chain");
        return;
    }
    set_pass(nv);
    set_pass(fv);
    if (options.record_delta_witness) {
        for (std::size_t e = 0; e < grid.size(); ++e) {
            report.f_delta_witness.push_back({grid[e], uniform[e]});
        }
    }
}

void check_h(const FiniteDistanceSpace& d, ClassVerdict& v) {
    const std::size_t n = d.size();
    for (Index x = 0; x < n; ++x) {
        for (Index y = x + 1; y < n; ++y) {
            for (Index z = 0; z < n; ++z) {
                if (std::max(d(x, z), d(y, z)) == 0.0) {
                    set_fail(v, {x, y, z});
                    return;
                }
            }
        }
    }
    set_pass(v);
}

// A Cauchy sequence in a finite distance space is eventually constant at some
// p, and converges to x iff d(x,p) = 0; limits are unique iff every
// off-diagonal entry is positive.
void check_c(const FiniteDistanceSpace& d, ClassVerdict& v) {
    const std::size_t n = d.size();
    for (Index x = 0; x < n; ++x) {
        for (Index p = 0; p < n; ++p) {
            if (x != p && d(x, p) == 0.0) {
                set_fail(v, {x, p});
                return;
            }
        }
    }
    set_pass(v, "coincides with HDistance on finite carriers");
}

}  // namespace

AxiomReport classify_finite(const FiniteDistanceSpace& space, const ClassifyOptions& options) {
    AxiomReport report;
    report.n = space.size();
    if (auto bad = space.axiom_ii_violation()) {
        report.fundamental_ok = false;
        report.fundamental_witness = {bad->first, bad->second};
        return report;
    }
    report.fundamental_ok = true;

    auto& sym = report.verdict(DistanceClass::Symmetric);
    auto& quasi = report.verdict(DistanceClass::Quasimetric);
    check_symmetric(space, options.rel_slack, sym);
    check_quasimetric(space, options.rel_slack, quasi);

    auto& metric = report.verdict(DistanceClass::Metric);
    if (!sym.passed) {
        set_fail(metric, sym.counterexample, "not symmetric");
    } else if (!quasi.passed) {
        set_fail(metric, quasi.counterexample, "triangle inequality fails");
    } else {
        set_pass(metric);
    }

    report.minimal_s = minimal_s_constant(space, report.verdict(DistanceClass::SDistance));
    check_chaining(space, options, report);
    check_h(space, report.verdict(DistanceClass::HDistance));
    check_c(space, report.verdict(DistanceClass::CDistance));
    set_pass(report.verdict(DistanceClass::Complete), "finite carriers are complete");
    return report;
}

bool counterexample_violates(const FiniteDistanceSpace& d, DistanceClass c,
                             const std::vector<Index>& w, double rel_slack) {
    const auto in_range = [&](std::size_t arity) {
        if (w.size() != arity) return false;
        return std::all_of(w.begin(), w.end(), [&](Index i) { return i < d.size(); });
    };
    switch (c) {
        case DistanceClass::Symmetric:
            return in_range(2) && (exceeds(d.distance(w[0], w[1]), d.distance(w[1], w[0]), rel_slack) ||
                                   exceeds(d.distance(w[1], w[0]), d.distance(w[0], w[1]), rel_slack));
        case DistanceClass::Quasimetric:
            return in_range(3) && exceeds(d.distance(w[0], w[1]),
                                          d.distance(w[0], w[2]) + d.distance(w[2], w[1]), rel_slack);
        case DistanceClass::Metric:
            return counterexample_violates(d, DistanceClass::Symmetric, w, rel_slack) ||
                   counterexample_violates(d, DistanceClass::Quasimetric, w, rel_slack);
        case DistanceClass::SDistance:
            return in_range(3) && d.distance(w[0], w[1]) > 0.0 &&
                   d.distance(w[0], w[2]) + d.distance(w[2], w[1]) == 0.0;
        case DistanceClass::NDistance:
        case DistanceClass::FDistance:
            return in_range(3) && d.distance(w[0], w[1]) == 0.0 && d.distance(w[1], w[2]) == 0.0 &&
                   d.distance(w[0], w[2]) > 0.0;
        case DistanceClass::HDistance:
            return in_range(3) && w[0] != w[1] && d.distance(w[0], w[2]) == 0.0 &&
                   d.distance(w[1], w[2]) == 0.0;
        case DistanceClass::CDistance:
            return in_range(2) && w[0] != w[1] && d.distance(w[0], w[1]) == 0.0;
        case DistanceClass::Complete:
            return false;
    }
    return false;
}

DistanceSpace<Index> classified_space(const FiniteDistanceSpace& space, const AxiomReport& report) {
    if (!report.fundamental_ok) {
        throw ArgumentError("table violates d(x,y) + d(y,x) = 0 <=> x = y");
    }
    ClassSet declared;
    for (auto c : kAllDistanceClasses) {
        if (report.passes(c)) declared.insert(c);
    }
    std::optional<double> s;
    if (report.minimal_s && std::isfinite(*report.minimal_s) && *report.minimal_s > 0.0) {
        s = report.minimal_s;
    }
    if (!s) {
        // SDistance cannot be declared without a constant.
        ClassSet trimmed;
        for (auto c : declared.members()) {
            if (c != DistanceClass::SDistance) trimmed.insert(c);
        }
        declared = trimmed;
    }
    return space.as_space(declared, s);
}

}  // namespace mfp
