#include "mfp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mfp {

namespace {

// Folds one ratio into a running supremum using the c/0 = inf, 0/0 = skip rule.
void fold_ratio(double& sup, double num, double den) {
    if (den < kRatioGuard) {
        if (num >= kRatioGuard) sup = std::numeric_limits<double>::infinity();
        return;
    }
    sup = std::max(sup, num / den);
}

bool within_relative(double a, double b) {
    if (std::isinf(b)) return true;
    return a <= b * (1.0 + 1e-12);
}

}  // namespace

FiniteInstance::FiniteInstance(FiniteDistanceSpace space_in, std::vector<Index> table_in,
                               LambdaFamily lambda_in)
    : space(std::move(space_in)), table(std::move(table_in)), lambda(std::move(lambda_in)) {
    const std::size_t expected = checked_power(space.size(), lambda.arity(), kProductCarrierLimit);
    if (table.size() != expected) {
        throw ArgumentError("operator table has " + std::to_string(table.size()) + " entries, expected n^m = " +
                            std::to_string(expected));
    }
    for (Index v : table) {
        if (v >= space.size()) throw ArgumentError("operator table value outside the carrier");
    }
}

MultiOperator<Index> FiniteInstance::op() const {
    return table_operator(n(), m(), table, "table");
}

DistanceSpace<Index> FiniteInstance::distance_space() const {
    return space.as_space();
}

FixedPointSet enumerate_fixed_points(const FiniteInstance& inst) {
    const auto op = inst.op();
    const LiftedOperator<Index> lifted(op, inst.lambda);
    FixedPointSet out;
    for (Index c = 0; c < inst.tuple_count(); ++c) {
        const auto a = decode_tuple(c, inst.n(), inst.m());
        bool fixed = true;
        for (std::size_t i = 0; i < inst.m() && fixed; ++i) fixed = lifted.component(i, a) == a[i];
        if (fixed) out.push_back(a);
    }
    return out;
}

std::vector<Index> lifted_table(const FiniteInstance& inst) {
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    std::vector<std::size_t> weight(m);
    for (std::size_t k = 0; k < m; ++k) {
        weight[k] = 1;
        for (std::size_t r = k + 1; r < m; ++r) weight[k] *= n;
    }
    std::vector<Index> out(inst.tuple_count());
    for (Index c = 0; c < inst.tuple_count(); ++c) {
        Index image = 0;
        for (std::size_t i = 0; i < m; ++i) {
            Index arg = 0;
            for (std::size_t j = 0; j < m; ++j) {
                const Index digit = (c / weight[inst.lambda.at(i, j)]) % n;
                arg += digit * weight[j];
            }
            image += inst.table[arg] * weight[i];
        }
        out[c] = image;
    }
    return out;
}

FixedPointSet fixed_points_of_lifted_table(const FiniteInstance& inst) {
    const auto t = lifted_table(inst);
    FixedPointSet out;
    for (Index c = 0; c < t.size(); ++c) {
        if (t[c] == c) out.push_back(decode_tuple(c, inst.n(), inst.m()));
    }
    return out;
}

ExactConstants exact_contraction_constants(const FiniteInstance& inst) {
    const std::size_t total = inst.tuple_count();
    if (total > kPairEnumerationLimit / total) {
        throw ResourceError("n^(2m) pairs exceed the enumeration limit of " +
                            std::to_string(kPairEnumerationLimit));
    }
    const std::size_t m = inst.m();
    const auto& d = inst.space;
    const auto lifted = lifted_table(inst);

    std::vector<Tuple<Index>> tuples(total);
    for (Index c = 0; c < total; ++c) tuples[c] = decode_tuple(c, inst.n(), m);

    ExactConstants k;
    for (Index a = 0; a < total; ++a) {
        const auto& x = tuples[a];
        const auto& fx = tuples[lifted[a]];
        for (Index b = 0; b < total; ++b) {
            if (a == b) continue;
            const auto& y = tuples[b];
            const auto& fy = tuples[lifted[b]];
            double in_sup = 0.0;
            double in_sum = 0.0;
            double out_sup = 0.0;
            double out_sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double din = d(x[i], y[i]);
                const double dout = d(fx[i], fy[i]);
                in_sup = std::max(in_sup, din);
                in_sum += din;
                out_sup = std::max(out_sup, dout);
                out_sum += dout;
            }
            const double image = d(inst.table[a], inst.table[b]);
            fold_ratio(k.k_sup_F, image, in_sup);
            fold_ratio(k.k_sum_F, static_cast<double>(m) * image, in_sum);
            fold_ratio(k.k_lifted_sup, out_sup, in_sup);
            fold_ratio(k.k_lifted_sum, out_sum, in_sum);
        }
    }
    k.lifted_sup_within_F = within_relative(k.k_lifted_sup, k.k_sup_F);
    k.lifted_sum_within_F = within_relative(k.k_lifted_sum, k.k_sum_F);
    return k;
}

std::string_view to_string(ContractionRoute r) noexcept {
    switch (r) {
        case ContractionRoute::None: return "none";
        case ContractionRoute::Sup: return "sup";
        case ContractionRoute::Sum: return "sum";
    }
    return "unknown";
}

CrossValidationReport cross_validate(const FiniteInstance& inst, const SolverConfig& config) {
    CrossValidationReport report;
    report.fixed_points = enumerate_fixed_points(inst);
    report.enumeration_paths_agree = report.fixed_points == fixed_points_of_lifted_table(inst);
    report.constants = exact_contraction_constants(inst);
    report.balanced = family_conditions(inst.lambda).balanced;
    if (report.constants.k_lifted_sup < 1.0) {
        report.route = ContractionRoute::Sup;
    } else if (report.balanced && report.constants.k_lifted_sum < 1.0) {
        report.route = ContractionRoute::Sum;
    }
    report.asserted = report.route != ContractionRoute::None;

    SolverConfig lean = config;
    lean.keep_trace = false;
    const auto op = inst.op();
    const auto space = inst.distance_space();
    report.endpoints_sound = true;
    bool all_reach_unique = report.fixed_points.size() == 1;
    for (Index c = 0; c < inst.tuple_count(); ++c) {
        StartOutcome outcome;
        outcome.start = decode_tuple(c, inst.n(), inst.m());
        const auto r = solve(op, inst.lambda, outcome.start, space, lean);
        outcome.status = r.status;
        outcome.endpoint = r.fixed_point;
        outcome.iterations = r.iterations;
        if (r.fixed_point) {
            const bool known = std::binary_search(report.fixed_points.begin(), report.fixed_points.end(),
                                                  *r.fixed_point);
            report.endpoints_sound = report.endpoints_sound && known;
        }
        all_reach_unique = all_reach_unique && r.status == SolveStatus::Converged &&
                           r.fixed_point == report.fixed_points.front();
        report.starts.push_back(std::move(outcome));
    }
    report.agreement = report.asserted ? all_reach_unique : true;
    return report;
}

FiniteDistanceSpace random_finite_space(const RandomSpaceOptions& options, std::mt19937_64& rng) {
    const std::size_t n = options.n;
    if (n == 0) throw ArgumentError("random space needs at least one point");
    if (options.max_value < 1) throw ArgumentError("max_value must be at least 1");
    // Zeros only above the diagonal: every zero path then runs upward in index,
    // so the shortest-path closure below cannot zero both directions of a pair.
    std::uniform_int_distribution<int> upper(options.allow_zero ? 0 : 1, options.max_value);
    std::uniform_int_distribution<int> lower(1, options.max_value);
    std::vector<double> t(n * n, 0.0);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i < j) t[i * n + j] = upper(rng);
            if (i > j) t[i * n + j] = lower(rng);
        }
    }
    const bool symmetric = options.shape == RandomShape::Symmetric || options.shape == RandomShape::Metric;
    if (symmetric) {
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) t[j * n + i] = t[i * n + j];
        }
    }
    // Keep axiom (ii): a pair with both directions zero gets one positive direction
    // (both, if symmetric).
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (t[i * n + j] + t[j * n + i] == 0.0) {
                t[i * n + j] = 1.0;
                if (symmetric) t[j * n + i] = 1.0;
            }
        }
    }
    if (options.shape == RandomShape::Quasimetric || options.shape == RandomShape::Metric) {
        for (Index k = 0; k < n; ++k) {
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < n; ++j) {
                    t[i * n + j] = std::min(t[i * n + j], t[i * n + k] + t[k * n + j]);
                }
            }
        }
        for (Index i = 0; i < n; ++i) t[i * n + i] = 0.0;
    }
    return FiniteDistanceSpace(n, std::move(t));
}

LambdaFamily random_family(std::size_t m, std::mt19937_64& rng) {
    if (m == 0) throw ArgumentError("family needs at least one map");
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::vector<std::vector<std::size_t>> rows(m, std::vector<std::size_t>(m));
    for (auto& row : rows) {
        for (auto& v : row) v = pick(rng);
    }
    return LambdaFamily::from_zero_based(std::move(rows));
}

FiniteInstance random_instance(const RandomInstanceOptions& options, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto space = random_finite_space(options.space, rng);
    const std::size_t n = space.size();
    const std::size_t m = options.m;
    const std::size_t total = checked_power(n, m, kProductCarrierLimit);

    std::vector<Index> image(n);
    std::iota(image.begin(), image.end(), Index{0});
    std::shuffle(image.begin(), image.end(), rng);
    const std::size_t k = options.image_size == 0 ? n : std::min(options.image_size, n);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::vector<Index> table(total);
    for (auto& v : table) v = image[pick(rng)];

    LambdaFamily lambda = identity_family(m);
    if (options.random_lambda) {
        lambda = random_family(m, rng);
    } else if (m == 2) {
        lambda = coupled_family();
    } else if (m == 3) {
        lambda = tripled_family();
    } else if (m > 3) {
        lambda = cyclic_family(m);
    }
    return FiniteInstance(std::move(space), std::move(table), std::move(lambda));
}

}  // namespace mfp
