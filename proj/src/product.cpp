#include "mfp/product.hpp"

#include <cmath>

namespace mfp {

std::string_view to_string(ProductMode mode) noexcept {
    return mode == ProductMode::Sup ? "sup" : "sum";
}

std::size_t checked_power(std::size_t n, std::size_t m, std::size_t limit) {
    std::size_t out = 1;
    for (std::size_t k = 0; k < m; ++k) {
        if (n != 0 && out > limit / n) {
            throw ResourceError(std::to_string(n) + "^" + std::to_string(m) + " exceeds the limit of " +
                                std::to_string(limit));
        }
        out *= n;
    }
    if (out > limit) {
        throw ResourceError(std::to_string(n) + "^" + std::to_string(m) + " exceeds the limit of " +
                            std::to_string(limit));
    }
    return out;
}

Index encode_tuple(std::span<const Index> tuple, std::size_t n) {
    Index code = 0;
    for (Index i : tuple) {
        if (i >= n) throw DomainError("tuple coordinate out of range");
        code = code * n + i;
    }
    return code;
}

Tuple<Index> decode_tuple(Index code, std::size_t n, std::size_t m) {
    Tuple<Index> out(m);
    for (std::size_t k = m; k-- > 0;) {
        out[k] = code % n;
        code /= n;
    }
    if (code != 0) throw DomainError("tuple code out of range");
    return out;
}

FiniteDistanceSpace materialize_product(const FiniteDistanceSpace& base, std::size_t m,
                                       ProductMode mode) {
    if (m < 1) throw ArgumentError("product arity must be at least 1");
    const std::size_t n = base.size();
    const std::size_t total = checked_power(n, m, kProductCarrierLimit);
    if (total > kMaterializeCarrierLimit) {
        throw ResourceError("product table of " + std::to_string(total) + " points is too large to materialize");
    }
    std::vector<Tuple<Index>> tuples(total);
    for (Index c = 0; c < total; ++c) tuples[c] = decode_tuple(c, n, m);

    std::vector<double> flat(total * total);
    for (Index a = 0; a < total; ++a) {
        for (Index b = 0; b < total; ++b) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double v = base(tuples[a][k], tuples[b][k]);
                acc = mode == ProductMode::Sup ? std::max(acc, v) : acc + v;
            }
            flat[a * total + b] = acc;
        }
    }
    return FiniteDistanceSpace(total, std::move(flat));
}

ClosureReport check_closure(const FiniteDistanceSpace& base, std::size_t m) {
    if (m < 1) throw ArgumentError("product arity must be at least 1");
    ClosureReport report;
    report.base_n = base.size();
    report.m = m;
    report.product_n = checked_power(base.size(), m, kProductCarrierLimit);
    if (report.product_n > kClassifyCarrierLimit) {
        throw ResourceError("product carrier of " + std::to_string(report.product_n) +
                            " points exceeds the classification limit of " +
                            std::to_string(kClassifyCarrierLimit));
    }

    ClassifyOptions options;
    options.record_delta_witness = false;
    report.base = classify_finite(base, options);
    report.sup = classify_finite(materialize_product(base, m, ProductMode::Sup), options);
    report.sum = classify_finite(materialize_product(base, m, ProductMode::Sum), options);

    report.all_preserved = true;
    for (auto c : kAllDistanceClasses) {
        ClassComparison cmp{c, report.base.passes(c), report.sup.passes(c), report.sum.passes(c), true};
        cmp.preserved = !cmp.base || (cmp.sup && cmp.sum);
        report.all_preserved = report.all_preserved && cmp.preserved;
        report.comparisons.push_back(cmp);
    }

    report.s_bound_holds = false;
    if (report.base.minimal_s && report.sup.minimal_s && report.sum.minimal_s) {
        const double bound = *report.base.minimal_s * (1.0 + 1e-12);
        report.s_bound_holds = !std::isfinite(*report.base.minimal_s) ||
                               (*report.sup.minimal_s <= bound && *report.sum.minimal_s <= bound);
    }
    return report;
}

}  // namespace mfp
