#include "mfp/lambda.hpp"

#include <memory>

namespace mfp {

LambdaFamily LambdaFamily::from_zero_based(std::vector<std::vector<std::size_t>> table) {
    const std::size_t m = table.size();
    if (m == 0) throw ArgumentError("family needs at least one map");
    for (std::size_t i = 0; i < m; ++i) {
        if (table[i].size() != m) {
            throw ArgumentError("family row " + std::to_string(i + 1) + " has " +
                                std::to_string(table[i].size()) + " entries, expected " +
                                std::to_string(m));
        }
        for (std::size_t v : table[i]) {
            if (v >= m) {
                throw ArgumentError("family row " + std::to_string(i + 1) + " has entry " +
                                    std::to_string(v + 1) + " outside 1.." + std::to_string(m));
            }
        }
    }
    return LambdaFamily(std::move(table));
}

LambdaFamily LambdaFamily::from_one_based(const std::vector<std::vector<std::size_t>>& table) {
    std::vector<std::vector<std::size_t>> rows(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t v : table[i]) {
            if (v == 0) {
                throw ArgumentError("family row " + std::to_string(i + 1) + " has entry 0; entries are 1-based");
            }
            rows[i].push_back(v - 1);
        }
    }
    return from_zero_based(std::move(rows));
}

std::vector<std::vector<std::size_t>> LambdaFamily::one_based() const {
    auto out = rows_;
    for (auto& row : out) {
        for (auto& v : row) ++v;
    }
    return out;
}

LambdaFamily coupled_family() { return LambdaFamily::from_one_based({{1, 2}, {2, 1}}); }

LambdaFamily tripled_family() {
    return LambdaFamily::from_one_based({{1, 2, 3}, {2, 1, 2}, {3, 2, 1}});
}

LambdaFamily cyclic_family(std::size_t n) {
    if (n < 1) throw ArgumentError("cyclic family needs N >= 1");
    std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
    }
    return LambdaFamily::from_zero_based(std::move(rows));
}

LambdaFamily identity_family(std::size_t m) {
    if (m < 1) throw ArgumentError("family needs at least one map");
    std::vector<std::vector<std::size_t>> rows(m, std::vector<std::size_t>(m));
    for (auto& row : rows) {
        for (std::size_t j = 0; j < m; ++j) row[j] = j;
    }
    return LambdaFamily::from_zero_based(std::move(rows));
}

FamilyConditionReport family_conditions(const LambdaFamily& lambda) {
    const std::size_t m = lambda.arity();
    FamilyConditionReport report;
    report.m = m;
    report.index_counts.assign(m, 0);
    report.surjective.assign(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<bool> hit(m, false);
        // Preimages of the targets hit by row i; their union is the whole domain.
        std::size_t preimage_union = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t t = lambda.at(i, j);
            hit[t] = true;
            ++report.index_counts[t];
            ++preimage_union;
        }
        bool onto = true;
        for (bool h : hit) onto = onto && h;
        report.surjective[i] = onto;
        report.literal_union_condition = report.literal_union_condition && preimage_union == m;
    }
    report.balanced = true;
    for (std::size_t c : report.index_counts) report.balanced = report.balanced && c <= m;
    return report;
}

MultiOperator<Index> table_operator(std::size_t n, std::size_t m, std::vector<Index> values,
                                    std::string description) {
    const std::size_t total = checked_power(n, m, kProductCarrierLimit);
    if (values.size() != total) {
        throw ArgumentError("operator table has " + std::to_string(values.size()) +
                            " entries, expected n^m = " + std::to_string(total));
    }
    for (Index v : values) {
        if (v >= n) throw ArgumentError("operator table value " + std::to_string(v) + " outside the carrier");
    }
    auto table = std::make_shared<const std::vector<Index>>(std::move(values));
    return MultiOperator<Index>{
        m,
        [table, n](std::span<const Index> x) {
            return (*table)[encode_tuple(x, n)];
        },
        std::move(description)};
}

}  // namespace mfp
