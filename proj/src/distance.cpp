#include "mfp/distance.hpp"

#include <algorithm>
#include <cmath>

namespace mfp {

namespace {

constexpr std::array<std::string_view, 9> kClassNames = {
    "Symmetric", "Quasimetric", "Metric",    "NDistance", "FDistance",
    "SDistance", "HDistance",   "CDistance", "Complete",
};

std::function<bool(const RealVec&)> dimension_check(std::size_t dim) {
    return [dim](const RealVec& x) { return x.size() == dim; };
}

}  // namespace

std::string_view to_string(DistanceClass c) noexcept {
    return kClassNames[static_cast<std::size_t>(c)];
}

std::optional<DistanceClass> parse_distance_class(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kClassNames.size(); ++i) {
        if (kClassNames[i] == name) return kAllDistanceClasses[i];
    }
    return std::nullopt;
}

FiniteDistanceSpace::FiniteDistanceSpace(std::size_t n, std::vector<double> row_major) : n_(n) {
    if (n == 0) throw ArgumentError("finite distance space needs at least one point");
    if (row_major.size() != n * n) {
        throw ArgumentError("finite distance table must have n*n entries");
    }
    for (double v : row_major) {
        if (!std::isfinite(v)) throw ArgumentError("finite distance table has a non-finite entry");
        if (v < 0.0) throw ArgumentError("finite distance table has a negative entry");
    }
    table_ = std::make_shared<const std::vector<double>>(std::move(row_major));
}

FiniteDistanceSpace FiniteDistanceSpace::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw ArgumentError("finite distance table must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return FiniteDistanceSpace(n, std::move(flat));
}

FiniteDistanceSpace FiniteDistanceSpace::from_points(
    std::span<const double> points, const std::function<double(double, double)>& dist) {
    const std::size_t n = points.size();
    std::vector<double> flat(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = dist(points[i], points[j]);
    }
    return FiniteDistanceSpace(n, std::move(flat));
}

std::vector<std::vector<double>> FiniteDistanceSpace::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i].assign(table_->begin() + static_cast<std::ptrdiff_t>(i * n_),
                      table_->begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    }
    return out;
}

std::optional<std::pair<Index, Index>> FiniteDistanceSpace::axiom_ii_violation() const {
    const auto& d = *this;
    for (Index i = 0; i < n_; ++i) {
        if (d(i, i) != 0.0) return std::pair{i, i};
        for (Index j = i + 1; j < n_; ++j) {
            if (d(i, j) + d(j, i) == 0.0) return std::pair{i, j};
        }
    }
    return std::nullopt;
}

FiniteDistanceSpace FiniteDistanceSpace::scaled(double c) const {
    if (!(c > 0.0)) throw ArgumentError("scale factor must be positive");
    std::vector<double> flat(*table_);
    for (double& v : flat) v *= c;
    return FiniteDistanceSpace(n_, std::move(flat));
}

FiniteDistanceSpace FiniteDistanceSpace::relabeled(std::span<const Index> perm) const {
    if (perm.size() != n_) throw ArgumentError("relabeling must cover every point");
    std::vector<bool> seen(n_, false);
    for (Index p : perm) {
        if (p >= n_ || seen[p]) throw ArgumentError("relabeling is not a permutation");
        seen[p] = true;
    }
    std::vector<double> flat(n_ * n_);
    for (Index i = 0; i < n_; ++i) {
        for (Index j = 0; j < n_; ++j) flat[perm[i] * n_ + perm[j]] = (*this)(i, j);
    }
    return FiniteDistanceSpace(n_, std::move(flat));
}

DistanceSpace<Index> FiniteDistanceSpace::as_space(ClassSet declared,
                                                   std::optional<double> s_constant) const {
    auto table = table_;
    const std::size_t n = n_;
    return DistanceSpace<Index>(
        "finite[" + std::to_string(n) + "]",
        [table, n](const Index& i, const Index& j) { return (*table)[i * n + j]; }, declared,
        s_constant, [n](const Index& i) { return i < n; });
}

DistanceSpace<double> abs_line() {
    return DistanceSpace<double>(
        "abs", [](const double& x, const double& y) { return std::abs(x - y); },
        {DistanceClass::Metric, DistanceClass::NDistance, DistanceClass::FDistance,
         DistanceClass::SDistance, DistanceClass::HDistance, DistanceClass::CDistance,
         DistanceClass::Complete},
        1.0);
}

DistanceSpace<double> squared_line() {
    return DistanceSpace<double>(
        "squared",
        [](const double& x, const double& y) {
            const double t = x - y;
            return t * t;
        },
        {DistanceClass::Symmetric, DistanceClass::NDistance, DistanceClass::FDistance,
         DistanceClass::SDistance, DistanceClass::HDistance, DistanceClass::CDistance,
         DistanceClass::Complete},
        2.0);
}

DistanceSpace<RealVec> abs_space(std::size_t dim) {
    if (dim == 0) throw ArgumentError("dimension must be positive");
    return DistanceSpace<RealVec>(
        "abs",
        [](const RealVec& x, const RealVec& y) {
            double out = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) out = std::max(out, std::abs(x[k] - y[k]));
            return out;
        },
        {DistanceClass::Metric, DistanceClass::NDistance, DistanceClass::FDistance,
         DistanceClass::SDistance, DistanceClass::HDistance, DistanceClass::CDistance,
         DistanceClass::Complete},
        1.0, dimension_check(dim));
}

DistanceSpace<RealVec> euclidean_space(std::size_t dim) {
    if (dim == 0) throw ArgumentError("dimension must be positive");
    return DistanceSpace<RealVec>(
        "euclidean",
        [](const RealVec& x, const RealVec& y) {
            double acc = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) acc += (x[k] - y[k]) * (x[k] - y[k]);
            return std::sqrt(acc);
        },
        {DistanceClass::Metric, DistanceClass::NDistance, DistanceClass::FDistance,
         DistanceClass::SDistance, DistanceClass::HDistance, DistanceClass::CDistance,
         DistanceClass::Complete},
        1.0, dimension_check(dim));
}

DistanceSpace<RealVec> squared_space(std::size_t dim) {
    if (dim == 0) throw ArgumentError("dimension must be positive");
    return DistanceSpace<RealVec>(
        "squared",
        [](const RealVec& x, const RealVec& y) {
            double acc = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) acc += (x[k] - y[k]) * (x[k] - y[k]);
            return acc;
        },
        {DistanceClass::Symmetric, DistanceClass::NDistance, DistanceClass::FDistance,
         DistanceClass::SDistance, DistanceClass::HDistance, DistanceClass::CDistance,
         DistanceClass::Complete},
        2.0, dimension_check(dim));
}

}  // namespace mfp
