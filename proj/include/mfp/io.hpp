#pragma once

#include "mfp/classify.hpp"
#include "mfp/contraction.hpp"
#include "mfp/lambda.hpp"
#include "mfp/oracle.hpp"
#include "mfp/picard.hpp"
#include "mfp/product.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace mfp {

using nlohmann::json;

// Reals are written as JSON numbers; non-finite values as "inf", "-inf", "nan".
json number_to_json(double v);
double number_from_json(const json& j, const std::string& where);

inline json point_to_json(double x) { return number_to_json(x); }
inline json point_to_json(Index x) { return x; }
/// A one-dimensional vector is written as a bare number.
json point_to_json(const RealVec& x);

template <class P>
json tuple_to_json(const Tuple<P>& t) {
    json out = json::array();
    for (const auto& p : t) out.push_back(point_to_json(p));
    return out;
}

template <class P>
P point_from_json(const json& j, const std::string& where);
template <>
double point_from_json<double>(const json& j, const std::string& where);
template <>
Index point_from_json<Index>(const json& j, const std::string& where);
/// Accepts a bare number for a one-dimensional vector.
template <>
RealVec point_from_json<RealVec>(const json& j, const std::string& where);

template <class P>
Tuple<P> tuple_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of points");
    Tuple<P> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(point_from_json<P>(j[i], where + "/" + std::to_string(i)));
    }
    return out;
}

/// Reads and parses a JSON file; syntax errors carry the byte offset.
json read_json_file(const std::string& path);

// Structured input.

/// {"n": int, "matrix": [[real]]}
FiniteDistanceSpace parse_finite_space(const json& j, const std::string& where = "");
/// {"m": int, "table": [[int]]} (1-based) or {"builtin": "coupled"|"tripled"|"cyclic"|"identity", "N": int}
LambdaFamily parse_lambda(const json& j, const std::string& where = "");
/// {"space": ..., "F_table": [...], "lambda": ...}
FiniteInstance parse_instance(const json& j, const std::string& where = "");
SolverConfig parse_solver(const json& j, const std::string& where, SolverConfig base = {});

// Serialization. Every *_from_json inverts the matching to_json exactly.

json to_json(const FiniteDistanceSpace& space);
json to_json(const LambdaFamily& lambda);
json to_json(const FiniteInstance& inst);
json to_json(const SolverConfig& config);

json to_json(const AxiomReport& report);
AxiomReport axiom_report_from_json(const json& j);

json to_json(const FamilyConditionReport& report);
FamilyConditionReport family_report_from_json(const json& j);

json to_json(const ClosureReport& report);
ClosureReport closure_report_from_json(const json& j);

json to_json(const ExactConstants& k);
json to_json(const CrossValidationReport& report);
json to_json(const BoundednessReport& report);
json to_json(const AccumulationHypotheses& report);
json to_json(const SDistanceHypotheses& report);
json to_json(const LiftCheck& check);

template <class P>
json to_json(const ContractionReport<P>& r) {
    json j;
    j["mode"] = std::string(to_string(r.mode));
    j["k_estimate"] = number_to_json(r.k_estimate);
    j["witness"] = r.witness ? json::array({tuple_to_json(r.witness->first), tuple_to_json(r.witness->second)})
                             : json(nullptr);
    j["sample_size"] = r.sample_size;
    j["degenerate"] = r.degenerate;
    j["degenerate_separated"] = r.degenerate_separated;
    j["exact"] = r.exact;
    return j;
}

template <class P>
ContractionReport<P> contraction_report_from_json(const json& j) {
    ContractionReport<P> r;
    r.mode = j.at("mode").get<std::string>() == "sum" ? ProductMode::Sum : ProductMode::Sup;
    r.k_estimate = number_from_json(j.at("k_estimate"), "/k_estimate");
    if (!j.at("witness").is_null()) {
        r.witness = std::pair{tuple_from_json<P>(j["witness"][0], "/witness/0"),
                              tuple_from_json<P>(j["witness"][1], "/witness/1")};
    }
    r.sample_size = j.at("sample_size").get<std::size_t>();
    r.degenerate = j.at("degenerate").get<std::size_t>();
    r.degenerate_separated = j.at("degenerate_separated").get<std::size_t>();
    r.exact = j.at("exact").get<bool>();
    return r;
}

template <class P>
json to_json(const SolveReport<P>& r) {
    json j;
    j["status"] = std::string(to_string(r.status));
    j["fixed_point"] = r.fixed_point ? tuple_to_json(*r.fixed_point) : json(nullptr);
    j["residual"] = number_to_json(r.residual);
    j["iterations"] = r.iterations;
    j["evaluations"] = r.evaluations;
    j["bounded"] = to_json(r.boundedness);
    j["rate_estimate"] = r.rate ? number_to_json(*r.rate) : json(nullptr);
    j["numerical_only"] = r.numerical_only;
    j["stop_reason"] = std::string(to_string(r.trace.stop_reason));
    j["last_iterate"] = tuple_to_json(r.trace.last());
    return j;
}

template <class P>
json to_json(const UniquenessReport<P>& r) {
    json j;
    j["verdict"] = std::string(to_string(r.verdict));
    j["match_tol"] = number_to_json(r.match_tol);
    json ends = json::array();
    for (std::size_t k = 0; k < r.statuses.size(); ++k) {
        ends.push_back({{"status", std::string(to_string(r.statuses[k]))},
                        {"endpoint", r.endpoints[k] ? tuple_to_json(*r.endpoints[k]) : json(nullptr)}});
    }
    j["runs"] = ends;
    return j;
}

/// One JSON record per iterate: iteration, components, the steps into it in
/// both product forms and orientations, and the running boundedness sup.
template <class P>
void write_trace_jsonl(std::ostream& os, const PicardTrace<P>& t) {
    for (std::size_t k = 0; k < t.iterates.size(); ++k) {
        const std::size_t n = t.first_index + k;
        json rec;
        rec["iteration"] = n;
        rec["components"] = tuple_to_json(t.iterates[k]);
        rec["step_sup"] = number_to_json(n == 0 ? 0.0 : t.step_sup_fwd[n - 1]);
        rec["step_sup_bwd"] = number_to_json(n == 0 ? 0.0 : t.step_sup_bwd[n - 1]);
        rec["step_sum"] = number_to_json(n == 0 ? 0.0 : t.step_sum_fwd[n - 1]);
        rec["step_sum_bwd"] = number_to_json(n == 0 ? 0.0 : t.step_sum_bwd[n - 1]);
        rec["running_sup"] = number_to_json(t.running_sup[n]);
        rec["running_sum_sup"] = number_to_json(t.running_sum_sup[n]);
        os << rec.dump() << '\n';
    }
}

/// Indented key: value rendering of a report.
std::string render_text(const json& j);

}  // namespace mfp
