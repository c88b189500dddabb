#include "mfp/io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace mfp {

json number_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError(where, "expected a number");
}

json point_to_json(const RealVec& x) {
    if (x.size() == 1) return number_to_json(x[0]);
    json out = json::array();
    for (double v : x) out.push_back(number_to_json(v));
    return out;
}

template <>
double point_from_json<double>(const json& j, const std::string& where) {
    return number_from_json(j, where);
}

template <>
Index point_from_json<Index>(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where, "expected a point index");
    return j.get<Index>();
}

template <>
RealVec point_from_json<RealVec>(const json& j, const std::string& where) {
    if (j.is_array()) {
        RealVec out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_from_json(j[i], where + "/" + std::to_string(i)));
        return out;
    }
    return RealVec{number_from_json(j, where)};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + "@" + std::to_string(e.byte), e.what());
    }
}

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + "/" + key, "missing field");
    return *it;
}

std::size_t count_from(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(where, "expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

json verdict_to_json(const ClassVerdict& v) {
    return {{"evaluated", v.evaluated}, {"passed", v.passed}, {"counterexample", v.counterexample}, {"note", v.note}};
}

ClassVerdict verdict_from_json(const json& j) {
    ClassVerdict v;
    v.evaluated = j.at("evaluated").get<bool>();
    v.passed = j.at("passed").get<bool>();
    v.counterexample = j.at("counterexample").get<std::vector<Index>>();
    v.note = j.at("note").get<std::string>();
    return v;
}

std::string lift_verdict_name(LiftVerdict v) { return std::string(to_string(v)); }

}  // namespace

FiniteDistanceSpace parse_finite_space(const json& j, const std::string& where) {
    const std::size_t n = count_from(member(j, "n", where), where + "/n");
    const json& matrix = member(j, "matrix", where);
    if (!matrix.is_array() || matrix.size() != n) {
        throw ParseError(where + "/matrix", "expected " + std::to_string(n) + " rows");
    }
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_at = where + "/matrix/" + std::to_string(i);
        if (!matrix[i].is_array() || matrix[i].size() != n) {
            throw ParseError(row_at, "expected " + std::to_string(n) + " entries");
        }
        for (std::size_t k = 0; k < n; ++k) values.push_back(number_from_json(matrix[i][k], row_at + "/" + std::to_string(k)));
    }
    try {
        return FiniteDistanceSpace(n, std::move(values));
    } catch (const ArgumentError& e) {
        throw ParseError(where + "/matrix", e.what());
    } catch (const DomainError& e) {
        throw ParseError(where + "/matrix", e.what());
    } catch (const NumericError& e) {
        throw ParseError(where + "/matrix", e.what());
    }
}

LambdaFamily parse_lambda(const json& j, const std::string& where) {
    if (j.is_string()) return parse_lambda(json{{"builtin", j}}, where);
    if (j.is_object() && j.contains("builtin")) {
        const json& b = j["builtin"];
        if (!b.is_string()) throw ParseError(where + "/builtin", "expected a family name");
        const auto& name = b.get_ref<const std::string&>();
        if (name == "coupled") return coupled_family();
        if (name == "tripled") return tripled_family();
        const auto size = [&](const char* key) {
            const std::size_t v = count_from(member(j, key, where), where + "/" + key);
            if (v == 0) throw ParseError(where + "/" + key, "must be positive");
            return v;
        };
        if (name == "cyclic") return cyclic_family(size("N"));
        if (name == "identity") return identity_family(j.contains("N") ? size("N") : size("m"));
        throw ParseError(where + "/builtin", "unknown family '" + name + "'");
    }
    const json& table = member(j, "table", where);
    if (!table.is_array()) throw ParseError(where + "/table", "expected an array of rows");
    std::vector<std::vector<std::size_t>> rows;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const std::string row_at = where + "/table/" + std::to_string(i);
        if (!table[i].is_array()) throw ParseError(row_at, "expected a row");
        std::vector<std::size_t> row;
        for (std::size_t k = 0; k < table[i].size(); ++k) row.push_back(count_from(table[i][k], row_at + "/" + std::to_string(k)));
        rows.push_back(std::move(row));
    }
    if (j.contains("m") && count_from(j["m"], where + "/m") != rows.size()) {
        throw ParseError(where + "/m", "does not match the number of rows");
    }
    try {
        return LambdaFamily::from_one_based(rows);
    } catch (const ArgumentError& e) {
        throw ParseError(where + "/table", e.what());
    }
}

FiniteInstance parse_instance(const json& j, const std::string& where) {
    auto space = parse_finite_space(member(j, "space", where), where + "/space");
    auto lambda = parse_lambda(member(j, "lambda", where), where + "/lambda");
    const json& t = member(j, "F_table", where);
    if (!t.is_array()) throw ParseError(where + "/F_table", "expected an array");
    std::vector<Index> table;
    for (std::size_t k = 0; k < t.size(); ++k) table.push_back(point_from_json<Index>(t[k], where + "/F_table/" + std::to_string(k)));
    try {
        return FiniteInstance(std::move(space), std::move(table), std::move(lambda));
    } catch (const ArgumentError& e) {
        throw ParseError(where + "/F_table", e.what());
    }
}

SolverConfig parse_solver(const json& j, const std::string& where, SolverConfig base) {
    if (j.is_null()) return base;
    if (!j.is_object()) throw ParseError(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string at = where + "/" + it.key();
        const json& v = it.value();
        if (it.key() == "tol") {
            base.tol = number_from_json(v, at);
        } else if (it.key() == "max_iter") {
            base.max_iter = count_from(v, at);
        } else if (it.key() == "window") {
            base.window = count_from(v, at);
        } else if (it.key() == "boundedness_horizon") {
            base.boundedness_horizon = count_from(v, at);
        } else if (it.key() == "equality_tol") {
            base.equality_tol = number_from_json(v, at);
        } else if (it.key() == "blowup_guard") {
            base.blowup_guard = number_from_json(v, at);
        } else {
            throw ParseError(at, "unknown solver field");
        }
    }
    try {
        base.validate();
    } catch (const ArgumentError& e) {
        throw ParseError(where, e.what());
    }
    return base;
}

json to_json(const FiniteDistanceSpace& space) {
    json rows = json::array();
    for (const auto& r : space.rows()) {
        json row = json::array();
        for (double v : r) row.push_back(number_to_json(v));
        rows.push_back(row);
    }
    return {{"n", space.size()}, {"matrix", rows}};
}

json to_json(const LambdaFamily& lambda) {
    return {{"m", lambda.arity()}, {"table", lambda.one_based()}};
}

json to_json(const FiniteInstance& inst) {
    return {{"space", to_json(inst.space)}, {"F_table", inst.table}, {"lambda", to_json(inst.lambda)}};
}

json to_json(const SolverConfig& c) {
    return {{"tol", number_to_json(c.tol)},
            {"max_iter", c.max_iter},
            {"window", c.window},
            {"boundedness_horizon", c.boundedness_horizon},
            {"equality_tol", number_to_json(c.equality_tol)},
            {"blowup_guard", number_to_json(c.blowup_guard)}};
}

json to_json(const AxiomReport& r) {
    json j;
    j["n"] = r.n;
    j["fundamental_ok"] = r.fundamental_ok;
    j["fundamental_witness"] = r.fundamental_witness;
    json classes = json::object();
    for (auto c : kAllDistanceClasses) classes[std::string(to_string(c))] = verdict_to_json(r.verdict(c));
    j["classes"] = classes;
    j["minimal_s"] = r.minimal_s ? number_to_json(*r.minimal_s) : json(nullptr);
    json nw = json::array();
    for (const auto& w : r.n_delta_witness) {
        nw.push_back({{"x", w.x}, {"epsilon", number_to_json(w.epsilon)}, {"delta", number_to_json(w.delta)}});
    }
    j["n_delta_witness"] = nw;
    json fw = json::array();
    for (const auto& w : r.f_delta_witness) {
        fw.push_back({{"epsilon", number_to_json(w.epsilon)}, {"delta", number_to_json(w.delta)}});
    }
    j["f_delta_witness"] = fw;
    return j;
}

AxiomReport axiom_report_from_json(const json& j) {
    AxiomReport r;
    r.n = j.at("n").get<std::size_t>();
    r.fundamental_ok = j.at("fundamental_ok").get<bool>();
    r.fundamental_witness = j.at("fundamental_witness").get<std::vector<Index>>();
    const json& classes = j.at("classes");
    for (auto c : kAllDistanceClasses) r.verdict(c) = verdict_from_json(classes.at(std::string(to_string(c))));
    if (!j.at("minimal_s").is_null()) r.minimal_s = number_from_json(j["minimal_s"], "/minimal_s");
    for (const auto& w : j.at("n_delta_witness")) {
        r.n_delta_witness.push_back({w.at("x").get<Index>(), number_from_json(w.at("epsilon"), "/epsilon"),
                                     number_from_json(w.at("delta"), "/delta")});
    }
    for (const auto& w : j.at("f_delta_witness")) {
        r.f_delta_witness.push_back(
            {number_from_json(w.at("epsilon"), "/epsilon"), number_from_json(w.at("delta"), "/delta")});
    }
    return r;
}

json to_json(const FamilyConditionReport& r) {
    return {{"m", r.m},
            {"surjective", r.surjective},
            {"index_counts", r.index_counts},
            {"balanced", r.balanced},
            {"literal_union_condition", r.literal_union_condition}};
}

FamilyConditionReport family_report_from_json(const json& j) {
    FamilyConditionReport r;
    r.m = j.at("m").get<std::size_t>();
    r.surjective = j.at("surjective").get<std::vector<bool>>();
    r.index_counts = j.at("index_counts").get<std::vector<std::size_t>>();
    r.balanced = j.at("balanced").get<bool>();
    r.literal_union_condition = j.at("literal_union_condition").get<bool>();
    return r;
}

json to_json(const ClosureReport& r) {
    json comps = json::array();
    for (const auto& c : r.comparisons) {
        comps.push_back({{"class", std::string(to_string(c.cls))},
                         {"base", c.base},
                         {"sup", c.sup},
                         {"sum", c.sum},
                         {"preserved", c.preserved}});
    }
    return {{"base_n", r.base_n},
            {"m", r.m},
            {"product_n", r.product_n},
            {"base", to_json(r.base)},
            {"sup", to_json(r.sup)},
            {"sum", to_json(r.sum)},
            {"comparisons", comps},
            {"s_bound_holds", r.s_bound_holds},
            {"all_preserved", r.all_preserved}};
}

ClosureReport closure_report_from_json(const json& j) {
    ClosureReport r;
    r.base_n = j.at("base_n").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.product_n = j.at("product_n").get<std::size_t>();
    r.base = axiom_report_from_json(j.at("base"));
    r.sup = axiom_report_from_json(j.at("sup"));
    r.sum = axiom_report_from_json(j.at("sum"));
    for (const auto& c : j.at("comparisons")) {
        const auto cls = parse_distance_class(c.at("class").get<std::string>());
        if (!cls) throw ParseError("/comparisons", "unknown class");
        r.comparisons.push_back({*cls, c.at("base").get<bool>(), c.at("sup").get<bool>(), c.at("sum").get<bool>(),
                                 c.at("preserved").get<bool>()});
    }
    r.s_bound_holds = j.at("s_bound_holds").get<bool>();
    r.all_preserved = j.at("all_preserved").get<bool>();
    return r;
}

json to_json(const ExactConstants& k) {
    return {{"k_sup_F", number_to_json(k.k_sup_F)},
            {"k_sum_F", number_to_json(k.k_sum_F)},
            {"k_lifted_sup", number_to_json(k.k_lifted_sup)},
            {"k_lifted_sum", number_to_json(k.k_lifted_sum)},
            {"lifted_sup_within_F", k.lifted_sup_within_F},
            {"lifted_sum_within_F", k.lifted_sum_within_F}};
}

json to_json(const CrossValidationReport& r) {
    json fps = json::array();
    for (const auto& a : r.fixed_points) fps.push_back(tuple_to_json(a));
    json starts = json::array();
    for (const auto& s : r.starts) {
        starts.push_back({{"start", tuple_to_json(s.start)},
                          {"status", std::string(to_string(s.status))},
                          {"endpoint", s.endpoint ? tuple_to_json(*s.endpoint) : json(nullptr)},
                          {"iterations", s.iterations}});
    }
    return {{"fixed_points", fps},
            {"enumeration_paths_agree", r.enumeration_paths_agree},
            {"constants", to_json(r.constants)},
            {"balanced", r.balanced},
            {"route", std::string(to_string(r.route))},
            {"asserted", r.asserted},
            {"endpoints_sound", r.endpoints_sound},
            {"agreement", r.agreement},
            {"seed", r.seed ? json(*r.seed) : json(nullptr)},
            {"starts", starts}};
}

json to_json(const BoundednessReport& r) {
    return {{"bounded", r.bounded},
            {"sup_form", number_to_json(r.sup_form)},
            {"sum_form", number_to_json(r.sum_form)},
            {"horizon", r.horizon}};
}

json to_json(const AccumulationHypotheses& r) {
    return {{"declared_symmetric", r.declared_symmetric},
            {"declared_n_distance", r.declared_n_distance},
            {"asymptotically_regular", r.asymptotically_regular},
            {"asymptotically_regular_sum", r.asymptotically_regular_sum},
            {"accumulation", r.accumulation},
            {"recurrence", r.recurrence ? json::array({r.recurrence->first, r.recurrence->second}) : json(nullptr)},
            {"family_balanced", r.family_balanced},
            {"sup_clause_supported", r.sup_clause_supported},
            {"sum_clause_supported", r.sum_clause_supported}};
}

json to_json(const SDistanceHypotheses& r) {
    return {{"declared_complete", r.declared_complete},
            {"declared_symmetric", r.declared_symmetric},
            {"declared_s_distance", r.declared_s_distance},
            {"s_declared", r.s_declared ? number_to_json(*r.s_declared) : json(nullptr)},
            {"s_observed", r.s_observed ? number_to_json(*r.s_observed) : json(nullptr)},
            {"mode", std::string(to_string(r.mode))},
            {"k", number_to_json(r.k)},
            {"family_balanced", r.family_balanced},
            {"supported", r.supported}};
}

json to_json(const LiftCheck& c) {
    return {{"verdict", lift_verdict_name(c.verdict)},
            {"lhs", number_to_json(c.lhs)},
            {"rhs", number_to_json(c.rhs)},
            {"failing_row", c.failing_row ? json(*c.failing_row) : json(nullptr)},
            {"rearranged_hypothesis", c.rearranged_hypothesis},
            {"unrearranged_hypothesis", c.unrearranged_hypothesis},
            {"balanced", c.balanced},
            {"warning", c.warning}};
}

namespace {

bool is_scalar_array(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& v : j) {
        if (v.is_object()) return false;
        if (v.is_array() && !is_scalar_array(v)) return false;
    }
    return true;
}

void render(std::ostringstream& os, const json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const json& v = it.value();
            if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
                os << pad << it.key() << ":\n";
                render(os, v, depth + 1);
            } else {
                os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            }
        }
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            os << pad << "- [" << k << "]\n";
            render(os, j[k], depth + 1);
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace

std::string render_text(const json& j) {
    std::ostringstream os;
    render(os, j, 0);
    return os.str();
}

}  // namespace mfp
