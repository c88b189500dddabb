#include "mfp/problems.hpp"

#include "mfp/classify.hpp"
#include "mfp/io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace mfp {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + "/" + key, "missing field");
    return *it;
}

std::string string_at(const json& j, const char* key, const std::string& where) {
    const json& v = member(j, key, where);
    if (!v.is_string()) throw ParseError(where + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::size_t positive_at(const json& j, const char* key, const std::string& where) {
    const json& v = member(j, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ParseError(where + "/" + key, "expected a positive integer");
    }
    return v.get<std::size_t>();
}

std::vector<double> reals_at(const json& j, const char* key, const std::string& where) {
    const json& v = member(j, key, where);
    const std::string at = where + "/" + key;
    if (!v.is_array() || v.empty()) throw ParseError(at, "expected a nonempty array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(number_from_json(v[k], at + "/" + std::to_string(k)));
        if (!std::isfinite(out.back())) throw ParseError(at + "/" + std::to_string(k), "must be finite");
    }
    return out;
}

double real_or(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const double v = number_from_json(j[key], where + "/" + key);
    if (!std::isfinite(v)) throw ParseError(where + "/" + key, "must be finite");
    return v;
}

// Continuous operators act coordinatewise on R^dim.

std::function<double(double)> unary(const std::string& name, const std::string& where) {
    if (name == "sin") return [](double x) { return std::sin(x); };
    if (name == "cos") return [](double x) { return std::cos(x); };
    if (name == "tanh") return [](double x) { return std::tanh(x); };
    if (name == "atan") return [](double x) { return std::atan(x); };
    throw ParseError(where, "unknown function '" + name + "'");
}

std::string join_terms(const std::vector<double>& c, const std::string& fn, double offset) {
    std::string out;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0.0) continue;
        std::ostringstream term;
        term << c[j] << '*' << (fn.empty() ? "" : fn + "(") << 'x' << (j + 1) << (fn.empty() ? "" : ")");
        out += (out.empty() ? "" : " + ") + term.str();
    }
    std::ostringstream tail;
    tail << offset;
    return (out.empty() ? "" : out + " + ") + tail.str();
}

MultiOperator<RealVec> continuous_operator(const json& j, std::size_t dim, const std::string& where) {
    const std::string kind = string_at(j, "kind", where);
    if (kind == "affine" || kind == "nonlinear") {
        const auto coeffs = reals_at(j, "coeffs", where);
        const double offset = real_or(j, "offset", 0.0, where);
        std::function<double(double)> g = [](double x) { return x; };
        std::string fn_name;
        if (kind == "nonlinear") {
            fn_name = string_at(j, "fn", where);
            g = unary(fn_name, where + "/fn");
        }
        return {coeffs.size(),
                [coeffs, offset, g, dim](std::span<const RealVec> x) {
                    RealVec out(dim, offset);
                    for (std::size_t k = 0; k < dim; ++k) {
                        for (std::size_t i = 0; i < coeffs.size(); ++i) out[k] += coeffs[i] * g(x[i][k]);
                    }
                    return out;
                },
                kind + ": " + join_terms(coeffs, fn_name, offset)};
    }
    if (kind == "min" || kind == "max") {
        const std::size_t m = positive_at(j, "arity", where);
        const bool is_min = kind == "min";
        return {m,
                [is_min, dim](std::span<const RealVec> x) {
                    RealVec out = x[0];
                    for (std::size_t i = 1; i < x.size(); ++i) {
                        for (std::size_t k = 0; k < dim; ++k) {
                            out[k] = is_min ? std::min(out[k], x[i][k]) : std::max(out[k], x[i][k]);
                        }
                    }
                    return out;
                },
                kind};
    }
    throw ParseError(where + "/kind", "unknown operator kind '" + kind + "'");
}

std::vector<Index> finite_table(const json& j, std::size_t n, std::size_t m, const std::string& where) {
    const std::string kind = string_at(j, "kind", where);
    const std::size_t total = checked_power(n, m, kProductCarrierLimit);
    std::vector<Index> table(total);
    if (kind == "table") {
        const json& v = member(j, "values", where);
        if (!v.is_array() || v.size() != total) {
            throw ParseError(where + "/values", "expected n^m = " + std::to_string(total) + " entries");
        }
        for (std::size_t c = 0; c < total; ++c) {
            table[c] = point_from_json<Index>(v[c], where + "/values/" + std::to_string(c));
            if (table[c] >= n) throw ParseError(where + "/values/" + std::to_string(c), "outside the carrier");
        }
        return table;
    }
    for (Index c = 0; c < total; ++c) {
        const auto x = decode_tuple(c, n, m);
        if (kind == "min") {
            table[c] = *std::min_element(x.begin(), x.end());
        } else if (kind == "max") {
            table[c] = *std::max_element(x.begin(), x.end());
        } else if (kind == "constant") {
            const json& v = member(j, "value", where);
            const Index value = point_from_json<Index>(v, where + "/value");
            if (value >= n) throw ParseError(where + "/value", "outside the carrier");
            table[c] = value;
        } else if (kind == "increment_mod") {
            table[c] = (x[0] + 1) % n;
        } else {
            throw ParseError(where + "/kind", "unknown operator kind '" + kind + "'");
        }
    }
    return table;
}

FiniteDistanceSpace finite_space(const json& j, const std::string& where) {
    if (j.contains("matrix")) return parse_finite_space(j, where);
    const auto points = reals_at(j, "points", where);
    const std::string dist = j.contains("distance") ? string_at(j, "distance", where) : "abs";
    std::function<double(double, double)> fn;
    if (dist == "abs") {
        fn = [](double x, double y) { return std::abs(x - y); };
    } else if (dist == "squared") {
        fn = [](double x, double y) { return (x - y) * (x - y); };
    } else {
        throw ParseError(where + "/distance", "unknown point distance '" + dist + "'");
    }
    try {
        return FiniteDistanceSpace::from_points(points, fn);
    } catch (const Error& e) {
        throw ParseError(where + "/points", e.what());
    }
}

DistanceSpace<RealVec> continuous_space(const std::string& kind, std::size_t dim, const std::string& where) {
    if (kind == "abs") return abs_space(dim);
    if (kind == "euclidean") return euclidean_space(dim);
    if (kind == "squared") return squared_space(dim);
    throw ParseError(where, "unknown space kind '" + kind + "'");
}

template <class P>
void check_arity(std::size_t op_arity, const LambdaFamily& lambda, const Tuple<P>& start) {
    if (op_arity != lambda.arity()) {
        throw ParseError("/lambda", "family arity " + std::to_string(lambda.arity()) +
                                        " does not match operator arity " + std::to_string(op_arity));
    }
    if (start.size() != op_arity) {
        throw ParseError("/start", "expected " + std::to_string(op_arity) + " start coordinates");
    }
}

template <class P>
std::vector<Tuple<P>> expected_points(const json& doc, bool& complete) {
    std::vector<Tuple<P>> out;
    complete = false;
    if (!doc.contains("expected")) return out;
    const json& e = doc["expected"];
    const json& fps = member(e, "fixed_points", "/expected");
    if (!fps.is_array()) throw ParseError("/expected/fixed_points", "expected an array");
    for (std::size_t k = 0; k < fps.size(); ++k) {
        out.push_back(tuple_from_json<P>(fps[k], "/expected/fixed_points/" + std::to_string(k)));
    }
    if (e.contains("complete")) {
        if (!e["complete"].is_boolean()) throw ParseError("/expected/complete", "expected a boolean");
        complete = e["complete"].get<bool>();
    }
    return out;
}

std::uint64_t seed_of(const json& doc) {
    if (!doc.contains("seed")) return 0;
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) throw ParseError("/seed", "expected a nonnegative integer");
    return doc["seed"].get<std::uint64_t>();
}

Problem parse_continuous(const json& doc, const json& space_doc, const std::string& kind) {
    const std::size_t dim = space_doc.contains("dim") ? positive_at(space_doc, "dim", "/space") : 1;
    auto space = continuous_space(kind, dim, "/space/kind");
    auto op = continuous_operator(member(doc, "operator", ""), dim, "/operator");
    auto lambda = parse_lambda(member(doc, "lambda", ""), "/lambda");

    Tuple<RealVec> start;
    if (doc.contains("start")) {
        start = tuple_from_json<RealVec>(doc["start"], "/start");
    } else {
        start.assign(op.arity, RealVec(dim, 0.0));
    }
    check_arity(op.arity, lambda, start);
    for (std::size_t i = 0; i < start.size(); ++i) {
        if (start[i].size() != dim) throw ParseError("/start/" + std::to_string(i), "wrong dimension");
    }

    ContinuousProblem p{.name = string_at(doc, "name", ""),
                        .description = doc.value("description", std::string{}),
                        .dim = dim,
                        .space = std::move(space),
                        .op = std::move(op),
                        .lambda = std::move(lambda),
                        .start = std::move(start),
                        .solver = parse_solver(doc.contains("solver") ? doc["solver"] : json(nullptr), "/solver"),
                        .expected = {},
                        .source = doc};
    if (doc.contains("box")) {
        const json& b = doc["box"];
        if (!b.is_array() || b.size() != 2) throw ParseError("/box", "expected [lo, hi]");
        p.box_lo = number_from_json(b[0], "/box/0");
        p.box_hi = number_from_json(b[1], "/box/1");
        if (!(p.box_lo < p.box_hi) || !std::isfinite(p.box_lo) || !std::isfinite(p.box_hi)) {
            throw ParseError("/box", "need finite lo < hi");
        }
    }
    p.seed = seed_of(doc);
    if (doc.contains("samples")) p.samples = positive_at(doc, "samples", "");
    p.expected = expected_points<RealVec>(doc, p.expected_complete);
    for (std::size_t k = 0; k < p.expected.size(); ++k) {
        if (p.expected[k].size() != p.op.arity) {
            throw ParseError("/expected/fixed_points/" + std::to_string(k), "wrong arity");
        }
        for (const auto& x : p.expected[k]) {
            if (x.size() != dim) throw ParseError("/expected/fixed_points/" + std::to_string(k), "wrong dimension");
        }
    }
    return p;
}

Problem parse_finite(const json& doc, const json& space_doc) {
    auto space = finite_space(space_doc, "/space");
    auto lambda = parse_lambda(member(doc, "lambda", ""), "/lambda");
    auto table = finite_table(member(doc, "operator", ""), space.size(), lambda.arity(), "/operator");
    FiniteInstance inst(std::move(space), std::move(table), std::move(lambda));

    Tuple<Index> start;
    if (doc.contains("start")) {
        start = tuple_from_json<Index>(doc["start"], "/start");
    } else {
        start.assign(inst.m(), 0);
    }
    check_arity(inst.m(), inst.lambda, start);
    for (std::size_t i = 0; i < start.size(); ++i) {
        if (start[i] >= inst.n()) throw ParseError("/start/" + std::to_string(i), "outside the carrier");
    }

    FiniteProblem p{.name = string_at(doc, "name", ""),
                    .description = doc.value("description", std::string{}),
                    .instance = std::move(inst),
                    .start = std::move(start),
                    .solver = parse_solver(doc.contains("solver") ? doc["solver"] : json(nullptr), "/solver"),
                    .seed = seed_of(doc),
                    .expected = {},
                    .expected_complete = false,
                    .source = doc};
    p.expected = expected_points<Index>(doc, p.expected_complete);
    for (std::size_t k = 0; k < p.expected.size(); ++k) {
        const std::string at = "/expected/fixed_points/" + std::to_string(k);
        if (p.expected[k].size() != p.instance.m()) throw ParseError(at, "wrong arity");
        for (Index x : p.expected[k]) {
            if (x >= p.instance.n()) throw ParseError(at, "outside the carrier");
        }
    }
    std::sort(p.expected.begin(), p.expected.end());
    return p;
}

json affine(std::vector<double> coeffs, double offset) {
    return {{"kind", "affine"}, {"coeffs", coeffs}, {"offset", offset}};
}

std::vector<json> make_catalog() {
    const json line = {{"kind", "abs"}, {"dim", 1}};
    const json three = {{"kind", "finite"}, {"points", {0, 1, 2}}, {"distance", "abs"}};
    std::vector<json> docs;
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P1"},
                    {"description", "coupled affine F(x,y) = x/4 + y/4 + 1 on R with |x - y|"},
                    {"space", line},
                    {"operator", affine({0.25, 0.25}, 1.0)},
                    {"lambda", {{"builtin", "coupled"}}},
                    {"start", {0.0, 0.0}},
                    {"box", {-10.0, 10.0}},
                    {"seed", 1},
                    {"expected", {{"fixed_points", {{2.0, 2.0}}}, {"complete", true}}}});
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P2"},
                    {"description", "tripled family, F(x,y,z) = (x + z)/6 + 1 on R"},
                    {"space", line},
                    {"operator", affine({1.0 / 6.0, 0.0, 1.0 / 6.0}, 1.0)},
                    {"lambda", {{"builtin", "tripled"}}},
                    {"start", {0.0, 0.0, 0.0}},
                    {"box", {-10.0, 10.0}},
                    {"seed", 2},
                    {"expected", {{"fixed_points", {{1.5, 1.5, 1.5}}}, {"complete", true}}}});
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P3"},
                    {"description", "cyclic family N = 4, F = (x1 + x2 + x3 + x4)/8 + 1 on R"},
                    {"space", line},
                    {"operator", affine({0.125, 0.125, 0.125, 0.125}, 1.0)},
                    {"lambda", {{"builtin", "cyclic"}, {"N", 4}}},
                    {"start", {0.0, 0.0, 0.0, 0.0}},
                    {"box", {-10.0, 10.0}},
                    {"seed", 3},
                    {"expected", {{"fixed_points", {{2.0, 2.0, 2.0, 2.0}}}, {"complete", true}}}});
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P4"},
                    {"description", "F(x,y) = x/4 + y/4 + 1 under (x - y)^2, an s-distance with s = 2; k = 1/4"},
                    {"space", {{"kind", "squared"}, {"dim", 1}}},
                    {"operator", affine({0.25, 0.25}, 1.0)},
                    {"lambda", {{"builtin", "coupled"}}},
                    {"start", {0.0, 0.0}},
                    {"box", {-10.0, 10.0}},
                    {"seed", 4},
                    {"expected", {{"fixed_points", {{2.0, 2.0}}}, {"complete", true}}}});
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P5"},
                    {"description", "F = min on {0,1,2} with |x - y|; every diagonal pair is fixed"},
                    {"space", three},
                    {"operator", {{"kind", "min"}}},
                    {"lambda", {{"builtin", "coupled"}}},
                    {"start", {0, 2}},
                    {"seed", 5},
                    {"expected", {{"fixed_points", {{0, 0}, {1, 1}, {2, 2}}}, {"complete", true}}}});
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P6"},
                    {"description", "F(x) = x + 1 mod 3 on {0,1,2}, m = 1; no fixed point"},
                    {"space", three},
                    {"operator", {{"kind", "increment_mod"}}},
                    {"lambda", {{"builtin", "identity"}, {"m", 1}}},
                    {"start", {0}},
                    {"solver", {{"max_iter", 1000}}},
                    {"seed", 6},
                    {"expected", {{"fixed_points", json::array()}, {"complete", true}}}});
    docs.push_back({{"schema_version", kSchemaVersion},
                    {"name", "P7"},
                    {"description", "coupled F(x,y) = (sin x + sin y)/4 on R"},
                    {"space", line},
                    {"operator", {{"kind", "nonlinear"}, {"fn", "sin"}, {"coeffs", {0.25, 0.25}}, {"offset", 0.0}}},
                    {"lambda", {{"builtin", "coupled"}}},
                    {"start", {1.0, -2.0}},
                    {"box", {-10.0, 10.0}},
                    {"seed", 7},
                    {"expected", {{"fixed_points", {{0.0, 0.0}}}, {"complete", true}}}});
    return docs;
}

}  // namespace

const std::string& problem_name(const Problem& p) {
    return std::visit([](const auto& q) -> const std::string& { return q.name; }, p);
}

const std::vector<nlohmann::json>& builtin_problem_documents() {
    static const std::vector<json> docs = make_catalog();
    return docs;
}

std::vector<Problem> builtin_problems() {
    std::vector<Problem> out;
    for (const auto& d : builtin_problem_documents()) out.push_back(parse_problem(d));
    return out;
}

std::optional<Problem> find_builtin(const std::string& name) {
    for (const auto& d : builtin_problem_documents()) {
        if (d["name"] == name) return parse_problem(d);
    }
    return std::nullopt;
}

Problem parse_problem(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("/", "expected a problem object");
    if (doc.contains("schema_version")) {
        const json& v = doc["schema_version"];
        if (!v.is_number_integer()) throw ParseError("/schema_version", "expected an integer");
        if (v.get<int>() != kSchemaVersion) {
            throw ParseError("/schema_version", "unsupported version " + std::to_string(v.get<int>()));
        }
    }
    const json& space = member(doc, "space", "");
    const std::string kind = string_at(space, "kind", "/space");
    if (kind == "finite") return parse_finite(doc, space);
    return parse_continuous(doc, space, kind);
}

}  // namespace mfp
