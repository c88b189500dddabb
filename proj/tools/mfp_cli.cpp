// mfp: command-line front end for the multiple fixed point toolkit.

#include "mfp/classify.hpp"
#include "mfp/contraction.hpp"
#include "mfp/errors.hpp"
#include "mfp/io.hpp"
#include "mfp/lambda.hpp"
#include "mfp/oracle.hpp"
#include "mfp/picard.hpp"
#include "mfp/problems.hpp"
#include "mfp/product.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace mfp;

struct Options {
    std::string problem;
    std::string file;
    std::string builtin;
    std::string format = "json";
    std::string trace_out;
    std::string mode = "sup";
    std::string box;
    std::string kind = "abs";
    std::vector<double> points;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> window;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> count;
    std::size_t N = 0;
    std::size_t m = 2;
    std::size_t n = 3;
    bool random = false;
};

void emit(const Options& o, const json& j) {
    if (o.format == "text") {
        std::cout << render_text(j);
    } else {
        std::cout << j.dump(2) << '\n';
    }
}

std::optional<double> env_tolerance() {
    const char* v = std::getenv("MFP_DEFAULT_TOL");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(t > 0.0)) throw ArgumentError("MFP_DEFAULT_TOL must be a positive number");
    return t;
}

// Precedence: flag, then the problem's solver block, then MFP_DEFAULT_TOL, then the library default.
SolverConfig effective_config(const Options& o, SolverConfig from_problem, const json& source) {
    const bool problem_sets_tol = source.contains("solver") && source["solver"].contains("tol");
    if (!problem_sets_tol) {
        if (auto t = env_tolerance()) from_problem.tol = *t;
    }
    if (o.tol) from_problem.tol = *o.tol;
    if (o.max_iter) from_problem.max_iter = *o.max_iter;
    if (o.window) from_problem.window = *o.window;
    from_problem.validate();
    return from_problem;
}

Problem load_problem(const Options& o) {
    if (!o.problem.empty() && !o.file.empty()) throw ArgumentError("give either --problem or --file");
    if (!o.problem.empty()) {
        auto p = find_builtin(o.problem);
        if (!p) throw ArgumentError("unknown builtin problem '" + o.problem + "' (see `mfp list`)");
        return *p;
    }
    if (!o.file.empty()) return parse_problem(read_json_file(o.file));
    throw ArgumentError("need --problem or --file");
}

std::pair<double, double> parse_box(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ArgumentError("--box expects lo,hi");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ArgumentError("--box expects lo,hi");
    }
}

FiniteDistanceSpace points_space(const Options& o) {
    if (o.kind == "abs") {
        return FiniteDistanceSpace::from_points(o.points, [](double x, double y) { return std::abs(x - y); });
    }
    if (o.kind == "squared") {
        return FiniteDistanceSpace::from_points(o.points, [](double x, double y) { return (x - y) * (x - y); });
    }
    throw ArgumentError("--kind must be abs or squared");
}

// A finite space from --points, a matrix/instance/problem file, or a finite builtin problem.
FiniteDistanceSpace load_finite_space(const Options& o) {
    if (!o.points.empty()) return points_space(o);
    if (!o.file.empty()) {
        const json doc = read_json_file(o.file);
        if (doc.contains("matrix")) return parse_finite_space(doc);
        if (doc.contains("F_table")) return parse_instance(doc).space;
        const auto p = parse_problem(doc);
        if (const auto* f = std::get_if<FiniteProblem>(&p)) return f->instance.space;
        throw ArgumentError("problem '" + problem_name(p) + "' has no finite space");
    }
    if (!o.problem.empty()) {
        const auto p = load_problem(o);
        if (const auto* f = std::get_if<FiniteProblem>(&p)) return f->instance.space;
        throw ArgumentError("problem '" + problem_name(p) + "' has no finite space");
    }
    throw ArgumentError("need --points, --file or a finite --problem");
}

template <class P>
json solve_json(const Options& o, const std::string& name, const MultiOperator<P>& op, const LambdaFamily& lambda,
                const Tuple<P>& start, const DistanceSpace<P>& space, const SolverConfig& config,
                const std::vector<Tuple<P>>& expected) {
    const auto report = solve(op, lambda, start, space, config);
    if (!o.trace_out.empty()) {
        std::ofstream out(o.trace_out);
        if (!out) throw ArgumentError("cannot write '" + o.trace_out + "'");
        write_trace_jsonl(out, report.trace);
    }
    json j;
    j["command"] = "solve";
    j["problem"] = name;
    j["config"] = to_json(config);
    j["report"] = to_json(report);
    j["accumulation"] = to_json(theorem_42_hypotheses(report.trace, space, config));
    json checks = json::array();
    for (const auto& a : expected) {
        const auto c = is_multiple_fixed_point<P>(op, lambda, a, space, config.tol);
        checks.push_back({{"point", tuple_to_json(a)}, {"is_fixed", c.is_fixed}, {"residual", number_to_json(c.residual)}});
    }
    j["expected"] = checks;
    return j;
}

int run_solve(const Options& o) {
    const auto problem = load_problem(o);
    if (const auto* c = std::get_if<ContinuousProblem>(&problem)) {
        const auto config = effective_config(o, c->solver, c->source);
        emit(o, solve_json(o, c->name, c->op, c->lambda, c->start, c->space, config, c->expected));
    } else {
        const auto& f = std::get<FiniteProblem>(problem);
        const auto config = effective_config(o, f.solver, f.source);
        const auto space = classified_space(f.instance.space, classify_finite(f.instance.space));
        emit(o, solve_json(o, f.name, f.instance.op(), f.instance.lambda, f.start, space, config, f.expected));
    }
    return 0;
}

int run_oracle(const Options& o) {
    std::optional<FiniteInstance> inst;
    SolverConfig base;
    json source = json::object();
    std::optional<std::uint64_t> seed;
    if (o.random) {
        RandomInstanceOptions r;
        r.space.n = o.n;
        r.m = o.m;
        seed = o.seed.value_or(0);
        inst = random_instance(r, *seed);
    } else if (!o.file.empty() && o.problem.empty()) {
        const json doc = read_json_file(o.file);
        if (doc.contains("F_table")) {
            inst = parse_instance(doc);
        } else {
            const auto p = parse_problem(doc);
            const auto* f = std::get_if<FiniteProblem>(&p);
            if (!f) throw ArgumentError("oracle needs a finite problem");
            inst = f->instance;
            base = f->solver;
            source = f->source;
        }
    } else {
        const auto p = load_problem(o);
        const auto* f = std::get_if<FiniteProblem>(&p);
        if (!f) throw ArgumentError("oracle needs a finite problem");
        inst = f->instance;
        base = f->solver;
        source = f->source;
    }
    const auto config = effective_config(o, base, source);
    auto report = cross_validate(*inst, config);
    report.seed = seed;
    json j;
    j["command"] = "oracle";
    j["instance"] = to_json(*inst);
    j["report"] = to_json(report);
    emit(o, j);
    return 0;
}

int run_classify(const Options& o) {
    const auto space = load_finite_space(o);
    json j;
    j["command"] = "classify";
    j["space"] = to_json(space);
    j["report"] = to_json(classify_finite(space));
    emit(o, j);
    return 0;
}

int run_closure(const Options& o) {
    const auto space = load_finite_space(o);
    json j;
    j["command"] = "closure";
    j["report"] = to_json(check_closure(space, o.m));
    emit(o, j);
    return 0;
}

ProductMode parse_mode(const std::string& s) {
    if (s == "sup") return ProductMode::Sup;
    if (s == "sum") return ProductMode::Sum;
    throw ArgumentError("--mode must be sup or sum");
}

int run_estimate(const Options& o) {
    const auto problem = load_problem(o);
    const ProductMode mode = parse_mode(o.mode);
    json j;
    j["command"] = "estimate-k";
    j["problem"] = problem_name(problem);
    if (const auto* c = std::get_if<ContinuousProblem>(&problem)) {
        auto [lo, hi] = std::pair{c->box_lo, c->box_hi};
        if (!o.box.empty()) std::tie(lo, hi) = parse_box(o.box);
        const std::size_t count = o.count.value_or(c->samples);
        const std::uint64_t seed = o.seed.value_or(c->seed);
        const auto source = box_pairs<RealVec>(c->op.arity, c->dim, lo, hi, count, seed);
        const auto report = estimate_k(c->op, c->space, source, mode);
        j["box"] = {lo, hi};
        j["seed"] = seed;
        j["report"] = to_json(report);
        j["s_distance"] = to_json(s_distance_hypotheses(c->space, c->lambda, report));
    } else {
        const auto& f = std::get<FiniteProblem>(problem);
        const auto space = f.instance.distance_space();
        const auto report = estimate_k(f.instance.op(), space, exhaustive_pairs(f.instance.n(), f.instance.m()), mode);
        j["report"] = to_json(report);
        j["exact_constants"] = to_json(exact_contraction_constants(f.instance));
    }
    emit(o, j);
    return 0;
}

const LambdaFamily& lambda_of(const ContinuousProblem& p) { return p.lambda; }
const LambdaFamily& lambda_of(const FiniteProblem& p) { return p.instance.lambda; }

int run_conditions(const Options& o) {
    std::optional<LambdaFamily> lambda;
    if (!o.builtin.empty()) {
        json family = {{"builtin", o.builtin}};
        if (o.N > 0) family["N"] = o.N;
        if (o.builtin == "identity" && o.N == 0) family["m"] = o.m;
        lambda = parse_lambda(family, "--builtin");
    } else if (!o.file.empty()) {
        const json doc = read_json_file(o.file);
        if (doc.contains("table") || doc.contains("builtin")) {
            lambda = parse_lambda(doc);
        } else if (doc.contains("lambda") && !doc.contains("space")) {
            lambda = parse_lambda(doc["lambda"], "/lambda");
        } else if (doc.contains("F_table")) {
            lambda = parse_instance(doc).lambda;
        } else {
            const auto p = parse_problem(doc);
            lambda = std::visit([](const auto& q) { return lambda_of(q); }, p);
        }
    } else {
        const auto p = load_problem(o);
        lambda = std::visit([](const auto& q) { return lambda_of(q); }, p);
    }
    json j;
    j["command"] = "conditions";
    j["family"] = to_json(*lambda);
    j["report"] = to_json(family_conditions(*lambda));
    emit(o, j);
    return 0;
}

int run_list(const Options& o) {
    json j = json::array();
    for (const auto& d : builtin_problem_documents()) {
        j.push_back({{"name", d["name"]}, {"description", d["description"]}});
    }
    emit(o, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple fixed points of lambda-lifted operators on distance spaces"};
    app.require_subcommand(1);
    Options o;

    const auto add_format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };
    const auto add_solver = [&](CLI::App* c) {
        c->add_option("--tol", o.tol, "Settling tolerance (overrides MFP_DEFAULT_TOL)");
        c->add_option("--max-iter", o.max_iter, "Iteration cap");
        c->add_option("--window", o.window, "Consecutive settled steps required");
    };
    const auto add_problem = [&](CLI::App* c) {
        c->add_option("--problem", o.problem, "Builtin problem name");
        c->add_option("--file", o.file, "Problem file (JSON)");
    };
    const auto add_space = [&](CLI::App* c) {
        c->add_option("--points", o.points, "Points on the line forming a finite space")->delimiter(',');
        c->add_option("--kind", o.kind, "Distance on --points: abs or squared");
    };

    auto* solve_cmd = app.add_subcommand("solve", "Picard iteration with a fixed point certificate");
    add_problem(solve_cmd);
    add_solver(solve_cmd);
    add_format(solve_cmd);
    solve_cmd->add_option("--trace-out", o.trace_out, "Write the orbit as JSON lines");
    solve_cmd->add_option("--seed", o.seed, "Seed (recorded only)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Cross-validate the solver against exhaustive enumeration");
    add_problem(oracle_cmd);
    add_solver(oracle_cmd);
    add_format(oracle_cmd);
    oracle_cmd->add_flag("--random", o.random, "Use a seeded random instance");
    oracle_cmd->add_option("--seed", o.seed, "Random instance seed");
    oracle_cmd->add_option("--n", o.n, "Random instance carrier size");
    oracle_cmd->add_option("--m", o.m, "Random instance arity");

    auto* classify_cmd = app.add_subcommand("classify", "Decide every distance class on a finite table");
    add_problem(classify_cmd);
    add_space(classify_cmd);
    add_format(classify_cmd);

    auto* estimate_cmd = app.add_subcommand("estimate-k", "Estimate the contraction constant of F");
    add_problem(estimate_cmd);
    add_format(estimate_cmd);
    estimate_cmd->add_option("--mode", o.mode, "sup or sum")->check(CLI::IsMember({"sup", "sum"}));
    estimate_cmd->add_option("--box", o.box, "Sampling box lo,hi");
    estimate_cmd->add_option("--count", o.count, "Sampled pairs");
    estimate_cmd->add_option("--seed", o.seed, "Sampling seed");

    auto* closure_cmd = app.add_subcommand("closure", "Compare class membership of a base and its products");
    add_problem(closure_cmd);
    add_space(closure_cmd);
    add_format(closure_cmd);
    closure_cmd->add_option("--m", o.m, "Product arity");

    auto* conditions_cmd = app.add_subcommand("conditions", "Surjectivity and balance of a lambda family");
    add_problem(conditions_cmd);
    add_format(conditions_cmd);
    conditions_cmd->add_option("--builtin", o.builtin, "coupled, tripled, cyclic or identity");
    conditions_cmd->add_option("--N", o.N, "Size for the cyclic and identity families");

    auto* list_cmd = app.add_subcommand("list", "List builtin problems");
    add_format(list_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(o);
        if (oracle_cmd->parsed()) return run_oracle(o);
        if (classify_cmd->parsed()) return run_classify(o);
        if (estimate_cmd->parsed()) return run_estimate(o);
        if (closure_cmd->parsed()) return run_closure(o);
        if (conditions_cmd->parsed()) return run_conditions(o);
        if (list_cmd->parsed()) return run_list(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
