#include "mfp/io.hpp"
#include "mfp/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace mfp;

namespace {

std::string parse_error_where(const json& doc) {
    try {
        parse_problem(doc);
    } catch (const ParseError& e) {
        return e.where();
    }
    return "<no error>";
}

json p1_document() {
    for (const auto& d : builtin_problem_documents()) {
        if (d.at("name") == "P1") return d;
    }
    return {};
}

}  // namespace

TEST(Catalog, NamesAndLookup) {
    const auto all = builtin_problems();
    ASSERT_EQ(all.size(), 7u);
    for (std::size_t k = 0; k < all.size(); ++k) {
        EXPECT_EQ(problem_name(all[k]), "P" + std::to_string(k + 1));
    }
    EXPECT_TRUE(find_builtin("P4"));
    EXPECT_FALSE(find_builtin("P0"));
}

TEST(Catalog, ExpectedPointsAreFixed) {
    for (const auto& p : builtin_problems()) {
        if (const auto* c = std::get_if<ContinuousProblem>(&p)) {
            for (const auto& a : c->expected) {
                const auto check = is_multiple_fixed_point<RealVec>(c->op, c->lambda, a, c->space, 1e-10);
                EXPECT_TRUE(check.is_fixed) << c->name;
            }
        } else {
            const auto& f = std::get<FiniteProblem>(p);
            const auto all = enumerate_fixed_points(f.instance);
            if (f.expected_complete) EXPECT_EQ(all, f.expected) << f.name;
        }
    }
}

TEST(Catalog, DocumentsRoundTripThroughParser) {
    for (const auto& doc : builtin_problem_documents()) {
        const auto p = parse_problem(doc);
        EXPECT_EQ(problem_name(p), doc.at("name").get<std::string>());
    }
}

TEST(ProblemParse, ErrorsCarryPointer) {
    auto doc = p1_document();
    doc["schema_version"] = 2;
    EXPECT_EQ(parse_error_where(doc), "/schema_version");

    doc = p1_document();
    doc["start"] = json::array({0.0});
    EXPECT_EQ(parse_error_where(doc), "/start");

    doc = p1_document();
    doc["solver"]["tol"] = "small";
    EXPECT_EQ(parse_error_where(doc), "/solver/tol");

    doc = p1_document();
    doc["solver"]["bogus"] = 1;
    EXPECT_EQ(parse_error_where(doc), "/solver/bogus");

    doc = p1_document();
    doc["seed"] = -1;
    EXPECT_EQ(parse_error_where(doc), "/seed");
}

TEST(ProblemParse, FiniteMatrixSpace) {
    const json doc = {
        {"schema_version", 1},
        {"name", "tiny"},
        {"space", {{"kind", "finite"}, {"n", 2}, {"matrix", {{0, 1}, {1, 0}}}}},
        {"operator", {{"kind", "table"}, {"values", {1, 1, 1, 1}}}},
        {"lambda", "coupled"},
        {"start", {0, 0}},
    };
    const auto p = parse_problem(doc);
    const auto& f = std::get<FiniteProblem>(p);
    EXPECT_EQ(enumerate_fixed_points(f.instance), (FixedPointSet{{1, 1}}));
}

TEST(ProblemParse, InstanceErrors) {
    EXPECT_THROW(parse_instance(json::parse(R"({"space":{"n":2,"matrix":[[0,1],[1,0]]},"F_table":[0,1],"lambda":"coupled"})")),
                 ParseError);
    EXPECT_THROW(parse_finite_space(json::parse(R"({"n":2,"matrix":[[0,1]]})")), ParseError);
    EXPECT_THROW(parse_lambda(json::parse(R"({"m":2,"table":[[1,3],[2,1]]})")), ParseError);
    EXPECT_THROW(parse_lambda(json("quadrupled")), ParseError);
}

TEST(Json, NonFiniteNumbers) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(number_to_json(inf), "inf");
    EXPECT_EQ(number_to_json(-inf), "-inf");
    EXPECT_EQ(number_from_json(json("inf"), ""), inf);
    EXPECT_TRUE(std::isnan(number_from_json(json("nan"), "")));
    EXPECT_EQ(number_from_json(json(0.25), ""), 0.25);
    EXPECT_THROW(number_from_json(json("big"), "/x"), ParseError);
}

TEST(Json, AxiomReportRoundTrip) {
    const auto squared = FiniteDistanceSpace::from_points(std::vector<double>{0, 1, 3},
                                                          [](double x, double y) { return (x - y) * (x - y); });
    const auto broken = FiniteDistanceSpace::from_rows({{0, 0, 1}, {1, 0, 0}, {1, 1, 0}});
    for (const auto& s : {squared, broken}) {
        const auto r = classify_finite(s);
        EXPECT_EQ(axiom_report_from_json(to_json(r)), r);
    }
}

TEST(Json, FamilyReportRoundTrip) {
    for (const auto& f : {coupled_family(), tripled_family(), cyclic_family(5)}) {
        const auto r = family_conditions(f);
        EXPECT_EQ(family_report_from_json(to_json(r)), r);
    }
    EXPECT_EQ(parse_lambda(to_json(tripled_family())), tripled_family());
}

TEST(Json, ClosureReportRoundTrip) {
    const auto base = FiniteDistanceSpace::from_rows({{0, 1, 2}, {3, 0, 1}, {3, 4, 0}});
    const auto r = check_closure(base, 2);
    EXPECT_EQ(closure_report_from_json(to_json(r)), r);
}

TEST(Json, ContractionReportRoundTrip) {
    const MultiOperator<double> f{2, [](std::span<const double> x) { return x[0] / 4 + x[1] / 4 + 1; }, "f"};
    const auto r = estimate_k_sup(f, abs_line(), box_pairs<double>(2, 1, -10, 10, 200, 3));
    const auto back = contraction_report_from_json<double>(to_json(r));
    EXPECT_EQ(back.k_estimate, r.k_estimate);
    EXPECT_EQ(back.witness, r.witness);
    EXPECT_EQ(back.sample_size, r.sample_size);
    EXPECT_EQ(to_json(back), to_json(r));
}

TEST(Json, InstanceRoundTrip) {
    RandomInstanceOptions o;
    o.space.n = 3;
    o.m = 2;
    const auto inst = random_instance(o, 17);
    const auto back = parse_instance(to_json(inst));
    EXPECT_EQ(back.space, inst.space);
    EXPECT_EQ(back.table, inst.table);
    EXPECT_EQ(back.lambda, inst.lambda);
}

TEST(Json, SolverConfigRoundTrip) {
    SolverConfig c;
    c.tol = 1e-6;
    c.window = 3;
    c.max_iter = 77;
    const auto back = parse_solver(to_json(c), "");
    EXPECT_EQ(back.tol, c.tol);
    EXPECT_EQ(back.window, c.window);
    EXPECT_EQ(back.max_iter, c.max_iter);
}

TEST(Json, DumpsAreDeterministic) {
    const auto p = std::get<ContinuousProblem>(*find_builtin("P7"));
    const auto a = to_json(solve(p.op, p.lambda, p.start, p.space, p.solver)).dump();
    const auto b = to_json(solve(p.op, p.lambda, p.start, p.space, p.solver)).dump();
    EXPECT_EQ(a, b);
    RandomInstanceOptions o;
    o.space.n = 3;
    const auto x = to_json(cross_validate(random_instance(o, 4))).dump();
    const auto y = to_json(cross_validate(random_instance(o, 4))).dump();
    EXPECT_EQ(x, y);
}

TEST(Json, TraceLines) {
    const MultiOperator<double> f{1, [](std::span<const double> x) { return x[0] / 2; }, "half"};
    SolverConfig c;
    c.max_iter = 5;
    c.window = 2;
    const auto t = picard_orbit(f, identity_family(1), {8.0}, abs_line(), c);
    std::ostringstream os;
    write_trace_jsonl(os, t);
    std::istringstream is(os.str());
    std::string line;
    std::size_t k = 0;
    while (std::getline(is, line)) {
        const auto rec = json::parse(line);
        EXPECT_EQ(rec.at("iteration").get<std::size_t>(), k);
        EXPECT_EQ(rec.at("components")[0].get<double>(), 8.0 / std::pow(2.0, static_cast<double>(k)));
        if (k > 0) EXPECT_EQ(rec.at("step_sup").get<double>(), 8.0 / std::pow(2.0, static_cast<double>(k)));
        ++k;
    }
    EXPECT_EQ(k, 6u);
}

TEST(Json, RenderTextIsIndented) {
    const json j = {{"a", 1}, {"b", {{"c", true}}}};
    EXPECT_EQ(render_text(j), "a: 1\nb:\n  c: true\n");
}
