#include <catch_amalgamated.hpp>

#include <filesystem>

#include "propkit/error.hpp"
#include "propkit/expr.hpp"
#include "propkit/models.hpp"
#include "propkit/oracle.hpp"
#include "propkit/parser.hpp"
#include "propkit/render.hpp"

using namespace propkit;

namespace {

VarId var(const Csp& csp, std::string_view name) { return *csp.find(name); }

std::int64_t coeff_of(const Csp& csp, const LinearForm& f, std::string_view name) {
    return f.coeff(var(csp, name));
}

}  // namespace

TEST_CASE("domain basics", "[model]") {
    auto d = Domain::interval(2, 6);
    CHECK(d.size() == 5);
    CHECK(d.remove(2) == Domain::interval(3, 6));
    CHECK(d.remove(2).is_interval());
    CHECK(d.remove(4).is_set());
    CHECK(d.remove(4) == Domain::set({2, 3, 5, 6}));
    CHECK(Domain::interval(2, 4) == Domain::set({2, 3, 4}));
    CHECK(Domain::interval(5, 4) == Domain::set({}));
    CHECK(Domain::set({0, 1, 3}).decrement_positive() == Domain::set({0, 2}));
    CHECK(Domain::interval(0, 9).intersect(Domain::set({-1, 3, 12})) == Domain::singleton(3));
    CHECK(Domain::interval(0, 3).disjoint(Domain::interval(4, 7)));
    CHECK(parse_domain("{3,1,1}") == Domain::set({1, 3}));
    CHECK(parse_domain("[1/2,3]").as_real().lo == Rational(1, 2));
}

TEST_CASE("normalization of linear constraints", "[model]") {
    Csp csp = parse_model("var x in 0..9; var y in 1..8;");
    auto c = parse_constraint(csp, "3*x - 5*y = 4");
    REQUIRE(c.kind() == ConstraintKind::LinEq);
    const auto& f = c.as<LinEq>().form;
    CHECK(coeff_of(csp, f, "x") == 3);
    CHECK(coeff_of(csp, f, "y") == -5);
    CHECK(f.bound == 4);

    CHECK(parse_constraint(csp, "x = x").is_true());
    CHECK(parse_constraint(csp, "x + 1 = x").is_false());
    CHECK(parse_constraint(csp, "x < y").as<LinLeq>().form.bound == -1);
    CHECK(parse_constraint(csp, "x != 3").kind() == ConstraintKind::VarDiseqConst);
    CHECK(parse_constraint(csp, "x != y").kind() == ConstraintKind::VarDiseqVar);
    CHECK(parse_constraint(csp, "x + 1 != y").kind() == ConstraintKind::GenDiseq);
    CHECK_THROWS_AS(parse_constraint(csp, "x * y = 1"), Error);
}

TEST_CASE("the puzzle equation normalizes to the expected coefficients", "[model]") {
    Csp csp = load_model(PROPKIT_MODELS_DIR "/sendmory.csp");
    const LinEq* eq = nullptr;
    std::size_t diseqs = 0;
    for (const auto& c : csp.constraints()) {
        if (auto* e = c.get_if<LinEq>()) eq = e;
        if (c.kind() == ConstraintKind::VarDiseqVar) ++diseqs;
    }
    REQUIRE(eq != nullptr);
    CHECK(diseqs == 28);
    CHECK(csp.num_vars() == 8);
    // Either sign is acceptable as long as it is consistent.
    std::int64_t s = coeff_of(csp, eq->form, "M") > 0 ? 1 : -1;
    CHECK(s * coeff_of(csp, eq->form, "M") == 9000);
    CHECK(s * coeff_of(csp, eq->form, "O") == 900);
    CHECK(s * coeff_of(csp, eq->form, "N") == 90);
    CHECK(s * coeff_of(csp, eq->form, "Y") == 1);
    CHECK(s * coeff_of(csp, eq->form, "E") == -91);
    CHECK(s * coeff_of(csp, eq->form, "D") == -1);
    CHECK(s * coeff_of(csp, eq->form, "S") == -1000);
    CHECK(s * coeff_of(csp, eq->form, "R") == -10);
    CHECK(eq->form.bound == 0);
}

TEST_CASE("restrict and brute force", "[model]") {
    Csp lt = parse_model("var x in 0..10; var y in 5..10; constraint x < y;");
    auto rel = restrict(*lt.constraints().begin(), lt.domains());
    std::size_t expected = 0;
    for (int a = 0; a <= 10; ++a)
        for (int b = 5; b <= 10; ++b) expected += a < b;
    CHECK(rel.tuples.size() == expected);

    Csp lin1 = parse_model("var x in 0..9; var y in 1..8; constraint 3*x - 5*y = 4;");
    CHECK(solutions_bruteforce(lin1) == std::set<Assignment>{{3, 1}, {8, 4}});
    CHECK(restrict(*lin1.constraints().begin(), lin1.domains()).tuples == std::set<Assignment>{{3, 1}, {8, 4}});

    Csp empty = parse_model("var x in 1..0; var y in 0..3; constraint x < y;");
    CHECK(restrict(*empty.constraints().begin(), empty.domains()).tuples.empty());
    CHECK(solutions_bruteforce(empty).empty());

    Csp two = parse_model("var x in 0..10; var y in 0..10; constraint x + y = 10; constraint x - y = 0;");
    CHECK(solutions_bruteforce(two) == std::set<Assignment>{{5, 5}});
    CHECK(solutions_backtracking(two) == solutions_bruteforce(two));

    Csp big = parse_model("var a in 0..999; var b in 0..999; var c in 0..999; constraint a < b;");
    CHECK_THROWS_AS(solutions_bruteforce(big, 1000), OracleTooLarge);
}

TEST_CASE("variants ignore solved constraints", "[model]") {
    Csp a = parse_model("var x in 1..1; var y in 0..0; var z in 0..0; constraint z = y;");
    Csp b = parse_model("var x in 1..1; var y in 0..0; var z in 0..0; constraint x + y - z <= 1;");
    CHECK(is_variant(a, b));
    CHECK(is_variant(a, a));
    Csp c = parse_model("var x in 1..1; var y in 0..1; var z in 0..1; constraint z = y;");
    Csp d = parse_model("var x in 1..1; var y in 0..1; var z in 0..1; constraint x + y - z <= 1;");
    CHECK_FALSE(is_variant(c, d));
}

TEST_CASE("rendering round-trips through the parser", "[model]") {
    for (const auto& name : example_names()) {
        std::string text = gen_example(name, name == "latin" ? 3 : 0);
        Csp csp = parse_model(text);
        CHECK(parse_model(render_model(csp)) == csp);
    }
}

TEST_CASE("bundled model files match the generator", "[model]") {
    namespace fs = std::filesystem;
    std::size_t checked = 0;
    for (const auto& entry : fs::directory_iterator(PROPKIT_MODELS_DIR)) {
        if (entry.path().extension() != ".csp") continue;
        std::string stem = entry.path().stem().string();
        INFO(stem);
        CHECK(load_model(entry.path().string()) == parse_model(gen_example(stem)));
        ++checked;
    }
    CHECK(checked >= 7);
}

TEST_CASE("parser rejects malformed models", "[model]") {
    CHECK_THROWS_AS(parse_model("var x in 0..9; var x in 0..3;"), ParseError);
    CHECK_THROWS_AS(parse_model("var x in 0..9; constraint x < y;"), ParseError);
    CHECK_THROWS_AS(parse_model("var _t0 in 0..9;"), ParseError);
    CHECK_THROWS_AS(parse_model("var x in 0..9"), ParseError);
}
