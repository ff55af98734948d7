#include <catch_amalgamated.hpp>

#include <random>

#include "../support/random_csp.hpp"
#include "propkit/parser.hpp"
#include "propkit/render.hpp"
#include "propkit/rules.hpp"
#include "propkit/scheduler.hpp"

using namespace propkit;

namespace {

const Constraint& only(const Csp& csp) {
    REQUIRE(csp.constraints().size() == 1);
    return *csp.constraints().begin();
}

std::optional<Csp> fire(const Csp& csp, RuleId id) {
    auto d = rule(id).apply(csp, Target{only(csp), std::nullopt});
    if (!d) return std::nullopt;
    return apply_delta(csp, *d);
}

Domain dom(const Csp& csp, std::string_view name) { return csp.domain(*csp.find(name)); }

}  // namespace

TEST_CASE("linear inequality bounds", "[rules]") {
    Csp a = parse_model("var x in 0..9; var y in 0..9; constraint x + y <= 5;");
    auto b = lin_ineq_bounds(only(a).as<LinLeq>().form, a.domains());
    CHECK(b == std::vector<Bounds>{{0, 5}, {0, 5}});

    Csp u = parse_model("var x in 0..9; constraint x <= 3;");
    CHECK(lin_ineq_bounds(only(u).as<LinLeq>().form, u.domains()) == std::vector<Bounds>{{0, 3}});

    Csp c = parse_model("var x in 0..10; var y in 0..3; constraint 2*x - 3*y <= 0;");
    CHECK(lin_ineq_bounds(only(c).as<LinLeq>().form, c.domains()) == std::vector<Bounds>{{0, 4}, {0, 3}});
    auto after = fire(c, RuleId::LIN_INEQ_1);
    REQUIRE(after);
    CHECK(dom(*after, "x") == Domain::interval(0, 4));
}

TEST_CASE("linear equality narrows 3x - 5y = 4 twice, then stabilizes", "[rules]") {
    Csp csp = parse_model("var x in 0..9; var y in 1..8; constraint 3*x - 5*y = 4;");
    auto once = fire(csp, RuleId::LIN_EQ);
    REQUIRE(once);
    CHECK(dom(*once, "x") == Domain::interval(3, 9));
    CHECK(dom(*once, "y") == Domain::interval(1, 4));
    auto twice = fire(*once, RuleId::LIN_EQ);
    REQUIRE(twice);
    CHECK(dom(*twice, "x") == Domain::interval(3, 8));
    CHECK(dom(*twice, "y") == Domain::interval(1, 4));
    CHECK(is_closed_under(*twice, rule(RuleId::LIN_EQ)));
}

TEST_CASE("unary equalities", "[rules]") {
    Csp six = parse_model("var x in 0..10; constraint 3*x = 6;");
    auto r = propagate(six, all_rules());
    CHECK(r.status == FixpointStatus::Closed);
    CHECK(dom(r.final, "x") == Domain::singleton(2));

    Csp seven = parse_model("var x in 0..10; constraint 3*x = 7;");
    CHECK(propagate(seven, all_rules()).status == FixpointStatus::Failed);
}

TEST_CASE("equality rules", "[rules]") {
    Csp a = parse_model("var x in 0..5; var y in 3..9; constraint x = y;");
    auto app = apply_equality(a, only(a));
    REQUIRE(app);
    Csp out = apply_delta(a, app->delta);
    CHECK(dom(out, "x") == Domain::interval(3, 5));
    CHECK(dom(out, "y") == Domain::interval(3, 5));

    Csp b = parse_model("var x in 1..1; var y in 1..1; constraint x = y;");
    auto solved = apply_equality(b, only(b));
    REQUIRE(solved);
    CHECK(apply_delta(b, solved->delta).is_solved());

    Csp c = parse_model("var x in 0..2; var y in 5..7; constraint x = y;");
    auto fails = apply_equality(c, only(c));
    REQUIRE(fails);
    CHECK(apply_delta(c, fails->delta).is_failed());

    Csp raw = parse_model("var x in 0..2;");
    raw.add_constraint(Constraint::raw_eq(LinearForm{{}, 0}));
    auto e2 = apply_equality(raw, only(raw));
    REQUIRE(e2);
    CHECK(e2->rule == RuleId::EQUALITY_2);
}

TEST_CASE("disequality rules", "[rules]") {
    Csp om = parse_model("var O in 0..1; var M in 1..1; constraint O != M;");
    auto app = apply_disequality(om, only(om));
    REQUIRE(app);
    auto settled = settle(om, app->delta);
    REQUIRE(settled);
    Csp out = apply_delta(om, *settled);
    CHECK(dom(out, "O") == Domain::singleton(0));
    CHECK(out.constraints().empty());

    Csp far = parse_model("var x in 2..4; var y in 7..9; constraint x != y;");
    auto gone = apply_disequality(far, only(far));
    REQUIRE(gone);
    CHECK(gone->delta.domain_changes.empty());
    CHECK(gone->delta.removed.size() == 1);

    Csp set = parse_model("var x in {2,5,9}; var y in {5}; constraint x != y;");
    auto cut = apply_disequality(set, only(set));
    REQUIRE(cut);
    CHECK(dom(apply_delta(set, cut->delta), "x") == Domain::set({2, 9}));
}

TEST_CASE("disequality lifting introduces fresh variables", "[rules]") {
    Csp csp = parse_model("var x in 0..2; var y in 0..2; var z in 0..9; constraint x + y != z;");
    auto d = lift_disequality(csp, only(csp));
    REQUIRE(d);
    REQUIRE(d->fresh_vars.size() == 1);
    CHECK(d->fresh_vars[0].name == "_t0");
    CHECK(d->fresh_vars[0].domain == Domain::interval(0, 4));
    Csp out = apply_delta(csp, *d);
    CHECK(out.has_constraint(parse_constraint(out, "_t0 != z")));
    CHECK(out.has_constraint(parse_constraint(out, "_t0 = x + y")));

    Csp both = parse_model("var x in 0..3; var y in 0..3; constraint x + 1 != y + 2;");
    auto d2 = lift_disequality(both, only(both));
    REQUIRE(d2);
    REQUIRE(d2->fresh_vars.size() == 2);
    CHECK(d2->fresh_vars[0].domain == Domain::interval(1, 4));
    CHECK(d2->fresh_vars[1].domain == Domain::interval(2, 5));

    Csp simple = parse_model("var x in 0..3; var y in 0..3; constraint x != y;");
    CHECK_FALSE(lift_disequality(simple, only(simple)));
}

TEST_CASE("substitution and deletion", "[rules]") {
    Csp csp = parse_model("var x in 2..2; var y in 0..9; constraint 2*x + y = 7;");
    auto d = apply_substitution(csp, *csp.find("x"));
    REQUIRE(d);
    Csp out = apply_delta(csp, *d);
    CHECK(out.has_constraint(parse_constraint(out, "y = 3")));

    Csp loose = parse_model("var x in 2..2; var y in 0..9; constraint y <= 4;");
    CHECK_FALSE(apply_substitution(loose, *loose.find("x")));

    Csp t = parse_model("var y in 0..9; constraint y <= 4;");
    CHECK_FALSE(apply_deletion(t));
    t.add_constraint(Constraint::truth());
    auto del = apply_deletion(t);
    REQUIRE(del);
    CHECK(apply_delta(t, *del).constraints().size() == 1);

    Csp only_true = parse_model("var y in 0..9;");
    only_true.add_constraint(Constraint::truth());
    CHECK(apply_delta(only_true, *apply_deletion(only_true)).is_solved());
}

TEST_CASE("exactly rules", "[rules]") {
    Csp a = parse_model("var x in 0..5; var y1 in 0..3; var y2 in 0..3; var z in 0..3; "
                        "constraint exactly(x, [y1, y2], z);");
    auto app = apply_exactly(a, only(a));
    REQUIRE(app);
    CHECK(dom(apply_delta(a, app->delta), "x") == Domain::interval(0, 2));

    Csp b = parse_model("var x in 0..3; var y1 in 0..3; var y2 in {4,5}; var y3 in 0..3; var z in {1,2}; "
                        "constraint exactly(x, [y1, y2, y3], z);");
    auto drop = apply_exactly(b, only(b));
    REQUIRE(drop);
    Csp out = apply_delta(b, drop->delta);
    CHECK(out.has_constraint(parse_constraint(out, "exactly(x, [y1, y3], z)")));

    Csp c = parse_model("var x in {0,1,2}; var y1 in 3..3; var z in 3..3; constraint exactly(x, [y1], z);");
    auto r = propagate(c, all_rules());
    CHECK(r.status == FixpointStatus::Closed);
    CHECK(dom(r.final, "x") == Domain::singleton(1));
    CHECK(r.final.without_solved().constraints().empty());
    CHECK(r.final.num_vars() > c.num_vars());
}

TEST_CASE("atmost becomes exactly over a fresh count", "[rules]") {
    Csp a = parse_model("var x in 0..2; var y1 in 0..3; var y2 in 0..3; var z in 0..3; "
                        "constraint atmost(x, [y1, y2], z);");
    auto d = apply_atmost(a, only(a));
    REQUIRE(d);
    REQUIRE(d->fresh_vars.size() == 1);
    CHECK(d->fresh_vars[0].domain == Domain::interval(0, 2));
    Csp out = apply_delta(a, *d);
    CHECK(out.has_constraint(parse_constraint(out, "exactly(_t0, [y1, y2], z)")));
    CHECK(out.has_constraint(parse_constraint(out, "_t0 <= x")));

    Csp e = parse_model("var x in 0..2; var z in 0..3; constraint atmost(x, [], z);");
    auto r = propagate(e, all_rules());
    CHECK(r.status == FixpointStatus::Closed);
    CHECK(dom(r.final, "x") == Domain::interval(0, 2));

    Csp s = parse_model("var x in 0..2; var y1 in 0..2; var y2 in 0..2; var z in 0..2; "
                        "constraint atmost(x, [y1, y2], z);");
    std::size_t expected = 0;
    for (int x = 0; x <= 2; ++x)
        for (int y1 = 0; y1 <= 2; ++y1)
            for (int y2 = 0; y2 <= 2; ++y2)
                for (int z = 0; z <= 2; ++z) expected += (y1 == z) + (y2 == z) <= x;
    CHECK(solutions_bruteforce(s).size() == expected);
    CHECK(testing::solutions_on(apply_delta(s, *apply_atmost(s, only(s))), 4) == solutions_bruteforce(s));
}

TEST_CASE("rules only shrink domains and preserve solutions", "[rules]") {
    std::mt19937_64 rng(5);
    std::size_t fired = 0;
    for (int i = 0; i < 300; ++i) {
        Csp csp = testing::random_csp(rng);
        auto sols = solutions_bruteforce(csp);
        for (const Rule* r : all_rules()) {
            for (const auto& c : csp.constraints()) {
                for (const auto& t : r->targets(csp, c)) {
                    auto d = r->apply(csp, t);
                    if (!d) continue;
                    ++fired;
                    Csp out = apply_delta(csp, *d);
                    INFO(render_model(csp) << "rule " << to_string(r->id()));
                    for (std::size_t v = 0; v < csp.num_vars(); ++v)
                        CHECK(out.domain(VarId{std::uint32_t(v)}).subset_of(csp.domain(VarId{std::uint32_t(v)})));
                    CHECK(testing::solutions_on(out, csp.num_vars()) == sols);
                }
            }
        }
    }
    CHECK(fired > 100);
}

TEST_CASE("linear bounds are monotone in the input domains", "[rules]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Domain> big, small;
        LinearForm f;
        std::int64_t n = testing::pick(rng, 1, 3);
        for (std::int64_t k = 0; k < n; ++k) {
            std::int64_t lo = testing::pick(rng, -6, 6), hi = lo + testing::pick(rng, 0, 8);
            std::int64_t slo = testing::pick(rng, lo, hi), shi = testing::pick(rng, slo, hi);
            big.push_back(Domain::interval(lo, hi));
            small.push_back(Domain::interval(slo, shi));
            f.terms.push_back(Term{VarId{std::uint32_t(k)}, testing::coeff(rng)});
        }
        f.bound = testing::pick(rng, -15, 15);
        auto wide = lin_eq_bounds(f, big), narrow = lin_eq_bounds(f, small);
        for (std::size_t k = 0; k < wide.size(); ++k) {
            if (narrow[k].lo > narrow[k].hi) continue;
            CHECK(narrow[k].lo >= wide[k].lo);
            CHECK(narrow[k].hi <= wide[k].hi);
        }
    }
}
