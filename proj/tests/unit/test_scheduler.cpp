#include <catch_amalgamated.hpp>

#include <random>

#include "../support/random_csp.hpp"
#include "propkit/error.hpp"
#include "propkit/models.hpp"
#include "propkit/parser.hpp"
#include "propkit/scheduler.hpp"

using namespace propkit;

namespace {

Domain dom(const Csp& csp, std::string_view name) { return csp.domain(*csp.find(name)); }

const Csp lin1 = parse_model("var x in 0..9; var y in 1..8; constraint 3*x - 5*y = 4;");

}  // namespace

TEST_CASE("propagating the puzzle reaches the expected fixpoint", "[scheduler]") {
    Csp csp = load_model(PROPKIT_MODELS_DIR "/sendmory.csp");
    auto r = propagate(csp, all_rules());
    CHECK(r.status == FixpointStatus::Closed);
    CHECK(dom(r.final, "S") == Domain::singleton(9));
    CHECK(dom(r.final, "E") == Domain::interval(4, 7));
    CHECK(dom(r.final, "N") == Domain::interval(5, 8));
    CHECK(dom(r.final, "D") == Domain::interval(2, 8));
    CHECK(dom(r.final, "M") == Domain::singleton(1));
    CHECK(dom(r.final, "O") == Domain::singleton(0));
    CHECK(dom(r.final, "R") == Domain::interval(2, 8));
    CHECK(dom(r.final, "Y") == Domain::interval(2, 8));
    for (const Rule* rule : all_rules()) CHECK(is_closed_under(r.final, *rule));
}

TEST_CASE("a closed CSP takes zero steps", "[scheduler]") {
    Csp csp = parse_model("var x in 0..10; var y in 0..10; constraint x + y = 10; constraint x - y = 0;");
    const Rule* lin_eq[] = {&rule(RuleId::LIN_EQ)};
    auto r = propagate(csp, lin_eq);
    CHECK(r.status == FixpointStatus::Closed);
    CHECK(r.steps.empty());
    CHECK(r.final == csp);
}

TEST_CASE("failed input returns immediately", "[scheduler]") {
    Csp csp = parse_model("var x in 0..3; constraint 0 = 1;");
    auto r = propagate(csp, all_rules());
    CHECK(r.status == FixpointStatus::Failed);
    CHECK(r.steps.empty());
}

TEST_CASE("budget exhaustion is reported", "[scheduler]") {
    Csp csp = load_model(PROPKIT_MODELS_DIR "/sendmory.csp");
    SchedulerConfig cfg;
    cfg.budget = 3;
    auto r = propagate(csp, all_rules(), cfg);
    CHECK(r.status == FixpointStatus::BudgetExhausted);
    CHECK(r.steps.size() == 3);
}

TEST_CASE("closedness under a rule", "[scheduler]") {
    const Rule& lin_eq = rule(RuleId::LIN_EQ);
    CHECK_FALSE(is_closed_under(lin1, lin_eq));
    Csp fix = parse_model("var x in 3..8; var y in 1..4; constraint 3*x - 5*y = 4;");
    CHECK(is_closed_under(fix, lin_eq));
    Csp solved = parse_model("var x in 3..8;");
    for (const Rule* r : all_rules()) CHECK(is_closed_under(solved, *r));
}

TEST_CASE("replay", "[scheduler]") {
    auto empty = replay(lin1, {});
    CHECK(empty.final == lin1);
    CHECK(empty.steps.empty());

    Constraint c = *lin1.constraints().begin();
    std::vector<ScriptStep> twice = {{RuleId::LIN_EQ, {c, std::nullopt}}, {RuleId::LIN_EQ, {c, std::nullopt}}};
    auto r = replay(lin1, twice);
    CHECK(r.steps.size() == 2);
    CHECK(dom(r.final, "x") == Domain::interval(3, 8));
    CHECK(dom(r.final, "y") == Domain::interval(1, 4));

    // The third application is irrelevant and is skipped.
    twice.push_back(twice.front());
    CHECK(replay(lin1, twice).steps.size() == 2);

    Constraint absent = parse_constraint(lin1, "x <= 2");
    std::vector<ScriptStep> bad = {{RuleId::LIN_EQ, {absent, std::nullopt}}};
    CHECK_THROWS_AS(replay(lin1, bad), ReplayError);

    std::vector<ScriptStep> wrong_rule = {{RuleId::EQUALITY_1, {c, std::nullopt}}};
    CHECK_THROWS_AS(replay(lin1, wrong_rule), ReplayError);
}

TEST_CASE("the puzzle script replays to the fixpoint", "[scheduler]") {
    Csp csp = load_model(PROPKIT_MODELS_DIR "/sendmory.csp");
    auto r = replay(csp, parse_script(csp, sendmory_script_text()));
    auto full = propagate(csp, all_rules());
    for (std::uint32_t v = 0; v < csp.num_vars(); ++v) CHECK(r.final.domain(VarId{v}) == full.final.domain(VarId{v}));
    CHECK(r.steps.size() >= 20);
}

TEST_CASE("shuffled schedules agree on the fixpoint", "[scheduler]") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Csp csp = testing::random_csp(rng);
        auto base = propagate(csp, all_rules());
        SchedulerConfig cfg;
        cfg.shuffle_seed = static_cast<std::uint64_t>(i);
        auto shuffled = propagate(csp, all_rules(), cfg);
        REQUIRE(base.status != FixpointStatus::BudgetExhausted);
        CHECK(testing::solutions_on(base.final, csp.num_vars()) == testing::solutions_on(shuffled.final, csp.num_vars()));
        for (const auto& s : base.steps) CHECK(s.relevant);
    }
}
