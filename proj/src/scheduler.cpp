#include "propkit/scheduler.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "propkit/error.hpp"

namespace propkit {

std::string_view to_string(FixpointStatus s) {
    switch (s) {
        case FixpointStatus::Closed: return "closed";
        case FixpointStatus::Failed: return "failed";
        case FixpointStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

int default_priority(RuleId id) {
    switch (id) {
        case RuleId::SUBSTITUTION: return 1;
        case RuleId::LIN_EQ:
        case RuleId::LIN_INEQ_1:
        case RuleId::LIN_INEQ_2: return 2;
        case RuleId::EXACTLY_1:
        case RuleId::EXACTLY_2:
        case RuleId::EXACTLY_3:
        case RuleId::EXACTLY_4:
        case RuleId::ATMOST_TO_EXACTLY:
        case RuleId::DISEQ_LIFT: return 3;
        default: return 0;
    }
}

std::optional<Delta> settle(const Csp& csp, Delta delta) {
    // Drop constraint edits that do nothing.
    for (auto it = delta.added.begin(); it != delta.added.end();) {
        if (!csp.has_constraint(*it)) {
            ++it;
            continue;
        }
        delta.removed.erase(*it);
        it = delta.added.erase(it);
    }
    for (auto it = delta.removed.begin(); it != delta.removed.end();)
        it = csp.has_constraint(*it) ? std::next(it) : delta.removed.erase(it);
    for (auto it = delta.domain_changes.begin(); it != delta.domain_changes.end();)
        it = it->second.before == it->second.after ? delta.domain_changes.erase(it) : std::next(it);

    Csp after = apply_delta(csp, delta);
    for (const auto& c : after.constraints()) {
        if (!is_solved_constraint(c, after.domains())) continue;
        if (delta.added.erase(c) == 0) delta.removed.insert(c);
    }
    if (delta.is_noop()) return std::nullopt;
    return delta;
}

namespace {

struct Item {
    std::size_t rule;  // index into the rule list
    Constraint constraint;
    auto operator<=>(const Item&) const = default;
};

class Worklist {
public:
    Worklist(std::span<const Rule* const> rules, const SchedulerConfig& config) : rules_(rules) {
        for (auto* r : rules) {
            auto it = config.priority.find(r->id());
            prio_.push_back(it != config.priority.end() ? it->second : default_priority(r->id()));
        }
        if (config.shuffle_seed) rng_.emplace(*config.shuffle_seed);
    }

    void push_constraint(const Constraint& c) {
        for (std::size_t i = 0; i < rules_.size(); ++i)
            if (rules_[i]->handles(c.kind())) push(Item{i, c});
    }

    std::optional<Item> pop() {
        if (pending_.empty()) return std::nullopt;
        if (rng_) {
            std::uniform_int_distribution<std::size_t> pick(0, pending_.size() - 1);
            auto it = std::next(pending_.begin(), static_cast<std::ptrdiff_t>(pick(*rng_)));
            Item item = *it;
            pending_.erase(it);
            return item;
        }
        auto q = std::min_element(queues_.begin(), queues_.end(), [](const auto& a, const auto& b) {
            if (a.second.empty() != b.second.empty()) return b.second.empty();
            return a.first < b.first;
        });
        Item item = q->second.front();
        q->second.pop_front();
        pending_.erase(item);
        return item;
    }

private:
    void push(Item item) {
        if (!pending_.insert(item).second) return;
        if (rng_) return;
        int p = prio_[item.rule];
        auto q = std::find_if(queues_.begin(), queues_.end(), [&](const auto& e) { return e.first == p; });
        if (q == queues_.end()) {
            queues_.emplace_back(p, std::deque<Item>{});
            q = std::prev(queues_.end());
        }
        q->second.push_back(std::move(item));
    }

    std::span<const Rule* const> rules_;
    std::vector<int> prio_;
    std::vector<std::pair<int, std::deque<Item>>> queues_;
    std::set<Item> pending_;
    std::optional<std::mt19937_64> rng_;
};

}  // namespace

FixpointResult propagate(const Csp& input, std::span<const Rule* const> rules, const SchedulerConfig& config) {
    FixpointResult res{input.without_solved(), {}, FixpointStatus::Closed};
    Csp& csp = res.final;
    if (csp.is_failed()) {
        res.status = FixpointStatus::Failed;
        return res;
    }

    Worklist work(rules, config);
    for (const auto& c : csp.constraints()) work.push_constraint(c);

    while (auto item = work.pop()) {
        if (!csp.has_constraint(item->constraint)) continue;
        const Rule& r = *rules[item->rule];
        for (const auto& target : r.targets(csp, item->constraint)) {
            auto raw = r.apply(csp, target);
            if (!raw) continue;
            auto delta = settle(csp, std::move(*raw));
            if (!delta) continue;
            if (res.steps.size() >= config.budget) {
                res.status = FixpointStatus::BudgetExhausted;
                return res;
            }
            Csp next = apply_delta(csp, *delta);
            res.steps.push_back(DerivationStep{res.steps.size() + 1, r.id(), target, *delta, true});
            for (const auto& c : next.constraints()) {
                if (delta->added.count(c)) {
                    work.push_constraint(c);
                    continue;
                }
                for (const auto& [v, ch] : delta->domain_changes)
                    if (c.mentions(v)) {
                        work.push_constraint(c);
                        break;
                    }
            }
            csp = std::move(next);
            if (config.on_step) config.on_step(res.steps.back(), csp);
            if (csp.is_failed()) {
                res.status = FixpointStatus::Failed;
                return res;
            }
            // The target may still admit another relevant application.
            if (csp.has_constraint(item->constraint)) work.push_constraint(item->constraint);
            break;
        }
    }
    return res;
}

bool is_closed_under(const Csp& csp, const Rule& r) {
    for (const auto& c : csp.constraints()) {
        for (const auto& t : r.targets(csp, c)) {
            auto d = r.apply(csp, t);
            if (d && !is_variant(csp, apply_delta(csp, *d))) return false;
        }
    }
    return true;
}

FixpointResult replay(const Csp& input, std::span<const ScriptStep> script) {
    FixpointResult res{input.without_solved(), {}, FixpointStatus::Closed};
    Csp& csp = res.final;
    for (std::size_t i = 0; i < script.size(); ++i) {
        const auto& s = script[i];
        if (!csp.has_constraint(s.target.constraint)) throw ReplayError(i + 1, std::string(to_string(s.rule)) + ": target constraint not present");
        auto raw = rule(s.rule).apply(csp, s.target);
        if (!raw) throw ReplayError(i + 1, std::string(to_string(s.rule)) + ": rule not applicable");
        auto delta = settle(csp, std::move(*raw));
        if (!delta) continue;
        csp = apply_delta(csp, *delta);
        res.steps.push_back(DerivationStep{res.steps.size() + 1, s.rule, s.target, std::move(*delta), true});
    }
    if (csp.is_failed()) res.status = FixpointStatus::Failed;
    return res;
}

}  // namespace propkit
