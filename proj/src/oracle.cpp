#include "propkit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "propkit/error.hpp"

namespace propkit {

namespace {

std::uint64_t product_size(const std::vector<VarId>& vars, std::span<const Domain> doms) {
    std::uint64_t n = 1;
    for (auto v : vars) {
        const Domain& d = doms[v.index];
        if (d.is_real()) throw Error("oracle needs finite integer domains");
        std::uint64_t s = d.size();
        if (s == 0) return 0;
        if (n > std::numeric_limits<std::uint64_t>::max() / s) return std::numeric_limits<std::uint64_t>::max();
        n *= s;
    }
    return n;
}

std::vector<VarId> all_vars(std::size_t n) {
    std::vector<VarId> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = VarId{static_cast<std::uint32_t>(i)};
    return out;
}

// Calls f(assignment) for every tuple of the product over `vars`; other
// positions of the assignment stay at their first domain value.
template <class F>
void for_each_tuple(const std::vector<VarId>& vars, std::span<const Domain> doms, F&& f) {
    std::vector<std::vector<std::int64_t>> vals;
    for (auto v : vars) vals.push_back(doms[v.index].values());
    Assignment a(doms.size(), 0);
    for (std::size_t i = 0; i < doms.size(); ++i)
        if (!doms[i].is_real() && !doms[i].empty()) a[i] = doms[i].min();
    std::vector<std::size_t> pos(vars.size(), 0);
    for (std::size_t k = 0; k < vars.size(); ++k) a[vars[k].index] = vals[k][0];
    while (true) {
        f(a);
        std::size_t k = 0;
        for (; k < vars.size(); ++k) {
            if (++pos[k] < vals[k].size()) {
                a[vars[k].index] = vals[k][pos[k]];
                break;
            }
            pos[k] = 0;
            a[vars[k].index] = vals[k][0];
        }
        if (k == vars.size()) return;
    }
}

}  // namespace

Relation restrict(const Constraint& c, std::span<const Domain> doms, std::uint64_t cap) {
    Relation r{c.scope(), {}};
    std::uint64_t n = product_size(r.scope, doms);
    if (n == 0) return r;
    if (n > cap) throw OracleTooLarge("relation has " + std::to_string(n) + " candidate tuples, cap " + std::to_string(cap));
    for_each_tuple(r.scope, doms, [&](const Assignment& a) {
        if (!c.satisfied(a)) return;
        Assignment t;
        for (auto v : r.scope) t.push_back(a[v.index]);
        r.tuples.insert(std::move(t));
    });
    return r;
}

std::set<Assignment> solutions_bruteforce(const Csp& csp, std::uint64_t cap) {
    std::set<Assignment> out;
    if (csp.is_failed()) return out;
    auto vars = all_vars(csp.num_vars());
    std::uint64_t n = product_size(vars, csp.domains());
    if (n > cap) throw OracleTooLarge("search space " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    if (vars.empty()) {
        out.insert({});
        return out;
    }
    for_each_tuple(vars, csp.domains(), [&](const Assignment& a) {
        for (const auto& c : csp.constraints())
            if (!c.satisfied(a)) return;
        out.insert(a);
    });
    return out;
}

std::set<Assignment> solutions_backtracking(const Csp& csp, std::uint64_t node_cap) {
    std::set<Assignment> out;
    if (csp.is_failed()) return out;
    const std::size_t n = csp.num_vars();
    auto doms = csp.domains();
    for (const auto& d : doms)
        if (d.is_real()) throw Error("oracle needs finite integer domains");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return doms[a].size() < doms[b].size(); });
    std::vector<std::size_t> rank(n);
    for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

    // Constraints keyed by the depth at which their last variable is assigned.
    std::vector<std::vector<const Constraint*>> due(n + 1);
    for (const auto& c : csp.constraints()) {
        std::size_t depth = 0;
        for (auto v : c.scope()) depth = std::max(depth, rank[v.index] + 1);
        due[depth].push_back(&c);
    }
    Assignment a(n, 0);
    for (const auto* c : due[0])
        if (!c->satisfied(a)) return out;

    std::vector<std::vector<std::int64_t>> vals;
    for (std::size_t k = 0; k < n; ++k) vals.push_back(doms[order[k]].values());

    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, std::size_t k) -> void {
        if (k == n) {
            out.insert(a);
            return;
        }
        for (auto v : vals[k]) {
            if (++nodes > node_cap) throw OracleTooLarge("backtracking oracle exceeded " + std::to_string(node_cap) + " nodes");
            a[order[k]] = v;
            bool ok = true;
            for (const auto* c : due[k + 1])
                if (!c->satisfied(a)) {
                    ok = false;
                    break;
                }
            if (ok) self(self, k + 1);
        }
    };
    dfs(dfs, 0);
    return out;
}

std::set<Assignment> project(const std::set<Assignment>& sols, std::size_t n) {
    std::set<Assignment> out;
    for (const auto& s : sols) out.insert(Assignment(s.begin(), s.begin() + std::min(n, s.size())));
    return out;
}

std::uint64_t search_space_size(std::span<const Domain> doms) { return product_size(all_vars(doms.size()), doms); }

}  // namespace propkit
