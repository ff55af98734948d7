#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propkit/consistency.hpp"
#include "propkit/csp.hpp"
#include "propkit/scheduler.hpp"
#include "propkit/search.hpp"

// JSON-lines derivation traces, proof-tree exports and report serialization.
namespace propkit {

/// One trace record: {"step", "rule", "constraint", ["var",] "changes",
/// "added", "removed", "fresh"}. `after` is the CSP the step produced; its
/// names are used for rendering.
std::string trace_line(const Csp& after, const DerivationStep& step);

/// All records of a derivation that started from `start`, one per line.
std::string trace_text(const Csp& start, std::span<const DerivationStep> steps);

/// Re-applies a trace to initial.without_solved(). Each record is checked
/// against the CSP it is applied to (old domains, removed constraints and
/// fresh names must match); a mismatch throws ReplayError.
Csp replay_trace(const Csp& initial, std::string_view trace);

/// DOT digraph: one node per CSP in the tree, deterministic steps as edges
/// labelled with their RuleId, splits as edges labelled with their
/// SplitRuleId. Leaves are marked solved / failed / stuck.
std::string tree_to_dot(const ProofNode& root);
/// The same tree as nested JSON.
std::string tree_to_json(const ProofNode& root);

std::string report_to_json(const Csp& csp, const ConsistencyReport& report);
std::string suites_to_json(std::span<const SuiteResult> suites);

}  // namespace propkit
