#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "propkit/csp.hpp"
#include "propkit/scheduler.hpp"

// Bundled example models, emitted as model-language text.
namespace propkit {

/// sendmory, latin (order n ≥ 2), lin1, lin1_fixpoint, parity, davis, twoeq.
/// Also accepts "latinN" and "latin(N)" for the order. Throws Error on
/// unknown names.
std::string gen_example(std::string_view name, int n = 0);
std::vector<std::string> example_names();

/// The hand derivation for the SEND + MORE = MONEY model: one LIN_EQ step on
/// the sum, M != O, the fifteen disequality steps that cut E, N, D, R, Y to
/// [2..8], then five LIN_EQ steps.
std::string sendmory_script_text();

/// One step per line, `RULE: constraint` or `SUBSTITUTION x: constraint`.
/// Blank lines and `#` comments are ignored. Throws ParseError.
std::vector<ScriptStep> parse_script(const Csp& csp, std::string_view text);

}  // namespace propkit
