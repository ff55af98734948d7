#pragma once

#include <string>

#include "propkit/constraint.hpp"
#include "propkit/csp.hpp"

// Text forms in the model language. Everything rendered here parses back to
// the same structure (see parser.hpp).
namespace propkit {

std::string render_affine(const Csp& csp, const AffineExpr& e);
std::string render_constraint(const Csp& csp, const Constraint& c);
/// `var x in 0..9;`, `var x in {1,3};` or `realvar x in [0,1/2];`
std::string render_declaration(const Csp& csp, VarId v);
/// Declarations in variable order, then constraints in set order.
std::string render_model(const Csp& csp);

/// "x = 3", "x in [0..9]", "x in {1,3}" or "x in [0,1/2]".
std::string render_range(const Csp& csp, VarId v);

}  // namespace propkit
