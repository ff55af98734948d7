#pragma once

#include <string>
#include <string_view>

#include "propkit/constraint.hpp"
#include "propkit/csp.hpp"
#include "propkit/domain.hpp"

// Reader for the model language:
//
//   var NAME in LO..HI;          var NAME in {a,b,c};      realvar NAME in [p,q];
//   constraint <expr> <op> <expr>;     op ∈ {<, <=, =, ==, !=, >=, >}
//   constraint exactly(X, [Y1, ..., Yn], Z);
//   constraint atmost(X, [Y1, ..., Yn], Z);
//   constraint abs(X - Y) = A;
//
// `//` and `#` start comments. Errors are ParseError with line and column.
namespace propkit {

/// Unknown identifiers, redeclarations and names starting with `_t` are
/// rejected.
Csp parse_model(std::string_view text);
/// Reads and parses a model file. Throws Error when the file cannot be read.
Csp load_model(const std::string& path);
std::string read_file(const std::string& path);

/// One constraint in the syntax above (without `constraint` and `;`, which
/// are accepted if present) against the variables of csp. Fresh `_t` names
/// already in csp may be referenced.
Constraint parse_constraint(const Csp& csp, std::string_view text);

/// "[lo..hi]", "lo..hi", "{a,b}" or "[p,q]" (rational box).
Domain parse_domain(std::string_view text);

}  // namespace propkit
