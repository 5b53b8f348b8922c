#pragma once

#include <string>

#include "ebsql/ast.hpp"

namespace ebsql {

/// Parses a predicate or an expression in the Rodin ASCII surface syntax.
/// Predicates and expressions are syntactically disjoint; whichever parse
/// consumes the whole input wins.
ExprPtr parse_expr(const std::string& text);

/// Parses `v := E || v2 := E2 || ...`; empty input is the empty action set.
/// Rejects duplicate targets and primed variable names.
ActionSet parse_actions(const std::string& text);

}  // namespace ebsql
