#pragma once

#include "ebsql/ast.hpp"
#include "ebsql/core.hpp"

namespace ebsql {

/// Denotational evaluation of an expression or predicate in a machine
/// state. Assumes the input typechecks; kind errors surface as
/// KindMismatch and are treated as bugs (or counterexamples) upstream.
EbValue eval_expr(const ExprPtr& e, const MachineState& m);

/// [v -> eval(E, m)] m
MachineState apply_assignment(const Assignment& a, const MachineState& m);

/// Simultaneous semantics: every right hand side is evaluated in the
/// original state before any variable is rebound.
MachineState eval_actions(const ActionSet& as, const MachineState& m);

}  // namespace ebsql
