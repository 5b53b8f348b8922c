#pragma once

#include <map>
#include <optional>
#include <string>

#include "ebsql/ast.hpp"

namespace ebsql {

using TypeEnv = std::map<std::string, EbType>;

/// Per-node types recorded during checking; the translator consults this
/// to pick between set- and relation-shaped queries.
using TypeMap = std::map<const Expr*, EbType>;

/// Derives the type of an expression or predicate (predicates type as
/// BOOL). Empty collection literals are resolved against their context;
/// a literal whose sort stays ambiguous is rejected.
EbType typecheck_expr(const ExprPtr& e, const TypeEnv& env, TypeMap* types = nullptr);

/// As typecheck_expr, but an expression whose sort is undetermined (an
/// empty literal, or set operators over nothing else) yields nullopt
/// instead of an error. Previously resolved literals keep their types.
std::optional<EbType> infer_expr(const ExprPtr& e, const TypeEnv& env,
                                 TypeMap* types);

/// Pushes a context-determined type down a subtree left ambiguous by
/// infer_expr, recording it for every node.
void resolve_empty(const ExprPtr& e, const EbType& t, TypeMap* types);

/// Checks every assignment: target bound to a set/relation type, right
/// hand side of exactly that type, no target assigned twice.
void typecheck_actions(const ActionSet& as, const TypeEnv& env,
                       TypeMap* types = nullptr);

}  // namespace ebsql
