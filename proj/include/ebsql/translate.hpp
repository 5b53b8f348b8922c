#pragma once

#include <optional>

#include "ebsql/ast.hpp"
#include "ebsql/sql_ast.hpp"
#include "ebsql/sql_eval.hpp"
#include "ebsql/typecheck.hpp"

namespace ebsql {

/// Single-rule fault injections used by the mutation self-test. Exactly one
/// may be active; None is the production translator.
enum class Mutation {
    None,
    InterAsMinus,      // intersection emits the difference query shape
    DomResDomSubSwap,  // <| and <<| rule bodies exchanged
    OvlInsertFirst,    // overriding assignment: insert before delete
    DomNoDistinct,     // dom rule loses its distinct
    InsertNoIgnore,    // executor forgets insert-ignore semantics
};

struct TranslateOptions {
    bool force_general = false;  // bypass the eight optimized assignment rules
    Mutation mutation = Mutation::None;

    ExecOptions exec_options() const {
        return ExecOptions{mutation != Mutation::InsertNoIgnore};
    }
};

/// Translation result: set/relation expressions become queries, predicates
/// become where-style predicates.
struct TranslatedExpr {
    QueryPtr query;
    PredPtr pred;
    bool is_pred() const { return pred != nullptr; }
};

/// Purely syntactic translation of a typechecked expression or predicate.
/// `expected` resolves an otherwise ambiguous empty literal at the root.
/// Fresh tuple-variable aliases are numbered by a counter local to this
/// call, so identical inputs give identical outputs.
TranslatedExpr eb2sql_expr(const ExprPtr& e, const TypeEnv& env,
                           const TranslateOptions& opts = {},
                           std::optional<EbType> expected = std::nullopt);

struct TranslatedAssignment {
    std::vector<SqlStatement> statements;
    ExprPtr primed_def;   // what <target>__prime must hold (pre-state value)
    EbType primed_type;   // its type, for resolving empty literals
};

/// Matches the right hand side against the eight optimized assignment
/// forms, then the two general ones, and returns the statement list plus
/// the primed-table definition.
TranslatedAssignment eb2sql_assignment(const Assignment& a, const TypeEnv& env,
                                       const TranslateOptions& opts = {});

/// Binds <target>__prime to the primed definition evaluated against db.
Database eb2sql_o(const Assignment& a, const Database& db, const TypeEnv& env,
                  const TranslateOptions& opts = {}, DupStats* stats = nullptr);

/// Folds eb2sql_o over the action set; all primed definitions see the
/// original tables (primed names cannot occur in user expressions).
Database eb2sql_os(const ActionSet& as, const Database& db, const TypeEnv& env,
                   const TranslateOptions& opts = {}, DupStats* stats = nullptr);

/// Executes each assignment's statements and drops its primed binding.
Database eb2sql_as(const ActionSet& as, const Database& db, const TypeEnv& env,
                   const TranslateOptions& opts = {}, DupStats* stats = nullptr);

/// The implemented meaning of the translated action set:
/// eb2sql_as after eb2sql_os. No primed tables remain in the result.
Database eb2sql_res(const ActionSet& as, const Database& db, const TypeEnv& env,
                    const TranslateOptions& opts = {}, DupStats* stats = nullptr);

}  // namespace ebsql
