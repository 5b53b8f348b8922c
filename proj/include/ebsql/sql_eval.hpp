#pragma once

#include "ebsql/core.hpp"
#include "ebsql/sql_ast.hpp"

namespace ebsql {

/// Duplicate accounting for the translation's duplicate-freedom discipline:
/// a non-distinct select whose pre-deduplication bag contained duplicate
/// rows is a violation (the translator promises this never happens).
struct DupStats {
    std::size_t violations = 0;
};

/// Evaluates a query to a duplicate-free relation over the database.
/// From-clause bindings are enumerated as nested loops; derived sources
/// are evaluated recursively.
Relation eval_query(const QueryPtr& q, const Database& db, DupStats* stats = nullptr);

/// Evaluates a closed predicate (no free tuple variables), as produced by
/// translating an Event-B predicate.
bool eval_pred(const PredPtr& p, const Database& db, DupStats* stats = nullptr);

struct ExecOptions {
    /// When false, inserting a row that is already present raises
    /// DuplicateRow (models dropping the `ignore` keyword on tables whose
    /// primary key spans all columns). Mutation hook for the harness.
    bool insert_ignore = true;
};

/// Applies one insert/delete statement, returning the updated database.
Database exec_statement(const SqlStatement& st, const Database& db,
                        const ExecOptions& opts = {}, DupStats* stats = nullptr);

/// Left-to-right statement threading; the empty list returns db unchanged.
Database exec_sequence(const std::vector<SqlStatement>& stmts, const Database& db,
                       const ExecOptions& opts = {}, DupStats* stats = nullptr);

}  // namespace ebsql
