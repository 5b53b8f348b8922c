#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ebsql/core.hpp"

namespace ebsql {

struct SqlQuery;
using QueryPtr = std::shared_ptr<const SqlQuery>;

/// A term inside a select list or comparison: a column of a from-clause
/// binding, a scalar literal, or a one-row one-column subquery used as an
/// atomic value (the count queries of the cardinality encodings).
struct SqlTerm {
    enum class Kind { ColRef, Lit, Subquery };
    Kind kind = Kind::Lit;
    std::string alias;  // ColRef
    std::string attr;   // ColRef
    Scalar lit;         // Lit
    QueryPtr sub;       // Subquery
};

SqlTerm col(const std::string& alias, const std::string& attr);
SqlTerm lit_term(const Scalar& s);
SqlTerm subquery_term(QueryPtr q);

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

struct SqlPred;
using PredPtr = std::shared_ptr<const SqlPred>;

struct SqlPred {
    enum class Kind { True, Not, And, Or, Compare, InSubquery, NotInSubquery };
    Kind kind = Kind::True;
    std::vector<PredPtr> kids;   // Not: 1, And/Or: 2
    SqlTerm lhs, rhs;            // Compare
    CompareOp op = CompareOp::Eq;
    std::vector<SqlTerm> terms;  // In/NotIn membership tuple (width 1 or 2)
    QueryPtr query;              // In/NotIn
};

PredPtr true_pred();
PredPtr not_pred(PredPtr p);
PredPtr and_pred(PredPtr a, PredPtr b);
PredPtr or_pred(PredPtr a, PredPtr b);
PredPtr compare(SqlTerm lhs, CompareOp op, SqlTerm rhs);
PredPtr in_subquery(std::vector<SqlTerm> terms, QueryPtr q);
PredPtr not_in_subquery(std::vector<SqlTerm> terms, QueryPtr q);

/// A from-clause entry: a named table or a derived (sub)query, with the
/// tuple-variable alias it binds.
struct TableSource {
    std::string table;  // non-empty for named tables
    QueryPtr derived;   // set for derived tables
    std::string alias;
};

TableSource named_source(const std::string& table, const std::string& alias);
TableSource derived_source(QueryPtr q, const std::string& alias);

/// Select-list entry: the term plus the output attribute name. Names are
/// positional conventions (refkey / id, value / count); the emitter prints
/// `as <name>` only for terms with no column name of their own.
struct OutputColumn {
    SqlTerm term;
    std::string name;
};

struct SqlQuery {
    enum class Kind { Select, Union, Count };
    Kind kind = Kind::Select;
    // Select
    bool distinct = false;
    std::vector<OutputColumn> columns;
    std::vector<TableSource> from;
    PredPtr where;  // null means true
    // Union
    QueryPtr left, right;
    // Count
    SqlTerm count_col;
    std::optional<TableSource> count_from;
};

QueryPtr make_select(bool distinct, std::vector<OutputColumn> columns,
                     std::vector<TableSource> from, PredPtr where);
QueryPtr make_union(QueryPtr left, QueryPtr right);
QueryPtr make_count(SqlTerm column, TableSource from);

/// Output attribute names, in order.
std::vector<std::string> output_schema(const SqlQuery& q);

struct SqlStatement {
    enum class Kind { InsertIgnoreSelect, DeleteAll, DeleteWhere };
    Kind kind = Kind::DeleteAll;
    std::string table;
    QueryPtr query;  // InsertIgnoreSelect
    PredPtr where;   // DeleteWhere
};

SqlStatement insert_ignore_select(const std::string& table, QueryPtr q);
SqlStatement delete_all(const std::string& table);
SqlStatement delete_where(const std::string& table, PredPtr where);

enum class Dialect { MySql, Sqlite };

/// Normative text form: lower-case keywords, single spaces, subqueries
/// parenthesized. Deterministic for identical ASTs.
std::string emit_sql(const QueryPtr& q, Dialect dialect = Dialect::MySql);
std::string emit_sql(const PredPtr& p, Dialect dialect = Dialect::MySql);
std::string emit_sql(const std::vector<SqlStatement>& stmts,
                     Dialect dialect = Dialect::MySql);

}  // namespace ebsql
