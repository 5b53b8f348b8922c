#include "ebsql/sql_ast.hpp"

#include <sstream>

namespace ebsql {

SqlTerm col(const std::string& alias, const std::string& attr) {
    SqlTerm t;
    t.kind = SqlTerm::Kind::ColRef;
    t.alias = alias;
    t.attr = attr;
    return t;
}

SqlTerm lit_term(const Scalar& s) {
    SqlTerm t;
    t.kind = SqlTerm::Kind::Lit;
    t.lit = s;
    return t;
}

SqlTerm subquery_term(QueryPtr q) {
    SqlTerm t;
    t.kind = SqlTerm::Kind::Subquery;
    t.sub = std::move(q);
    return t;
}

PredPtr true_pred() {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::True;
    return p;
}

PredPtr not_pred(PredPtr a) {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::Not;
    p->kids = {std::move(a)};
    return p;
}

PredPtr and_pred(PredPtr a, PredPtr b) {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::And;
    p->kids = {std::move(a), std::move(b)};
    return p;
}

PredPtr or_pred(PredPtr a, PredPtr b) {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::Or;
    p->kids = {std::move(a), std::move(b)};
    return p;
}

PredPtr compare(SqlTerm lhs, CompareOp op, SqlTerm rhs) {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::Compare;
    p->lhs = std::move(lhs);
    p->rhs = std::move(rhs);
    p->op = op;
    return p;
}

PredPtr in_subquery(std::vector<SqlTerm> terms, QueryPtr q) {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::InSubquery;
    p->terms = std::move(terms);
    p->query = std::move(q);
    return p;
}

PredPtr not_in_subquery(std::vector<SqlTerm> terms, QueryPtr q) {
    auto p = std::make_shared<SqlPred>();
    p->kind = SqlPred::Kind::NotInSubquery;
    p->terms = std::move(terms);
    p->query = std::move(q);
    return p;
}

TableSource named_source(const std::string& table, const std::string& alias) {
    return TableSource{table, nullptr, alias};
}

TableSource derived_source(QueryPtr q, const std::string& alias) {
    return TableSource{"", std::move(q), alias};
}

QueryPtr make_select(bool distinct, std::vector<OutputColumn> columns,
                     std::vector<TableSource> from, PredPtr where) {
    auto q = std::make_shared<SqlQuery>();
    q->kind = SqlQuery::Kind::Select;
    q->distinct = distinct;
    q->columns = std::move(columns);
    q->from = std::move(from);
    q->where = std::move(where);
    return q;
}

QueryPtr make_union(QueryPtr left, QueryPtr right) {
    auto q = std::make_shared<SqlQuery>();
    q->kind = SqlQuery::Kind::Union;
    q->left = std::move(left);
    q->right = std::move(right);
    return q;
}

QueryPtr make_count(SqlTerm column, TableSource from) {
    auto q = std::make_shared<SqlQuery>();
    q->kind = SqlQuery::Kind::Count;
    q->count_col = std::move(column);
    q->count_from = std::move(from);
    return q;
}

SqlStatement insert_ignore_select(const std::string& table, QueryPtr q) {
    SqlStatement st;
    st.kind = SqlStatement::Kind::InsertIgnoreSelect;
    st.table = table;
    st.query = std::move(q);
    return st;
}

SqlStatement delete_all(const std::string& table) {
    SqlStatement st;
    st.kind = SqlStatement::Kind::DeleteAll;
    st.table = table;
    return st;
}

SqlStatement delete_where(const std::string& table, PredPtr where) {
    SqlStatement st;
    st.kind = SqlStatement::Kind::DeleteWhere;
    st.table = table;
    st.where = std::move(where);
    return st;
}

std::vector<std::string> output_schema(const SqlQuery& q) {
    switch (q.kind) {
        case SqlQuery::Kind::Select: {
            std::vector<std::string> names;
            names.reserve(q.columns.size());
            for (const auto& c : q.columns) names.push_back(c.name);
            return names;
        }
        case SqlQuery::Kind::Union: return output_schema(*q.left);
        case SqlQuery::Kind::Count: return {"count"};
    }
    return {};
}

namespace {

struct Emitter {
    explicit Emitter(Dialect d) : dialect(d) {}
    Dialect dialect;
    std::ostringstream os;

    void term(const SqlTerm& t) {
        switch (t.kind) {
            case SqlTerm::Kind::ColRef: os << t.alias << "." << t.attr; break;
            case SqlTerm::Kind::Lit: literal(t.lit); break;
            case SqlTerm::Kind::Subquery:
                os << "(";
                query(*t.sub);
                os << ")";
                break;
        }
    }

    void literal(const Scalar& s) {
        // booleans as 1/0 so boolean-set tables work on both engines
        if (s.is_bool())
            os << (s.as_bool() ? "1" : "0");
        else
            os << s.as_int().str();
    }

    void source(const TableSource& src) {
        if (src.derived) {
            os << "(";
            query(*src.derived);
            os << ") " << src.alias;
        } else {
            os << src.table << " " << src.alias;
        }
    }

    bool is_compound(const SqlPred& p) {
        return p.kind == SqlPred::Kind::And || p.kind == SqlPred::Kind::Or;
    }

    void pred_child(const SqlPred& child, bool parens) {
        if (parens) os << "(";
        pred(child);
        if (parens) os << ")";
    }

    void pred(const SqlPred& p) {
        switch (p.kind) {
            case SqlPred::Kind::True: os << "1 = 1"; break;
            case SqlPred::Kind::Not:
                os << "not ";
                pred_child(*p.kids[0], is_compound(*p.kids[0]));
                break;
            case SqlPred::Kind::And:
            case SqlPred::Kind::Or: {
                // `and` binds tighter than `or`; only or-inside-and needs parens.
                const bool is_and = p.kind == SqlPred::Kind::And;
                const char* word = is_and ? " and " : " or ";
                pred_child(*p.kids[0], is_and && p.kids[0]->kind == SqlPred::Kind::Or);
                os << word;
                pred_child(*p.kids[1], is_and && p.kids[1]->kind == SqlPred::Kind::Or);
                break;
            }
            case SqlPred::Kind::Compare: {
                term(p.lhs);
                const char* ops[] = {" = ", " <> ", " < ", " <= ", " > ", " >= "};
                os << ops[static_cast<int>(p.op)];
                term(p.rhs);
                break;
            }
            case SqlPred::Kind::InSubquery:
            case SqlPred::Kind::NotInSubquery: {
                if (p.terms.size() == 1) {
                    term(p.terms[0]);
                } else {
                    os << "(";
                    for (std::size_t i = 0; i < p.terms.size(); ++i) {
                        if (i) os << ", ";
                        term(p.terms[i]);
                    }
                    os << ")";
                }
                os << (p.kind == SqlPred::Kind::InSubquery ? " in (" : " not in (");
                query(*p.query);
                os << ")";
                break;
            }
        }
    }

    void query(const SqlQuery& q) {
        switch (q.kind) {
            case SqlQuery::Kind::Select: {
                os << "select ";
                if (q.distinct) os << "distinct ";
                for (std::size_t i = 0; i < q.columns.size(); ++i) {
                    if (i) os << ", ";
                    term(q.columns[i].term);
                    if (q.columns[i].term.kind != SqlTerm::Kind::ColRef)
                        os << " as " << q.columns[i].name;
                }
                if (!q.from.empty()) {
                    os << " from ";
                    for (std::size_t i = 0; i < q.from.size(); ++i) {
                        if (i) os << ", ";
                        source(q.from[i]);
                    }
                } else if (q.where && dialect == Dialect::MySql) {
                    // MySQL rejects a where-clause without a from-clause.
                    os << " from dual";
                }
                if (q.where && q.where->kind != SqlPred::Kind::True) {
                    os << " where ";
                    pred(*q.where);
                }
                break;
            }
            case SqlQuery::Kind::Union:
                query(*q.left);
                os << " union ";
                query(*q.right);
                break;
            case SqlQuery::Kind::Count:
                os << "select count(";
                term(q.count_col);
                os << ") from ";
                source(*q.count_from);
                break;
        }
    }

    void statement(const SqlStatement& st) {
        switch (st.kind) {
            case SqlStatement::Kind::InsertIgnoreSelect:
                os << (dialect == Dialect::Sqlite ? "insert or ignore into "
                                                  : "insert ignore into ")
                   << st.table << " ";
                query(*st.query);
                break;
            case SqlStatement::Kind::DeleteAll:
                os << "delete from " << st.table;
                break;
            case SqlStatement::Kind::DeleteWhere:
                os << "delete from " << st.table << " where ";
                pred(*st.where);
                break;
        }
    }
};

}  // namespace

std::string emit_sql(const QueryPtr& q, Dialect dialect) {
    Emitter e(dialect);
    e.query(*q);
    return e.os.str();
}

std::string emit_sql(const PredPtr& p, Dialect dialect) {
    Emitter e(dialect);
    e.pred(*p);
    return e.os.str();
}

std::string emit_sql(const std::vector<SqlStatement>& stmts, Dialect dialect) {
    Emitter e(dialect);
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (i) e.os << "\n";
        e.statement(stmts[i]);
        e.os << ";";
    }
    return e.os.str();
}

}  // namespace ebsql
