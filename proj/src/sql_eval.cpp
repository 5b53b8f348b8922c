#include "ebsql/sql_eval.hpp"

#include <functional>
#include <set>

namespace ebsql {

namespace {

using Bag = std::vector<TupleRow>;
using Bindings = std::map<std::string, const TupleRow*>;

bool has_duplicates(const Bag& bag) {
    std::set<TupleRow> seen;
    for (const auto& row : bag)
        if (!seen.insert(row).second) return true;
    return false;
}

/// Bag-level evaluation mirrors what an engine computes. Duplicates only
/// become observable where a bag is counted or returned as a result value;
/// membership tests, unions and distinct absorb them. The translator's
/// discipline ("queries that could have duplicates use distinct") is
/// checked exactly at the observable spots.
struct Evaluator {
    const Database& db;
    DupStats* stats;

    struct Evaled {
        std::vector<std::string> schema;
        Bag rows;
    };

    Scalar term_value(const SqlTerm& t, const Bindings& env) {
        switch (t.kind) {
            case SqlTerm::Kind::Lit: return t.lit;
            case SqlTerm::Kind::ColRef: {
                auto it = env.find(t.alias);
                if (it == env.end())
                    throw SchemaError("unbound tuple variable '" + t.alias + "'");
                auto attr = it->second->find(t.attr);
                if (attr == it->second->end())
                    throw SchemaError("tuple variable '" + t.alias +
                                      "' has no attribute '" + t.attr + "'");
                return attr->second;
            }
            case SqlTerm::Kind::Subquery: {
                Evaled ev = query(*t.sub, env);
                if (ev.schema.size() != 1 || ev.rows.size() != 1)
                    throw SchemaError("scalar subquery did not return one value");
                return ev.rows.front().begin()->second;
            }
        }
        throw SchemaError("unreachable term kind");
    }

    bool compare_values(const Scalar& a, CompareOp op, const Scalar& b) {
        switch (op) {
            case CompareOp::Eq: return eq_checked(a, b);
            case CompareOp::Ne: return !eq_checked(a, b);
            case CompareOp::Lt: return compare_checked(a, b) < 0;
            case CompareOp::Le: return compare_checked(a, b) <= 0;
            case CompareOp::Gt: return compare_checked(a, b) > 0;
            case CompareOp::Ge: return compare_checked(a, b) >= 0;
        }
        throw SchemaError("unreachable comparison");
    }

    bool predicate(const SqlPred& p, const Bindings& env) {
        switch (p.kind) {
            case SqlPred::Kind::True: return true;
            case SqlPred::Kind::Not: return !predicate(*p.kids[0], env);
            case SqlPred::Kind::And:
                return predicate(*p.kids[0], env) && predicate(*p.kids[1], env);
            case SqlPred::Kind::Or:
                return predicate(*p.kids[0], env) || predicate(*p.kids[1], env);
            case SqlPred::Kind::Compare:
                return compare_values(term_value(p.lhs, env), p.op,
                                      term_value(p.rhs, env));
            case SqlPred::Kind::InSubquery:
            case SqlPred::Kind::NotInSubquery: {
                std::vector<Scalar> needle;
                needle.reserve(p.terms.size());
                for (const auto& t : p.terms) needle.push_back(term_value(t, env));
                Evaled ev = query(*p.query, env);
                if (ev.schema.size() != needle.size())
                    throw SchemaError("membership tuple width " +
                                      std::to_string(needle.size()) +
                                      " against subquery of width " +
                                      std::to_string(ev.schema.size()));
                bool found = false;
                for (const auto& row : ev.rows) {
                    bool all = true;
                    for (std::size_t i = 0; i < needle.size(); ++i) {
                        if (!eq_checked(row.at(ev.schema[i]), needle[i])) {
                            all = false;
                            break;
                        }
                    }
                    if (all) {
                        found = true;
                        break;
                    }
                }
                return p.kind == SqlPred::Kind::InSubquery ? found : !found;
            }
        }
        throw SchemaError("unreachable predicate kind");
    }

    // Derived sources and subqueries see the enclosing bindings (lexical
    // scoping); their own aliases shadow outer ones.
    Evaled source_rows(const TableSource& src, const Bindings& outer) {
        if (src.derived) return query(*src.derived, outer);
        const Relation& rel = db.table(src.table);
        Bag rows(rel.rows().begin(), rel.rows().end());
        return {rel.schema(), std::move(rows)};
    }

    Evaled query(const SqlQuery& q, const Bindings& outer) {
        switch (q.kind) {
            case SqlQuery::Kind::Select: return select(q, outer);
            case SqlQuery::Kind::Union: {
                Evaled left = query(*q.left, outer);
                Evaled right = query(*q.right, outer);
                if (left.schema.size() != right.schema.size())
                    throw SchemaError("union branches of different widths");
                // SQL union removes all duplicates
                std::set<TupleRow> seen(left.rows.begin(), left.rows.end());
                for (const auto& row : right.rows) {
                    TupleRow renamed;
                    for (std::size_t i = 0; i < right.schema.size(); ++i)
                        renamed[left.schema[i]] = row.at(right.schema[i]);
                    seen.insert(std::move(renamed));
                }
                return {left.schema, Bag(seen.begin(), seen.end())};
            }
            case SqlQuery::Kind::Count: {
                Evaled src = source_rows(*q.count_from, outer);
                if (q.count_col.kind == SqlTerm::Kind::ColRef) {
                    bool known = false;
                    for (const auto& a : src.schema)
                        known = known || a == q.count_col.attr;
                    if (!known)
                        throw SchemaError("count over unknown column '" +
                                          q.count_col.attr + "'");
                }
                // count sees the bag; a duplicated operand would diverge from
                // count distinct, which the translation never allows
                if (stats && has_duplicates(src.rows)) stats->violations++;
                TupleRow row{{"count", Scalar(Int(src.rows.size()))}};
                return {{"count"}, {std::move(row)}};
            }
        }
        throw SchemaError("unreachable query kind");
    }

    Evaled select(const SqlQuery& q, const Bindings& outer) {
        std::vector<std::string> names = output_schema(q);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw SchemaError("duplicate output name '" + names[i] + "'");
        for (std::size_t i = 0; i < q.from.size(); ++i)
            for (std::size_t j = i + 1; j < q.from.size(); ++j)
                if (q.from[i].alias == q.from[j].alias)
                    throw SchemaError("duplicate tuple variable '" +
                                      q.from[i].alias + "'");

        std::vector<Evaled> sources;
        sources.reserve(q.from.size());
        for (const auto& src : q.from) sources.push_back(source_rows(src, outer));

        Bag bag;
        Bindings env = outer;
        std::function<void(std::size_t)> enumerate = [&](std::size_t level) {
            if (level == q.from.size()) {
                if (q.where && !predicate(*q.where, env)) return;
                TupleRow row;
                for (const auto& c : q.columns)
                    row[c.name] = term_value(c.term, env);
                bag.push_back(std::move(row));
                return;
            }
            for (const auto& tuple : sources[level].rows) {
                env[q.from[level].alias] = &tuple;
                enumerate(level + 1);
            }
            env.erase(q.from[level].alias);
        };
        enumerate(0);

        if (q.distinct) {
            std::set<TupleRow> seen(bag.begin(), bag.end());
            bag.assign(seen.begin(), seen.end());
        }
        return {std::move(names), std::move(bag)};
    }
};

// [rtmp/r]phi: renames free column references `table.attr` to the fresh
// tuple variable. Stops at subqueries that rebind the name.
SqlTerm rename_term(const SqlTerm& t, const std::string& from, const std::string& to);
QueryPtr rename_query(const QueryPtr& q, const std::string& from, const std::string& to);

PredPtr rename_pred(const PredPtr& p, const std::string& from, const std::string& to) {
    auto out = std::make_shared<SqlPred>(*p);
    for (auto& kid : out->kids) kid = rename_pred(kid, from, to);
    if (out->kind == SqlPred::Kind::Compare) {
        out->lhs = rename_term(out->lhs, from, to);
        out->rhs = rename_term(out->rhs, from, to);
    }
    for (auto& t : out->terms) t = rename_term(t, from, to);
    if (out->query) out->query = rename_query(out->query, from, to);
    return out;
}

QueryPtr rename_query(const QueryPtr& q, const std::string& from,
                      const std::string& to) {
    auto out = std::make_shared<SqlQuery>(*q);
    if (out->kind == SqlQuery::Kind::Select) {
        bool shadowed = false;
        for (const auto& src : out->from) shadowed = shadowed || src.alias == from;
        if (shadowed) return out;
        for (auto& c : out->columns) c.term = rename_term(c.term, from, to);
        for (auto& src : out->from)
            if (src.derived) src.derived = rename_query(src.derived, from, to);
        if (out->where) out->where = rename_pred(out->where, from, to);
    } else if (out->kind == SqlQuery::Kind::Union) {
        out->left = rename_query(out->left, from, to);
        out->right = rename_query(out->right, from, to);
    }
    return out;
}

SqlTerm rename_term(const SqlTerm& t, const std::string& from,
                    const std::string& to) {
    SqlTerm out = t;
    if (out.kind == SqlTerm::Kind::ColRef && out.alias == from) out.alias = to;
    if (out.kind == SqlTerm::Kind::Subquery)
        out.sub = rename_query(out.sub, from, to);
    return out;
}

void collect_aliases(const PredPtr& p, std::set<std::string>& out);

void collect_aliases(const SqlTerm& t, std::set<std::string>& out) {
    if (t.kind == SqlTerm::Kind::ColRef) out.insert(t.alias);
}

void collect_aliases(const QueryPtr& q, std::set<std::string>& out) {
    if (q->kind == SqlQuery::Kind::Select) {
        for (const auto& c : q->columns) collect_aliases(c.term, out);
        for (const auto& src : q->from) {
            out.insert(src.alias);
            if (src.derived) collect_aliases(src.derived, out);
        }
        if (q->where) collect_aliases(q->where, out);
    } else if (q->kind == SqlQuery::Kind::Union) {
        collect_aliases(q->left, out);
        collect_aliases(q->right, out);
    } else {
        collect_aliases(q->count_col, out);
        if (q->count_from && q->count_from->derived)
            collect_aliases(q->count_from->derived, out);
    }
}

void collect_aliases(const PredPtr& p, std::set<std::string>& out) {
    for (const auto& kid : p->kids) collect_aliases(kid, out);
    if (p->kind == SqlPred::Kind::Compare) {
        collect_aliases(p->lhs, out);
        collect_aliases(p->rhs, out);
    }
    for (const auto& t : p->terms) collect_aliases(t, out);
    if (p->query) collect_aliases(p->query, out);
}

}  // namespace

Relation eval_query(const QueryPtr& q, const Database& db, DupStats* stats) {
    Evaluator ev{db, stats};
    Evaluator::Evaled result = ev.query(*q, {});
    // the result value is a set; a duplicated result bag means a missing
    // distinct somewhere in the translation
    if (stats && has_duplicates(result.rows)) stats->violations++;
    Relation out(result.schema);
    for (auto& row : result.rows) out.insert(std::move(row));
    return out;
}

bool eval_pred(const PredPtr& p, const Database& db, DupStats* stats) {
    Evaluator ev{db, stats};
    return ev.predicate(*p, {});
}

Database exec_statement(const SqlStatement& st, const Database& db,
                        const ExecOptions& opts, DupStats* stats) {
    switch (st.kind) {
        case SqlStatement::Kind::InsertIgnoreSelect: {
            const Relation& target = db.table(st.table);
            Relation result = eval_query(st.query, db, stats);
            if (result.schema().size() != target.schema().size())
                throw SchemaError("insert of width " +
                                  std::to_string(result.schema().size()) +
                                  " into table of width " +
                                  std::to_string(target.schema().size()));
            if (!result.empty() && !target.empty()) {
                const TupleRow& sample = *result.rows().begin();
                const TupleRow& existing = *target.rows().begin();
                for (std::size_t i = 0; i < result.schema().size(); ++i) {
                    if (sample.at(result.schema()[i]).kind() !=
                        existing.at(target.schema()[i]).kind())
                        throw SchemaError("insert into '" + st.table +
                                          "' with mismatched column kinds");
                }
            }
            Relation updated = target;
            for (const auto& row : result.rows()) {
                TupleRow renamed;
                for (std::size_t i = 0; i < result.schema().size(); ++i)
                    renamed[target.schema()[i]] = row.at(result.schema()[i]);
                if (!opts.insert_ignore && updated.contains(renamed))
                    throw DuplicateRow("insert into '" + st.table +
                                       "' without ignore hit an existing row");
                updated.insert(std::move(renamed));
            }
            return db_update(db, st.table, updated);
        }
        case SqlStatement::Kind::DeleteAll: {
            Relation empty(db.table(st.table).schema());
            return db_update(db, st.table, empty);
        }
        case SqlStatement::Kind::DeleteWhere: {
            const Relation& target = db.table(st.table);
            std::set<std::string> used;
            collect_aliases(st.where, used);
            std::string fresh = "rtmp";
            for (int i = 0; used.count(fresh) || fresh == st.table; ++i)
                fresh = "rtmp__" + std::to_string(i);
            std::vector<OutputColumn> cols;
            for (const auto& attr : target.schema())
                cols.push_back({col(fresh, attr), attr});
            QueryPtr doomed_query = make_select(
                false, std::move(cols), {named_source(st.table, fresh)},
                rename_pred(st.where, st.table, fresh));
            Relation doomed = eval_query(doomed_query, db, stats);
            Relation updated(target.schema());
            for (const auto& row : target.rows())
                if (!doomed.contains(row)) updated.insert(row);
            return db_update(db, st.table, updated);
        }
    }
    throw SchemaError("unreachable statement kind");
}

Database exec_sequence(const std::vector<SqlStatement>& stmts, const Database& db,
                       const ExecOptions& opts, DupStats* stats) {
    Database current = db;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        try {
            current = exec_statement(stmts[i], current, opts, stats);
        } catch (const Error& e) {
            throw Error("statement " + std::to_string(i) + ": " + e.what());
        }
    }
    return current;
}

}  // namespace ebsql
