#include "ebsql/translate.hpp"

namespace ebsql {

namespace {

const std::string kRefkey = "refkey";
const std::string kId = "id";
const std::string kValue = "value";

/// Implements the expression translation rules. Aliases come from one
/// monotone counter per top-level call, so every rule application gets
/// fresh tuple variables; children are translated before a rule allocates
/// its own aliases, in emission order.
class ExprTranslator {
  public:
    ExprTranslator(const TypeEnv& env, const TranslateOptions& opts)
        : env_(env), opts_(opts) {}

    EbType typed(const ExprPtr& e, std::optional<EbType> expected) {
        auto t = infer_expr(e, env_, &types_);
        if (!t) {
            if (!expected) throw TypeError("ambiguous empty collection literal");
            resolve_empty(e, *expected, &types_);
            t = *expected;
        }
        return *t;
    }

    TranslatedExpr translate(const ExprPtr& e) {
        if (is_predicate_kind(e->kind)) return TranslatedExpr{nullptr, pred(e)};
        EbType t = type_of(e);
        if (t.is_set() || t.is_rel()) return TranslatedExpr{query(e), nullptr};
        if (e->kind == ExprKind::Card)
            return TranslatedExpr{card_query(e->kids[0]), nullptr};
        throw Untranslatable("bare scalar expression at top level");
    }

    QueryPtr query(const ExprPtr& e) {
        EbType t = type_of(e);
        const bool rel = t.is_rel();
        switch (e->kind) {
            case ExprKind::Var: {
                if (!env_.count(e->name)) throw UnboundVariable(e->name);
                if (rel) {
                    std::string k = fresh("rtmp");
                    return make_select(false,
                                       {{col(k, kId), kId}, {col(k, kValue), kValue}},
                                       {named_source(e->name, k)}, nullptr);
                }
                std::string k = fresh("stmp");
                return make_select(false, {{col(k, kRefkey), kRefkey}},
                                   {named_source(e->name, k)}, nullptr);
            }
            case ExprKind::SetLit: {
                if (rel) {
                    // only the empty literal can resolve to a relation sort
                    if (!e->set_elems.empty())
                        throw TypeError("non-empty set literal with relation type");
                    return literal_rows({}, true, true);
                }
                std::vector<std::vector<Scalar>> rows;
                for (const auto& s : e->set_elems) rows.push_back({s});
                return literal_rows(rows, false, e->set_elems.empty());
            }
            case ExprKind::RelLit: {
                std::vector<std::vector<Scalar>> rows;
                for (const auto& [a, b] : e->rel_elems) rows.push_back({a, b});
                return literal_rows(rows, true, e->rel_elems.empty());
            }
            case ExprKind::Union: {
                QueryPtr qa = query(e->kids[0]);
                QueryPtr qb = query(e->kids[1]);
                return union_query(qa, qb, rel);
            }
            case ExprKind::Inter: {
                QueryPtr qa = query(e->kids[0]);
                QueryPtr qb = query(e->kids[1]);
                if (opts_.mutation == Mutation::InterAsMinus)
                    return minus_query(qa, qb, rel);
                return inter_query(qa, qb, rel);
            }
            case ExprKind::SetMinus: {
                QueryPtr qa = query(e->kids[0]);
                QueryPtr qb = query(e->kids[1]);
                return minus_query(qa, qb, rel);
            }
            case ExprKind::CProd: {
                QueryPtr qa = query(e->kids[0]);
                QueryPtr qb = query(e->kids[1]);
                std::string ka = fresh("s1tmp");
                std::string kb = fresh("s2tmp");
                return make_select(
                    false, {{col(ka, kRefkey), kId}, {col(kb, kRefkey), kValue}},
                    {derived_source(qa, ka), derived_source(qb, kb)}, nullptr);
            }
            case ExprKind::Dom:
            case ExprKind::Ran: {
                QueryPtr q = query(e->kids[0]);
                std::string k = fresh("rtmp");
                bool distinct = true;
                if (e->kind == ExprKind::Dom &&
                    opts_.mutation == Mutation::DomNoDistinct)
                    distinct = false;
                const std::string& attr = e->kind == ExprKind::Dom ? kId : kValue;
                return make_select(distinct, {{col(k, attr), kRefkey}},
                                   {derived_source(q, k)}, nullptr);
            }
            case ExprKind::DomRes:
            case ExprKind::DomSub: {
                bool join_form = e->kind == ExprKind::DomRes;
                if (opts_.mutation == Mutation::DomResDomSubSwap)
                    join_form = !join_form;
                // the relation operand is emitted first
                QueryPtr qr = query(e->kids[1]);
                QueryPtr qs = query(e->kids[0]);
                return restriction(qr, qs, kId, join_form);
            }
            case ExprKind::RanRes:
            case ExprKind::RanSub: {
                QueryPtr qr = query(e->kids[0]);
                QueryPtr qs = query(e->kids[1]);
                return restriction(qr, qs, kValue, e->kind == ExprKind::RanRes);
            }
            case ExprKind::FComp: {
                QueryPtr q1 = query(e->kids[0]);
                QueryPtr q2 = query(e->kids[1]);
                std::string k1 = fresh("r1tmp");
                std::string k2 = fresh("r2tmp");
                return make_select(
                    true, {{col(k1, kId), kId}, {col(k2, kValue), kValue}},
                    {derived_source(q1, k1), derived_source(q2, k2)},
                    compare(col(k1, kValue), CompareOp::Eq, col(k2, kId)));
            }
            case ExprKind::BComp:
                // r1 circ r2 = r2 ; r1
                return query(retype(binary(ExprKind::FComp, e->kids[1], e->kids[0]),
                                    type_of(e)));
            case ExprKind::Ovl:
                // r1 <+ r2 = r2 \/ (dom(r2) <<| r1)
                return query(retype(
                    binary(ExprKind::Union, e->kids[1],
                           binary(ExprKind::DomSub, unary(ExprKind::Dom, e->kids[1]),
                                  e->kids[0])),
                    type_of(e)));
            case ExprKind::Inverse: {
                QueryPtr q = query(e->kids[0]);
                std::string k = fresh("rtmp");
                return make_select(false,
                                   {{col(k, kValue), kId}, {col(k, kId), kValue}},
                                   {derived_source(q, k)}, nullptr);
            }
            case ExprKind::Image: {
                QueryPtr qr = query(e->kids[0]);
                QueryPtr qs = query(e->kids[1]);
                std::string kr = fresh("rtmp");
                std::string ks = fresh("stmp");
                return make_select(
                    true, {{col(kr, kValue), kRefkey}},
                    {derived_source(qr, kr), derived_source(qs, ks)},
                    compare(col(kr, kId), CompareOp::Eq, col(ks, kRefkey)));
            }
            default:
                throw Untranslatable("expression kind has no query translation");
        }
    }

    PredPtr pred(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Not: return not_pred(pred(e->kids[0]));
            case ExprKind::And: {
                PredPtr a = pred(e->kids[0]);
                PredPtr b = pred(e->kids[1]);
                return and_pred(std::move(a), std::move(b));
            }
            case ExprKind::Or: {
                PredPtr a = pred(e->kids[0]);
                PredPtr b = pred(e->kids[1]);
                return or_pred(std::move(a), std::move(b));
            }
            case ExprKind::Eq: {
                EbType t = type_of(e->kids[0]);
                if (t.is_set() || t.is_rel()) {
                    // |s1 /\ s2| = |s1| & |s1| = |s2|
                    PredPtr subset = subset_eq_pred(e->kids[0], e->kids[1]);
                    SqlTerm ca = card_term(e->kids[0]);
                    SqlTerm cb = card_term(e->kids[1]);
                    return and_pred(std::move(subset),
                                    compare(std::move(ca), CompareOp::Eq,
                                            std::move(cb)));
                }
                SqlTerm lhs = scalar_term(e->kids[0]);
                SqlTerm rhs = scalar_term(e->kids[1]);
                return compare(std::move(lhs), CompareOp::Eq, std::move(rhs));
            }
            case ExprKind::SubsetEq:
                return subset_eq_pred(e->kids[0], e->kids[1]);
            case ExprKind::Subset: {
                // |s1 /\ s2| = |s1| & |s1| <> |s2|
                PredPtr subset = subset_eq_pred(e->kids[0], e->kids[1]);
                SqlTerm ca = card_term(e->kids[0]);
                SqlTerm cb = card_term(e->kids[1]);
                return and_pred(std::move(subset),
                                compare(std::move(ca), CompareOp::Ne,
                                        std::move(cb)));
            }
            case ExprKind::In: {
                // {x} <: s
                QueryPtr singleton = singleton_query(scalar_term(e->kids[0]));
                QueryPtr qs = query(e->kids[1]);
                QueryPtr inter = inter_query(singleton, qs, false);
                SqlTerm lhs = count_term_over(inter, false);
                SqlTerm rhs =
                    count_term_over(singleton_query(scalar_term(e->kids[0])), false);
                return compare(lhs, CompareOp::Eq, rhs);
            }
            default: throw Untranslatable("predicate kind has no translation");
        }
    }

  private:
    EbType type_of(const ExprPtr& e) {
        auto it = types_.find(e.get());
        if (it != types_.end()) return it->second;
        return typed(e, std::nullopt);
    }

    // Attaches a known type to a rewritten node, then typechecks the
    // rewrite. The tree is kept alive for the translator's lifetime so the
    // pointer-keyed type map never sees a reused address.
    ExprPtr retype(ExprPtr e, const EbType& t) {
        rewrites_.push_back(e);
        types_[e.get()] = t;
        typed(e, t);
        return e;
    }

    std::string fresh(const char* base) {
        return std::string(base) + std::to_string(counter_++);
    }

    QueryPtr literal_rows(const std::vector<std::vector<Scalar>>& rows, bool rel,
                          bool empty) {
        std::vector<std::string> names =
            rel ? std::vector<std::string>{kId, kValue}
                : std::vector<std::string>{kRefkey};
        if (empty) {
            std::vector<OutputColumn> cols;
            for (const auto& n : names)
                cols.push_back({lit_term(Scalar(Int(0))), n});
            return make_select(false, std::move(cols), {},
                               compare(lit_term(Scalar(Int(0))), CompareOp::Eq,
                                       lit_term(Scalar(Int(1)))));
        }
        QueryPtr out;
        for (const auto& row : rows) {
            std::vector<OutputColumn> cols;
            for (std::size_t i = 0; i < row.size(); ++i)
                cols.push_back({lit_term(row[i]), names[i]});
            QueryPtr one = make_select(false, std::move(cols), {}, nullptr);
            out = out ? make_union(out, one) : one;
        }
        return out;
    }

    QueryPtr singleton_query(SqlTerm term) {
        return make_select(false, {{std::move(term), kRefkey}}, {}, nullptr);
    }

    QueryPtr union_query(QueryPtr qa, QueryPtr qb, bool rel) {
        if (rel) {
            std::string ka = fresh("r1tmp");
            std::string kb = fresh("r2tmp");
            return make_union(
                make_select(false, {{col(ka, kId), kId}, {col(ka, kValue), kValue}},
                            {derived_source(qa, ka)}, nullptr),
                make_select(false, {{col(kb, kId), kId}, {col(kb, kValue), kValue}},
                            {derived_source(qb, kb)}, nullptr));
        }
        std::string ka = fresh("s1tmp");
        std::string kb = fresh("s2tmp");
        return make_union(make_select(false, {{col(ka, kRefkey), kRefkey}},
                                      {derived_source(qa, ka)}, nullptr),
                          make_select(false, {{col(kb, kRefkey), kRefkey}},
                                      {derived_source(qb, kb)}, nullptr));
    }

    QueryPtr inter_query(QueryPtr qa, QueryPtr qb, bool rel) {
        if (rel) {
            std::string ka = fresh("r1tmp");
            std::string kb = fresh("r2tmp");
            return make_select(
                false, {{col(ka, kId), kId}, {col(ka, kValue), kValue}},
                {derived_source(qa, ka), derived_source(qb, kb)},
                and_pred(compare(col(ka, kId), CompareOp::Eq, col(kb, kId)),
                         compare(col(ka, kValue), CompareOp::Eq, col(kb, kValue))));
        }
        std::string ka = fresh("s1tmp");
        std::string kb = fresh("s2tmp");
        return make_select(false, {{col(ka, kRefkey), kRefkey}},
                           {derived_source(qa, ka), derived_source(qb, kb)},
                           compare(col(ka, kRefkey), CompareOp::Eq,
                                   col(kb, kRefkey)));
    }

    QueryPtr minus_query(QueryPtr qa, QueryPtr qb, bool rel) {
        if (rel) {
            std::string ka = fresh("r1tmp");
            std::string kb = fresh("r2tmp");
            QueryPtr inner =
                make_select(false, {{col(kb, kId), kId}, {col(kb, kValue), kValue}},
                            {derived_source(qb, kb)}, nullptr);
            return make_select(
                false, {{col(ka, kId), kId}, {col(ka, kValue), kValue}},
                {derived_source(qa, ka)},
                not_in_subquery({col(ka, kId), col(ka, kValue)}, inner));
        }
        std::string ka = fresh("s1tmp");
        std::string kb = fresh("s2tmp");
        QueryPtr inner = make_select(false, {{col(kb, kRefkey), kRefkey}},
                                     {derived_source(qb, kb)}, nullptr);
        return make_select(false, {{col(ka, kRefkey), kRefkey}},
                           {derived_source(qa, ka)},
                           not_in_subquery({col(ka, kRefkey)}, inner));
    }

    QueryPtr restriction(QueryPtr qr, QueryPtr qs, const std::string& attr,
                         bool join_form) {
        std::string kr = fresh("rtmp");
        std::string ks = fresh("stmp");
        if (join_form) {
            return make_select(
                false, {{col(kr, kId), kId}, {col(kr, kValue), kValue}},
                {derived_source(qr, kr), derived_source(qs, ks)},
                compare(col(kr, attr), CompareOp::Eq, col(ks, kRefkey)));
        }
        QueryPtr inner = make_select(false, {{col(ks, kRefkey), kRefkey}},
                                     {derived_source(qs, ks)}, nullptr);
        return make_select(false, {{col(kr, kId), kId}, {col(kr, kValue), kValue}},
                           {derived_source(qr, kr)},
                           not_in_subquery({col(kr, attr)}, inner));
    }

    QueryPtr card_query(const ExprPtr& operand) {
        EbType t = type_of(operand);
        QueryPtr q = query(operand);
        return count_query(q, t.is_rel());
    }

    QueryPtr count_query(QueryPtr q, bool rel) {
        std::string k = fresh(rel ? "rtmp" : "stmp");
        return make_count(col(k, rel ? kId : kRefkey), derived_source(q, k));
    }

    SqlTerm count_term_over(QueryPtr q, bool rel) {
        return subquery_term(count_query(std::move(q), rel));
    }

    /// |s1 /\ s2| = |s1|, with every operand translated afresh, as the
    /// rewriting reading of the rule demands.
    PredPtr subset_eq_pred(const ExprPtr& a, const ExprPtr& b) {
        const bool rel = type_of(a).is_rel();
        QueryPtr qa = query(a);
        QueryPtr qb = query(b);
        QueryPtr inter = inter_query(std::move(qa), std::move(qb), rel);
        SqlTerm lhs = count_term_over(std::move(inter), rel);
        SqlTerm rhs = count_term_over(query(a), rel);
        return compare(std::move(lhs), CompareOp::Eq, std::move(rhs));
    }

    SqlTerm card_term(const ExprPtr& set_expr) {
        return subquery_term(card_query(set_expr));
    }

    SqlTerm scalar_term(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::IntLit: return lit_term(Scalar(e->int_value));
            case ExprKind::BoolLit: return lit_term(Scalar(e->bool_value));
            case ExprKind::Card: return card_term(e->kids[0]);
            case ExprKind::Var:
                throw Untranslatable("scalar machine variable '" + e->name + "'");
            default:
                throw Untranslatable("scalar expression has no term translation");
        }
    }

    const TypeEnv& env_;
    TranslateOptions opts_;
    TypeMap types_;
    std::vector<ExprPtr> rewrites_;
    int counter_ = 0;
};

}  // namespace

TranslatedExpr eb2sql_expr(const ExprPtr& e, const TypeEnv& env,
                           const TranslateOptions& opts,
                           std::optional<EbType> expected) {
    ExprTranslator tr(env, opts);
    tr.typed(e, expected);
    return tr.translate(e);
}

TranslatedAssignment eb2sql_assignment(const Assignment& a, const TypeEnv& env,
                                       const TranslateOptions& opts) {
    auto it = env.find(a.target);
    if (it == env.end()) throw UnboundVariable(a.target);
    const EbType target = it->second;
    if (!target.is_set() && !target.is_rel())
        throw Untranslatable("assignment to scalar variable '" + a.target + "'");

    const std::string prime = primed(a.target);
    const Expr& rhs = *a.rhs;
    auto is_target = [&](const ExprPtr& e) {
        return e->kind == ExprKind::Var && e->name == a.target;
    };

    // Statement-local aliases; the counter restarts per assignment.
    int counter = 0;
    auto fresh = [&](const char* base) {
        return std::string(base) + std::to_string(counter++);
    };
    auto key_select = [&](const char* base, const std::string& attr) {
        std::string k = fresh(base);
        return make_select(false, {{col(k, attr), attr}},
                           {named_source(prime, k)}, nullptr);
    };
    auto pair_select = [&](const char* base) {
        std::string k = fresh(base);
        return make_select(false, {{col(k, "id"), "id"}, {col(k, "value"), "value"}},
                           {named_source(prime, k)}, nullptr);
    };

    TranslatedAssignment out;
    if (!opts.force_general && target.is_set()) {
        if (rhs.kind == ExprKind::Union && is_target(rhs.kids[0])) {
            out.statements = {
                insert_ignore_select(a.target, key_select("stmp", "refkey"))};
            out.primed_def = rhs.kids[1];
            out.primed_type = target;
            return out;
        }
        if ((rhs.kind == ExprKind::SetMinus || rhs.kind == ExprKind::Inter) &&
            is_target(rhs.kids[0])) {
            out.statements = {delete_where(
                a.target, in_subquery({col(a.target, "refkey")},
                                      key_select("s1tmp", "refkey")))};
            out.primed_def =
                rhs.kind == ExprKind::SetMinus
                    ? rhs.kids[1]
                    : binary(ExprKind::SetMinus, var(a.target), rhs.kids[1]);
            out.primed_type = target;
            return out;
        }
    }
    if (!opts.force_general && target.is_rel()) {
        if (rhs.kind == ExprKind::Ovl && is_target(rhs.kids[0])) {
            SqlStatement del = delete_where(
                a.target,
                in_subquery({col(a.target, "id")}, key_select("r1tmp", "id")));
            SqlStatement ins = insert_ignore_select(a.target, pair_select("r2tmp"));
            if (opts.mutation == Mutation::OvlInsertFirst)
                out.statements = {ins, del};
            else
                out.statements = {del, ins};
            out.primed_def = rhs.kids[1];
            out.primed_type = target;
            return out;
        }
        if ((rhs.kind == ExprKind::DomSub || rhs.kind == ExprKind::DomRes) &&
            is_target(rhs.kids[1])) {
            out.statements = {delete_where(
                a.target, in_subquery({col(a.target, "id")},
                                      key_select("stmp", "refkey")))};
            out.primed_def =
                rhs.kind == ExprKind::DomSub
                    ? rhs.kids[0]
                    : binary(ExprKind::SetMinus, unary(ExprKind::Dom, var(a.target)),
                             rhs.kids[0]);
            out.primed_type = EbType::set_of(target.elem);
            return out;
        }
        if ((rhs.kind == ExprKind::RanSub || rhs.kind == ExprKind::RanRes) &&
            is_target(rhs.kids[0])) {
            out.statements = {delete_where(
                a.target, in_subquery({col(a.target, "value")},
                                      key_select("stmp", "refkey")))};
            out.primed_def =
                rhs.kind == ExprKind::RanSub
                    ? rhs.kids[1]
                    : binary(ExprKind::SetMinus, unary(ExprKind::Ran, var(a.target)),
                             rhs.kids[1]);
            out.primed_type = EbType::set_of(target.value);
            return out;
        }
    }

    // General rules: delete everything, reinsert the primed value.
    if (target.is_set()) {
        out.statements = {delete_all(a.target),
                          insert_ignore_select(a.target,
                                               key_select("s1tmp", "refkey"))};
    } else {
        out.statements = {delete_all(a.target),
                          insert_ignore_select(a.target, pair_select("r1tmp"))};
    }
    out.primed_def = a.rhs;
    out.primed_type = target;
    return out;
}

Database eb2sql_o(const Assignment& a, const Database& db, const TypeEnv& env,
                  const TranslateOptions& opts, DupStats* stats) {
    TranslatedAssignment ta = eb2sql_assignment(a, env, opts);
    TranslatedExpr te = eb2sql_expr(ta.primed_def, env, opts, ta.primed_type);
    if (te.is_pred())
        throw Untranslatable("primed definition translated to a predicate");
    Relation value = eval_query(te.query, db, stats);
    return db_update(db, primed(a.target), value);
}

Database eb2sql_os(const ActionSet& as, const Database& db, const TypeEnv& env,
                   const TranslateOptions& opts, DupStats* stats) {
    Database current = db;
    for (const auto& a : as.assignments)
        current = eb2sql_o(a, current, env, opts, stats);
    return current;
}

Database eb2sql_as(const ActionSet& as, const Database& db, const TypeEnv& env,
                   const TranslateOptions& opts, DupStats* stats) {
    const ExecOptions exec_opts = opts.exec_options();
    Database current = db;
    for (std::size_t i = 0; i < as.assignments.size(); ++i) {
        const Assignment& a = as.assignments[i];
        try {
            TranslatedAssignment ta = eb2sql_assignment(a, env, opts);
            current = exec_sequence(ta.statements, current, exec_opts, stats);
            current = db_remove(current, primed(a.target));
        } catch (const Error& e) {
            throw Error("assignment " + std::to_string(i) + " (" + a.target +
                        "): " + e.what());
        }
    }
    return current;
}

Database eb2sql_res(const ActionSet& as, const Database& db, const TypeEnv& env,
                    const TranslateOptions& opts, DupStats* stats) {
    return eb2sql_as(as, eb2sql_os(as, db, env, opts, stats), env, opts, stats);
}

}  // namespace ebsql
