#include "ebsql/typecheck.hpp"

#include <optional>

namespace ebsql {

namespace {

struct Checker {
    const TypeEnv& env;
    TypeMap* types;

    void record(const Expr* node, const EbType& t) {
        if (types) (*types)[node] = t;
    }

    // Pushes a context-determined type down a subtree whose own inference
    // was ambiguous (chains of set operators over empty literals).
    void resolve(const ExprPtr& e, const EbType& t) {
        if (types && types->count(e.get())) return;
        switch (e->kind) {
            case ExprKind::SetLit:
                if (!e->set_elems.empty())
                    throw TypeError("internal: non-empty literal left unresolved");
                if (!t.is_set() && !t.is_rel())
                    throw TypeError("empty literal used where " + t.str() +
                                    " is required");
                record(e.get(), t);
                return;
            case ExprKind::Union:
            case ExprKind::Inter:
            case ExprKind::SetMinus:
            case ExprKind::Ovl:
                record(e.get(), t);
                resolve(e->kids[0], t);
                resolve(e->kids[1], t);
                return;
            default:
                throw TypeError("ambiguous empty collection literal");
        }
    }

    ScalarKind scalar_kind_of(const EbType& t, const Expr* node) {
        if (t.tag == EbType::Tag::Int) return ScalarKind::Int;
        if (t.tag == EbType::Tag::Bool) return ScalarKind::Bool;
        (void)node;
        throw TypeError("expected a scalar, found " + t.str());
    }

    EbType require(const ExprPtr& e, const std::optional<EbType>& t,
                   const std::string& what) {
        if (!t) throw TypeError("ambiguous empty collection literal in " + what);
        (void)e;
        return *t;
    }

    // Returns nullopt when the subtree's sort cannot be determined without
    // context (only possible for empty literals and same-type set operators
    // over them).
    std::optional<EbType> infer(const ExprPtr& e) {
        std::optional<EbType> result = infer_impl(e);
        if (result) record(e.get(), *result);
        return result;
    }

    std::optional<EbType> infer_impl(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Var: {
                if (is_primed(e->name))
                    throw TypeError("primed name '" + e->name +
                                    "' in a user expression");
                auto it = env.find(e->name);
                if (it == env.end()) throw UnboundVariable(e->name);
                return it->second;
            }
            case ExprKind::IntLit: return EbType::ints();
            case ExprKind::BoolLit: return EbType::bools();
            case ExprKind::SetLit: {
                if (e->set_elems.empty()) {
                    // A previous resolution (recorded in the map) sticks; this
                    // matters when rewritten trees share resolved literals.
                    if (types) {
                        auto it = types->find(e.get());
                        if (it != types->end()) return it->second;
                    }
                    return std::nullopt;
                }
                ScalarKind k = e->set_elems.front().kind();
                for (const auto& s : e->set_elems)
                    if (s.kind() != k)
                        throw TypeError("mixed scalar kinds in set literal");
                return EbType::set_of(k);
            }
            case ExprKind::RelLit: {
                if (e->rel_elems.empty()) return std::nullopt;
                ScalarKind k1 = e->rel_elems.front().first.kind();
                ScalarKind k2 = e->rel_elems.front().second.kind();
                for (const auto& [a, b] : e->rel_elems)
                    if (a.kind() != k1 || b.kind() != k2)
                        throw TypeError("mixed scalar kinds in relation literal");
                return EbType::rel_of(k1, k2);
            }
            case ExprKind::Union:
            case ExprKind::Inter:
            case ExprKind::SetMinus:
            case ExprKind::Ovl: {
                auto ta = infer(e->kids[0]);
                auto tb = infer(e->kids[1]);
                if (!ta && !tb) return std::nullopt;
                if (!ta) resolve(e->kids[0], *tb);
                if (!tb) resolve(e->kids[1], *ta);
                EbType t = ta ? *ta : *tb;
                if (ta && tb && *ta != *tb)
                    throw TypeError("operands of set operator differ: " + ta->str() +
                                    " vs " + tb->str());
                if (!t.is_set() && !t.is_rel())
                    throw TypeError("set operator applied to " + t.str());
                if (e->kind == ExprKind::Ovl && !t.is_rel())
                    throw TypeError("overriding applied to " + t.str());
                return t;
            }
            case ExprKind::Card: {
                EbType t = require(e->kids[0], infer(e->kids[0]), "card");
                if (!t.is_set() && !t.is_rel())
                    throw TypeError("card applied to " + t.str());
                return EbType::ints();
            }
            case ExprKind::CProd: {
                EbType ta = require(e->kids[0], infer(e->kids[0]), "product");
                EbType tb = require(e->kids[1], infer(e->kids[1]), "product");
                if (!ta.is_set() || !tb.is_set())
                    throw TypeError("product operands must be scalar sets");
                return EbType::rel_of(ta.elem, tb.elem);
            }
            case ExprKind::Dom:
            case ExprKind::Ran: {
                EbType t = require(e->kids[0], infer(e->kids[0]), "dom/ran");
                if (!t.is_rel()) throw TypeError("dom/ran applied to " + t.str());
                return EbType::set_of(e->kind == ExprKind::Dom ? t.elem : t.value);
            }
            case ExprKind::DomRes:
            case ExprKind::DomSub: {
                EbType ts = require(e->kids[0], infer(e->kids[0]), "restriction");
                EbType tr = require(e->kids[1], infer(e->kids[1]), "restriction");
                if (!ts.is_set() || !tr.is_rel() || ts.elem != tr.elem)
                    throw TypeError("domain restriction expects SET(k) and REL(k, v)");
                return tr;
            }
            case ExprKind::RanRes:
            case ExprKind::RanSub: {
                EbType tr = require(e->kids[0], infer(e->kids[0]), "restriction");
                EbType ts = require(e->kids[1], infer(e->kids[1]), "restriction");
                if (!tr.is_rel() || !ts.is_set() || ts.elem != tr.value)
                    throw TypeError("range restriction expects REL(k, v) and SET(v)");
                return tr;
            }
            case ExprKind::FComp: {
                EbType ta = require(e->kids[0], infer(e->kids[0]), "composition");
                EbType tb = require(e->kids[1], infer(e->kids[1]), "composition");
                if (!ta.is_rel() || !tb.is_rel() || ta.value != tb.elem)
                    throw TypeError("forward composition kinds do not chain");
                return EbType::rel_of(ta.elem, tb.value);
            }
            case ExprKind::BComp: {
                EbType ta = require(e->kids[0], infer(e->kids[0]), "composition");
                EbType tb = require(e->kids[1], infer(e->kids[1]), "composition");
                if (!ta.is_rel() || !tb.is_rel() || tb.value != ta.elem)
                    throw TypeError("backward composition kinds do not chain");
                return EbType::rel_of(tb.elem, ta.value);
            }
            case ExprKind::Inverse: {
                EbType t = require(e->kids[0], infer(e->kids[0]), "inverse");
                if (!t.is_rel()) throw TypeError("inverse applied to " + t.str());
                return EbType::rel_of(t.value, t.elem);
            }
            case ExprKind::Image: {
                EbType tr = require(e->kids[0], infer(e->kids[0]), "image");
                EbType ts = require(e->kids[1], infer(e->kids[1]), "image");
                if (!tr.is_rel() || !ts.is_set() || ts.elem != tr.elem)
                    throw TypeError("image expects REL(k, v) and SET(k)");
                return EbType::set_of(tr.value);
            }
            case ExprKind::Not: {
                EbType t = require(e->kids[0], infer(e->kids[0]), "not");
                if (t.tag != EbType::Tag::Bool)
                    throw TypeError("'not' applied to " + t.str());
                return EbType::bools();
            }
            case ExprKind::And:
            case ExprKind::Or: {
                EbType ta = require(e->kids[0], infer(e->kids[0]), "connective");
                EbType tb = require(e->kids[1], infer(e->kids[1]), "connective");
                if (ta.tag != EbType::Tag::Bool || tb.tag != EbType::Tag::Bool)
                    throw TypeError("boolean connective over non-boolean operands");
                return EbType::bools();
            }
            case ExprKind::Eq:
            case ExprKind::Subset:
            case ExprKind::SubsetEq: {
                auto ta = infer(e->kids[0]);
                auto tb = infer(e->kids[1]);
                if (!ta && !tb)
                    throw TypeError("ambiguous empty literals on both sides");
                if (!ta) resolve(e->kids[0], *tb);
                if (!tb) resolve(e->kids[1], *ta);
                EbType a = ta ? *ta : *tb;
                EbType b = tb ? *tb : *ta;
                if (a != b)
                    throw TypeError("comparison operands differ: " + a.str() +
                                    " vs " + b.str());
                if (e->kind != ExprKind::Eq && !a.is_set() && !a.is_rel())
                    throw TypeError("subset comparison over scalars");
                return EbType::bools();
            }
            case ExprKind::In: {
                EbType tx = require(e->kids[0], infer(e->kids[0]), "membership");
                ScalarKind k = scalar_kind_of(tx, e->kids[0].get());
                auto ts = infer(e->kids[1]);
                if (!ts) {
                    resolve(e->kids[1], EbType::set_of(k));
                    ts = EbType::set_of(k);
                }
                if (!ts->is_set() || ts->elem != k)
                    throw TypeError("membership expects a set of " + to_string(k));
                return EbType::bools();
            }
        }
        throw TypeError("unreachable expression kind");
    }
};

}  // namespace

EbType typecheck_expr(const ExprPtr& e, const TypeEnv& env, TypeMap* types) {
    Checker ck{env, types};
    auto t = ck.infer(e);
    if (!t) throw TypeError("ambiguous empty collection literal");
    return *t;
}

std::optional<EbType> infer_expr(const ExprPtr& e, const TypeEnv& env,
                                 TypeMap* types) {
    Checker ck{env, types};
    return ck.infer(e);
}

void resolve_empty(const ExprPtr& e, const EbType& t, TypeMap* types) {
    static const TypeEnv kEmpty;
    Checker ck{kEmpty, types};
    ck.resolve(e, t);
}

void typecheck_actions(const ActionSet& as, const TypeEnv& env, TypeMap* types) {
    for (std::size_t i = 0; i < as.assignments.size(); ++i)
        for (std::size_t j = i + 1; j < as.assignments.size(); ++j)
            if (as.assignments[i].target == as.assignments[j].target)
                throw DuplicateTarget(as.assignments[i].target);
    for (const auto& a : as.assignments) {
        if (is_primed(a.target))
            throw TypeError("assignment to primed name '" + a.target + "'");
        auto it = env.find(a.target);
        if (it == env.end()) throw UnboundVariable(a.target);
        const EbType& target = it->second;
        if (!target.is_set() && !target.is_rel())
            throw TypeError("assignment target '" + a.target +
                            "' is scalar; only set and relation variables are "
                            "assignable");
        Checker ck{env, types};
        auto t = ck.infer(a.rhs);
        if (!t) {
            ck.resolve(a.rhs, target);
            t = target;
        }
        if (*t != target)
            throw TypeError("assignment to '" + a.target + "': expected " +
                            target.str() + ", found " + t->str());
    }
}

}  // namespace ebsql
