#include "ebsql/eb_eval.hpp"

#include <algorithm>

namespace ebsql {

namespace {

using Set = EbValue::Set;
using Rel = EbValue::Rel;

// The empty collection literal evaluates to an empty set value; coerce it
// where a relation is expected (and vice versa).
Set to_set(const EbValue& v) {
    if (v.is_rel() && v.as_rel().empty()) return {};
    return v.as_set();
}

Rel to_rel(const EbValue& v) {
    if (v.is_set() && v.as_set().empty()) return {};
    return v.as_rel();
}

bool value_eq(const EbValue& a, const EbValue& b) {
    // Equality demands matching shapes; the checker guarantees them up to
    // the empty set/relation ambiguity.
    if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
    if (a.is_bool() && b.is_bool()) return a.as_bool() == b.as_bool();
    if ((a.is_set() || a.is_rel()) && (b.is_set() || b.is_rel())) {
        if (a.is_set() != b.is_set()) {
            bool a_empty = a.is_set() ? a.as_set().empty() : a.as_rel().empty();
            bool b_empty = b.is_set() ? b.as_set().empty() : b.as_rel().empty();
            if (a_empty || b_empty) return a_empty && b_empty;
            throw KindMismatch("equality between a set and a relation");
        }
        return a.is_set() ? a.as_set() == b.as_set() : a.as_rel() == b.as_rel();
    }
    throw KindMismatch("equality between values of different shapes");
}

Set set_union(const Set& a, const Set& b) {
    Set out = a;
    out.insert(b.begin(), b.end());
    return out;
}

Rel rel_union(const Rel& a, const Rel& b) {
    Rel out = a;
    out.insert(b.begin(), b.end());
    return out;
}

Set dom_of(const Rel& r) {
    Set out;
    for (const auto& [x, y] : r) out.insert(x);
    return out;
}

Set ran_of(const Rel& r) {
    Set out;
    for (const auto& [x, y] : r) out.insert(y);
    return out;
}

}  // namespace

EbValue eval_expr(const ExprPtr& e, const MachineState& m) {
    switch (e->kind) {
        case ExprKind::Var: return state_lookup(m, e->name);
        case ExprKind::IntLit: return EbValue(e->int_value);
        case ExprKind::BoolLit: return EbValue(e->bool_value);
        case ExprKind::SetLit: {
            Set s(e->set_elems.begin(), e->set_elems.end());
            return EbValue(std::move(s));
        }
        case ExprKind::RelLit: {
            Rel r(e->rel_elems.begin(), e->rel_elems.end());
            return EbValue(std::move(r));
        }
        case ExprKind::Union: {
            EbValue a = eval_expr(e->kids[0], m);
            EbValue b = eval_expr(e->kids[1], m);
            if (a.is_rel() || b.is_rel()) return EbValue(rel_union(to_rel(a), to_rel(b)));
            return EbValue(set_union(to_set(a), to_set(b)));
        }
        case ExprKind::Inter: {
            EbValue a = eval_expr(e->kids[0], m);
            EbValue b = eval_expr(e->kids[1], m);
            if (a.is_rel() || b.is_rel()) {
                Rel out;
                const Rel& rb = to_rel(b);
                for (const auto& p : to_rel(a))
                    if (rb.count(p)) out.insert(p);
                return EbValue(std::move(out));
            }
            Set out;
            const Set& sb = to_set(b);
            for (const auto& x : to_set(a))
                if (sb.count(x)) out.insert(x);
            return EbValue(std::move(out));
        }
        case ExprKind::SetMinus: {
            EbValue a = eval_expr(e->kids[0], m);
            EbValue b = eval_expr(e->kids[1], m);
            if (a.is_rel() || b.is_rel()) {
                Rel out;
                const Rel& rb = to_rel(b);
                for (const auto& p : to_rel(a))
                    if (!rb.count(p)) out.insert(p);
                return EbValue(std::move(out));
            }
            Set out;
            const Set& sb = to_set(b);
            for (const auto& x : to_set(a))
                if (!sb.count(x)) out.insert(x);
            return EbValue(std::move(out));
        }
        case ExprKind::Card: {
            EbValue a = eval_expr(e->kids[0], m);
            std::size_t n = a.is_rel() ? a.as_rel().size() : a.as_set().size();
            return EbValue(Int(n));
        }
        case ExprKind::CProd: {
            Set a = to_set(eval_expr(e->kids[0], m));
            Set b = to_set(eval_expr(e->kids[1], m));
            Rel out;
            for (const auto& x : a)
                for (const auto& y : b) out.emplace(x, y);
            return EbValue(std::move(out));
        }
        case ExprKind::Dom: return EbValue(dom_of(to_rel(eval_expr(e->kids[0], m))));
        case ExprKind::Ran: return EbValue(ran_of(to_rel(eval_expr(e->kids[0], m))));
        case ExprKind::DomRes: {
            Set s = to_set(eval_expr(e->kids[0], m));
            Rel r = to_rel(eval_expr(e->kids[1], m));
            Rel out;
            for (const auto& p : r)
                if (s.count(p.first)) out.insert(p);
            return EbValue(std::move(out));
        }
        case ExprKind::DomSub: {
            Set s = to_set(eval_expr(e->kids[0], m));
            Rel r = to_rel(eval_expr(e->kids[1], m));
            Rel out;
            for (const auto& p : r)
                if (!s.count(p.first)) out.insert(p);
            return EbValue(std::move(out));
        }
        case ExprKind::RanRes: {
            Rel r = to_rel(eval_expr(e->kids[0], m));
            Set s = to_set(eval_expr(e->kids[1], m));
            Rel out;
            for (const auto& p : r)
                if (s.count(p.second)) out.insert(p);
            return EbValue(std::move(out));
        }
        case ExprKind::RanSub: {
            Rel r = to_rel(eval_expr(e->kids[0], m));
            Set s = to_set(eval_expr(e->kids[1], m));
            Rel out;
            for (const auto& p : r)
                if (!s.count(p.second)) out.insert(p);
            return EbValue(std::move(out));
        }
        case ExprKind::FComp: {
            Rel a = to_rel(eval_expr(e->kids[0], m));
            Rel b = to_rel(eval_expr(e->kids[1], m));
            Rel out;
            for (const auto& [x, z1] : a)
                for (const auto& [z2, y] : b)
                    if (eq_checked(z1, z2)) out.emplace(x, y);
            return EbValue(std::move(out));
        }
        case ExprKind::BComp:
            // r1 circ r2 = r2 ; r1
            return eval_expr(binary(ExprKind::FComp, e->kids[1], e->kids[0]), m);
        case ExprKind::Ovl: {
            // r1 <+ r2 = r2 \/ (dom(r2) <<| r1)
            Rel r1 = to_rel(eval_expr(e->kids[0], m));
            Rel r2 = to_rel(eval_expr(e->kids[1], m));
            Set d2 = dom_of(r2);
            Rel out = r2;
            for (const auto& p : r1)
                if (!d2.count(p.first)) out.insert(p);
            return EbValue(std::move(out));
        }
        case ExprKind::Inverse: {
            Rel r = to_rel(eval_expr(e->kids[0], m));
            Rel out;
            for (const auto& [x, y] : r) out.emplace(y, x);
            return EbValue(std::move(out));
        }
        case ExprKind::Image: {
            Rel r = to_rel(eval_expr(e->kids[0], m));
            Set s = to_set(eval_expr(e->kids[1], m));
            Set out;
            for (const auto& [x, y] : r)
                if (s.count(x)) out.insert(y);
            return EbValue(std::move(out));
        }
        case ExprKind::Not:
            return EbValue(!eval_expr(e->kids[0], m).as_bool());
        case ExprKind::And:
            return EbValue(eval_expr(e->kids[0], m).as_bool() &&
                           eval_expr(e->kids[1], m).as_bool());
        case ExprKind::Or:
            return EbValue(eval_expr(e->kids[0], m).as_bool() ||
                           eval_expr(e->kids[1], m).as_bool());
        case ExprKind::Eq:
            return EbValue(
                value_eq(eval_expr(e->kids[0], m), eval_expr(e->kids[1], m)));
        case ExprKind::In: {
            EbValue x = eval_expr(e->kids[0], m);
            Set s = to_set(eval_expr(e->kids[1], m));
            Scalar sc = x.is_int() ? Scalar(x.as_int()) : Scalar(x.as_bool());
            for (const auto& el : s)
                if (eq_checked(el, sc)) return EbValue(true);
            return EbValue(false);
        }
        case ExprKind::Subset:
        case ExprKind::SubsetEq: {
            EbValue a = eval_expr(e->kids[0], m);
            EbValue b = eval_expr(e->kids[1], m);
            bool subset_eq;
            bool equal;
            if (a.is_rel() || b.is_rel()) {
                const Rel& ra = to_rel(a);
                const Rel& rb = to_rel(b);
                subset_eq = std::all_of(ra.begin(), ra.end(), [&](const auto& p) {
                    return rb.count(p) > 0;
                });
                equal = ra == rb;
            } else {
                const Set& sa = to_set(a);
                const Set& sb = to_set(b);
                subset_eq = std::all_of(sa.begin(), sa.end(), [&](const auto& x) {
                    return sb.count(x) > 0;
                });
                equal = sa == sb;
            }
            return EbValue(e->kind == ExprKind::SubsetEq ? subset_eq
                                                         : (subset_eq && !equal));
        }
    }
    throw KindMismatch("unreachable expression kind");
}

MachineState apply_assignment(const Assignment& a, const MachineState& m) {
    return state_update(m, a.target, eval_expr(a.rhs, m));
}

MachineState eval_actions(const ActionSet& as, const MachineState& m) {
    // Evaluate all right hand sides against the frozen pre-state, then
    // merge the rebindings; simultaneity is structural.
    std::vector<std::pair<std::string, EbValue>> updates;
    updates.reserve(as.assignments.size());
    for (const auto& a : as.assignments)
        updates.emplace_back(a.target, eval_expr(a.rhs, m));
    MachineState out = m;
    for (auto& [name, value] : updates) out[name] = std::move(value);
    return out;
}

}  // namespace ebsql
