#include "ebsql/ast.hpp"

#include <sstream>

namespace ebsql {

std::string EbType::str() const {
    switch (tag) {
        case Tag::Int: return "INT";
        case Tag::Bool: return "BOOL";
        case Tag::Set: return "POW(" + to_string(elem) + ")";
        case Tag::Rel: return to_string(elem) + " <-> " + to_string(value);
    }
    return "?";
}

bool is_predicate_kind(ExprKind k) {
    switch (k) {
        case ExprKind::Not:
        case ExprKind::And:
        case ExprKind::Or:
        case ExprKind::Eq:
        case ExprKind::In:
        case ExprKind::Subset:
        case ExprKind::SubsetEq: return true;
        default: return false;
    }
}

ExprPtr var(const std::string& name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->name = name;
    return e;
}

ExprPtr int_lit(Int v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::IntLit;
    e->int_value = std::move(v);
    return e;
}

ExprPtr bool_lit(bool b) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::BoolLit;
    e->bool_value = b;
    return e;
}

ExprPtr set_lit(std::vector<Scalar> elems) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::SetLit;
    e->set_elems = std::move(elems);
    return e;
}

ExprPtr rel_lit(std::vector<std::pair<Scalar, Scalar>> elems) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::RelLit;
    e->rel_elems = std::move(elems);
    return e;
}

ExprPtr unary(ExprKind k, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = {std::move(a)};
    return e;
}

ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Var:
            if (a.name != b.name) return false;
            break;
        case ExprKind::IntLit:
            if (a.int_value != b.int_value) return false;
            break;
        case ExprKind::BoolLit:
            if (a.bool_value != b.bool_value) return false;
            break;
        case ExprKind::SetLit:
            if (a.set_elems != b.set_elems) return false;
            break;
        case ExprKind::RelLit:
            if (a.rel_elems != b.rel_elems) return false;
            break;
        default: break;
    }
    if (a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!(*a.kids[i] == *b.kids[i])) return false;
    return true;
}

namespace {

// Binding strength, loosest to tightest; mirrors the parser.
constexpr int kOr = 0;
constexpr int kAnd = 1;
constexpr int kNot = 2;
constexpr int kCompare = 3;
constexpr int kUnionMinus = 10;
constexpr int kInter = 11;
constexpr int kCProd = 12;
constexpr int kRestrict = 13;
constexpr int kCompose = 14;
constexpr int kPostfix = 15;
constexpr int kAtom = 16;

int level_of(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Or: return kOr;
        case ExprKind::And: return kAnd;
        case ExprKind::Not: return kNot;
        case ExprKind::Eq:
        case ExprKind::In:
        case ExprKind::Subset:
        case ExprKind::SubsetEq: return kCompare;
        case ExprKind::Union:
        case ExprKind::SetMinus: return kUnionMinus;
        case ExprKind::Inter: return kInter;
        case ExprKind::CProd: return kCProd;
        case ExprKind::DomRes:
        case ExprKind::DomSub:
        case ExprKind::RanRes:
        case ExprKind::RanSub: return kRestrict;
        case ExprKind::FComp:
        case ExprKind::BComp:
        case ExprKind::Ovl: return kCompose;
        case ExprKind::Inverse:
        case ExprKind::Image: return kPostfix;
        default: return kAtom;
    }
}

const char* op_token(ExprKind k) {
    switch (k) {
        case ExprKind::Union: return "\\/";
        case ExprKind::Inter: return "/\\";
        case ExprKind::SetMinus: return "\\";
        case ExprKind::CProd: return "**";
        case ExprKind::DomRes: return "<|";
        case ExprKind::DomSub: return "<<|";
        case ExprKind::RanRes: return "|>";
        case ExprKind::RanSub: return "|>>";
        case ExprKind::FComp: return ";";
        case ExprKind::BComp: return "circ";
        case ExprKind::Ovl: return "<+";
        case ExprKind::Eq: return "=";
        case ExprKind::In: return ":";
        case ExprKind::Subset: return "<<:";
        case ExprKind::SubsetEq: return "<:";
        case ExprKind::And: return "&";
        case ExprKind::Or: return "or";
        default: return "?";
    }
}

void print(std::ostream& os, const Expr& e, int min_level) {
    const int lvl = level_of(e);
    const bool parens = lvl < min_level;
    if (parens) os << "(";
    switch (e.kind) {
        case ExprKind::Var: os << e.name; break;
        case ExprKind::IntLit: os << e.int_value.str(); break;
        case ExprKind::BoolLit: os << (e.bool_value ? "true" : "false"); break;
        case ExprKind::SetLit: {
            os << "{";
            bool first = true;
            for (const auto& s : e.set_elems) {
                if (!first) os << ", ";
                first = false;
                os << s.str();
            }
            os << "}";
            break;
        }
        case ExprKind::RelLit: {
            os << "{";
            bool first = true;
            for (const auto& [k, v] : e.rel_elems) {
                if (!first) os << ", ";
                first = false;
                os << k.str() << " |-> " << v.str();
            }
            os << "}";
            break;
        }
        case ExprKind::Card:
        case ExprKind::Dom:
        case ExprKind::Ran: {
            os << (e.kind == ExprKind::Card ? "card"
                   : e.kind == ExprKind::Dom ? "dom"
                                             : "ran")
               << "(";
            print(os, *e.kids[0], kUnionMinus);
            os << ")";
            break;
        }
        case ExprKind::Inverse:
            print(os, *e.kids[0], kPostfix);
            os << "~";
            break;
        case ExprKind::Image:
            print(os, *e.kids[0], kPostfix);
            os << "[";
            print(os, *e.kids[1], kUnionMinus);
            os << "]";
            break;
        case ExprKind::Not:
            os << "not ";
            print(os, *e.kids[0], kNot);
            break;
        case ExprKind::Eq:
        case ExprKind::In:
        case ExprKind::Subset:
        case ExprKind::SubsetEq:
            print(os, *e.kids[0], kUnionMinus);
            os << " " << op_token(e.kind) << " ";
            print(os, *e.kids[1], kUnionMinus);
            break;
        default:
            // Left-associative binary operator.
            print(os, *e.kids[0], lvl);
            os << " " << op_token(e.kind) << " ";
            print(os, *e.kids[1], lvl + 1);
            break;
    }
    if (parens) os << ")";
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    print(os, *e, 0);
    return os.str();
}

std::string print_actions(const ActionSet& as) {
    std::ostringstream os;
    bool first = true;
    for (const auto& a : as.assignments) {
        if (!first) os << " || ";
        first = false;
        os << a.target << " := ";
        print(os, *a.rhs, kUnionMinus);
    }
    return os.str();
}

}  // namespace ebsql
