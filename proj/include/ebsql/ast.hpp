#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebsql/core.hpp"

namespace ebsql {

/// Types of the Event-B fragment: scalars, sets of scalars, relations
/// between scalars. No nesting.
struct EbType {
    enum class Tag { Int, Bool, Set, Rel };
    Tag tag = Tag::Int;
    ScalarKind elem = ScalarKind::Int;   // Set element / Rel key kind
    ScalarKind value = ScalarKind::Int;  // Rel value kind

    static EbType ints() { return {Tag::Int, ScalarKind::Int, ScalarKind::Int}; }
    static EbType bools() { return {Tag::Bool, ScalarKind::Bool, ScalarKind::Bool}; }
    static EbType set_of(ScalarKind k) { return {Tag::Set, k, k}; }
    static EbType rel_of(ScalarKind k, ScalarKind v) { return {Tag::Rel, k, v}; }

    bool is_set() const { return tag == Tag::Set; }
    bool is_rel() const { return tag == Tag::Rel; }
    bool is_scalar() const { return tag == Tag::Int || tag == Tag::Bool; }

    friend bool operator==(const EbType& a, const EbType& b) {
        if (a.tag != b.tag) return false;
        switch (a.tag) {
            case Tag::Int:
            case Tag::Bool: return true;
            case Tag::Set: return a.elem == b.elem;
            case Tag::Rel: return a.elem == b.elem && a.value == b.value;
        }
        return false;
    }
    friend bool operator!=(const EbType& a, const EbType& b) { return !(a == b); }

    std::string str() const;
};

/// One node kind per operator of the language. Expressions and predicates
/// share the tree; the grammar keeps them in separate positions and the
/// type checker validates operand sorts.
enum class ExprKind {
    // terminals
    Var,
    IntLit,
    BoolLit,
    SetLit,
    RelLit,
    // set/relation expressions
    Union,
    Inter,
    SetMinus,
    Card,
    CProd,
    Dom,
    Ran,
    DomRes,
    DomSub,
    RanRes,
    RanSub,
    FComp,    // r1 ; r2
    BComp,    // r1 circ r2
    Ovl,      // r1 <+ r2
    Inverse,  // r~
    Image,    // r[s]
    // predicates
    Not,
    And,
    Or,
    Eq,
    In,        // x : s
    Subset,    // s1 <<: s2
    SubsetEq,  // s1 <: s2
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    std::string name;                                  // Var
    Int int_value;                                     // IntLit
    bool bool_value = false;                           // BoolLit
    std::vector<Scalar> set_elems;                     // SetLit
    std::vector<std::pair<Scalar, Scalar>> rel_elems;  // RelLit
    std::vector<ExprPtr> kids;
};

bool is_predicate_kind(ExprKind k);

// Node builders.
ExprPtr var(const std::string& name);
ExprPtr int_lit(Int v);
ExprPtr bool_lit(bool b);
ExprPtr set_lit(std::vector<Scalar> elems);
ExprPtr rel_lit(std::vector<std::pair<Scalar, Scalar>> elems);
ExprPtr unary(ExprKind k, ExprPtr a);
ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b);

/// v := E with E of the same set/relation type as v.
struct Assignment {
    std::string target;
    ExprPtr rhs;
};

/// The body of an event: simultaneous assignments, each variable assigned
/// at most once. May be empty.
struct ActionSet {
    std::vector<Assignment> assignments;
};

bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

/// Concrete syntax (Rodin ASCII), parenthesized only where precedence
/// demands; parse(print(e)) == e.
std::string print_expr(const ExprPtr& e);
std::string print_actions(const ActionSet& as);

}  // namespace ebsql
