#include <doctest.h>

#include "ebsql/gen.hpp"
#include "ebsql/parse.hpp"

using namespace ebsql;

TEST_CASE("grammar-forced shapes") {
    ExprPtr e = parse_expr("s \\/ t");
    CHECK(e->kind == ExprKind::Union);
    CHECK(e->kids[0]->kind == ExprKind::Var);
    CHECK(e->kids[0]->name == "s");
    CHECK(e->kids[1]->name == "t");

    ExprPtr d = parse_expr("{1} <<| r");
    CHECK(d->kind == ExprKind::DomSub);
    CHECK(d->kids[0]->kind == ExprKind::SetLit);
    REQUIRE(d->kids[0]->set_elems.size() == 1);
    CHECK(d->kids[0]->set_elems[0] == Scalar(Int(1)));
    CHECK(d->kids[1]->name == "r");

    ExprPtr p = parse_expr("card(s) = 2 & not (1 : t)");
    CHECK(p->kind == ExprKind::And);
    CHECK(p->kids[0]->kind == ExprKind::Eq);
    CHECK(p->kids[0]->kids[0]->kind == ExprKind::Card);
    CHECK(p->kids[0]->kids[1]->kind == ExprKind::IntLit);
    CHECK(p->kids[0]->kids[1]->int_value == 2);
    CHECK(p->kids[1]->kind == ExprKind::Not);
    CHECK(p->kids[1]->kids[0]->kind == ExprKind::In);
}

TEST_CASE("precedence layers") {
    // \/ and \ are left-associative peers, tighter than comparisons
    CHECK(*parse_expr("a \\ b \\/ c") ==
          *binary(ExprKind::Union, binary(ExprKind::SetMinus, var("a"), var("b")),
                  var("c")));
    // /\ binds tighter than \/
    CHECK(*parse_expr("a \\/ b /\\ c") ==
          *binary(ExprKind::Union, var("a"),
                  binary(ExprKind::Inter, var("b"), var("c"))));
    // ; binds tighter than <|
    CHECK(*parse_expr("s <| r ; q") ==
          *binary(ExprKind::DomRes, var("s"),
                  binary(ExprKind::FComp, var("r"), var("q"))));
    // postfix binds tightest
    CHECK(*parse_expr("r ; q~") ==
          *binary(ExprKind::FComp, var("r"), unary(ExprKind::Inverse, var("q"))));
    CHECK(*parse_expr("(r ; q)~") ==
          *unary(ExprKind::Inverse, binary(ExprKind::FComp, var("r"), var("q"))));
    // image
    CHECK(*parse_expr("r[s \\/ t]") ==
          *binary(ExprKind::Image, var("r"),
                  binary(ExprKind::Union, var("s"), var("t"))));
    // not binds tighter than &, which binds tighter than or
    CHECK(*parse_expr("not 1 : s & 2 : s or 3 : s") ==
          *binary(ExprKind::Or,
                  binary(ExprKind::And,
                         unary(ExprKind::Not,
                               binary(ExprKind::In, int_lit(Int(1)), var("s"))),
                         binary(ExprKind::In, int_lit(Int(2)), var("s"))),
                  binary(ExprKind::In, int_lit(Int(3)), var("s"))));
}

TEST_CASE("parenthesized predicates vs parenthesized expressions") {
    CHECK(parse_expr("(s \\/ t) <: u")->kind == ExprKind::SubsetEq);
    CHECK(parse_expr("(card(s) = 2) & 1 : t")->kind == ExprKind::And);
    CHECK(parse_expr("((1 : s) or (2 : t)) & 3 : u")->kind == ExprKind::And);
}

TEST_CASE("literals") {
    ExprPtr s = parse_expr("{1, -2, 3}");
    REQUIRE(s->kind == ExprKind::SetLit);
    CHECK(s->set_elems.size() == 3);
    CHECK(s->set_elems[1] == Scalar(Int(-2)));

    ExprPtr r = parse_expr("{1 |-> 2, 3 |-> 4}");
    REQUIRE(r->kind == ExprKind::RelLit);
    CHECK(r->rel_elems.size() == 2);

    ExprPtr b = parse_expr("{true, false}");
    REQUIRE(b->kind == ExprKind::SetLit);
    CHECK(b->set_elems[0] == Scalar(true));

    CHECK(parse_expr("{}")->kind == ExprKind::SetLit);
    CHECK(parse_expr("{}")->set_elems.empty());

    // integers are arbitrary precision; literals keep their written order
    const std::string big = "123456789012345678901234567890";
    ExprPtr huge = parse_expr("{" + big + ", -" + big + "}");
    CHECK(huge->set_elems[0].as_int().str() == big);
    CHECK(huge->set_elems[1].as_int().str() == "-" + big);
    CHECK(print_expr(huge) == "{" + big + ", -" + big + "}");
}

TEST_CASE("action lists") {
    ActionSet two = parse_actions("s := s \\/ {1} || r := {2} <<| r");
    REQUIRE(two.assignments.size() == 2);
    CHECK(two.assignments[0].target == "s");
    CHECK(two.assignments[0].rhs->kind == ExprKind::Union);
    CHECK(two.assignments[1].target == "r");
    CHECK(two.assignments[1].rhs->kind == ExprKind::DomSub);

    CHECK(parse_actions("").assignments.empty());
    CHECK(parse_actions("   \n\t ").assignments.empty());

    CHECK_THROWS_AS(parse_actions("s := {1} || s := {2}"), DuplicateTarget);
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_expr("s +"), ParseError);
    CHECK_THROWS_AS(parse_expr("s \\/"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("{1, }"), ParseError);
    CHECK_THROWS_AS(parse_expr("{1 |-> 2, 3}"), ParseError);
    CHECK_THROWS_AS(parse_actions("s :="), ParseError);
    CHECK_THROWS_AS(parse_actions("s__prime := {1}"), ParseError);
    bool threw = false;
    try {
        parse_expr("s \\/ +t");
    } catch (const ParseError& e) {
        threw = true;
        CHECK(e.position == 5);
    }
    CHECK(threw);
}

TEST_CASE("parse of pretty-print is the identity on generated terms") {
    GenConfig cfg;
    cfg.max_depth = 4;
    TypeEnv env{{"s", EbType::set_of(ScalarKind::Int)},
                {"t", EbType::set_of(ScalarKind::Bool)},
                {"r", EbType::rel_of(ScalarKind::Int, ScalarKind::Int)},
                {"q", EbType::rel_of(ScalarKind::Int, ScalarKind::Bool)}};
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(sub_seed(17, seed));
        ExprPtr e = gen_check_expr(cfg, env, rng);
        ExprPtr back = parse_expr(print_expr(e));
        CAPTURE(print_expr(e));
        CHECK(*back == *e);
    }
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(sub_seed(23, seed));
        ActionSet as = gen_actions(cfg, env, rng);
        ActionSet back = parse_actions(print_actions(as));
        REQUIRE(back.assignments.size() == as.assignments.size());
        for (std::size_t i = 0; i < as.assignments.size(); ++i) {
            CHECK(back.assignments[i].target == as.assignments[i].target);
            CHECK(*back.assignments[i].rhs == *as.assignments[i].rhs);
        }
    }
}
