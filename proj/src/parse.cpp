#include "ebsql/parse.hpp"

#include <array>
#include <cctype>
#include <string_view>
#include <vector>

namespace ebsql {

namespace {

enum class Tok {
    Ident,
    Integer,
    True,
    False,
    Or,
    Not,
    Card,
    Dom,
    Ran,
    Circ,
    Maplet,    // |->
    RanSub,    // |>>
    DomSub,    // <<|
    Subset,    // <<:
    Assign,    // :=
    Par,       // ||
    Union,     // backslash-slash
    Inter,     // slash-backslash
    CProd,     // **
    DomRes,    // <|
    RanRes,    // |>
    SubsetEq,  // <:
    Ovl,       // <+
    SetMinus,  // backslash
    Semi,
    Tilde,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Equal,
    Amp,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

struct Symbol {
    std::string_view text;
    Tok kind;
};

// Longest first for maximal munch.
constexpr std::array<Symbol, 26> kSymbols{{
    {"|->", Tok::Maplet},
    {"|>>", Tok::RanSub},
    {"<<|", Tok::DomSub},
    {"<<:", Tok::Subset},
    {":=", Tok::Assign},
    {"||", Tok::Par},
    {"\\/", Tok::Union},
    {"/\\", Tok::Inter},
    {"**", Tok::CProd},
    {"<|", Tok::DomRes},
    {"|>", Tok::RanRes},
    {"<:", Tok::SubsetEq},
    {"<+", Tok::Ovl},
    {"\\", Tok::SetMinus},
    {";", Tok::Semi},
    {"~", Tok::Tilde},
    {"[", Tok::LBracket},
    {"]", Tok::RBracket},
    {"(", Tok::LParen},
    {")", Tok::RParen},
    {"{", Tok::LBrace},
    {"}", Tok::RBrace},
    {",", Tok::Comma},
    {":", Tok::Colon},
    {"=", Tok::Equal},
    {"&", Tok::Amp},
}};

Tok keyword_kind(const std::string& word) {
    if (word == "or") return Tok::Or;
    if (word == "not") return Tok::Not;
    if (word == "card") return Tok::Card;
    if (word == "dom") return Tok::Dom;
    if (word == "ran") return Tok::Ran;
    if (word == "circ") return Tok::Circ;
    if (word == "true") return Tok::True;
    if (word == "false") return Tok::False;
    return Tok::Ident;
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                             text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            out.push_back({keyword_kind(word), std::move(word), i});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && i + 1 < n &&
             std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i + 1;
            while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Integer, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        bool matched = false;
        for (const auto& sym : kSymbols) {
            if (text.compare(i, sym.text.size(), sym.text) == 0) {
                out.push_back({sym.kind, std::string(sym.text), i});
                i += sym.text.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(i, "a token");
    }
    out.push_back({Tok::End, "", n});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    ExprPtr parse_expr_or_pred() {
        // Predicates and expressions share no top-level shape; try the
        // predicate grammar first and fall back, keeping the deeper error.
        const std::size_t start = pos_;
        try {
            ExprPtr p = pred();
            expect(Tok::End, "end of input");
            return p;
        } catch (const ParseError& pred_err) {
            pos_ = start;
            try {
                ExprPtr e = expr();
                expect(Tok::End, "end of input");
                return e;
            } catch (const ParseError& expr_err) {
                throw expr_err.position >= pred_err.position ? expr_err : pred_err;
            }
        }
    }

    ActionSet parse_action_list() {
        ActionSet as;
        if (peek().kind == Tok::End) return as;
        as.assignments.push_back(assignment());
        while (peek().kind == Tok::Par) {
            next();
            as.assignments.push_back(assignment());
        }
        expect(Tok::End, "'||' or end of input");
        for (std::size_t i = 0; i < as.assignments.size(); ++i)
            for (std::size_t j = i + 1; j < as.assignments.size(); ++j)
                if (as.assignments[i].target == as.assignments[j].target)
                    throw DuplicateTarget(as.assignments[i].target);
        return as;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k) throw ParseError(peek().offset, what);
        return toks_[pos_++];
    }

    Assignment assignment() {
        const Token& id = expect(Tok::Ident, "a variable name");
        if (is_primed(id.text))
            throw ParseError(id.offset, "an unprimed variable name");
        expect(Tok::Assign, "':='");
        return Assignment{id.text, expr()};
    }

    // ---- predicates ----

    ExprPtr pred() {
        ExprPtr lhs = pred_and();
        while (accept(Tok::Or)) lhs = binary(ExprKind::Or, lhs, pred_and());
        return lhs;
    }

    ExprPtr pred_and() {
        ExprPtr lhs = pred_not();
        while (accept(Tok::Amp)) lhs = binary(ExprKind::And, lhs, pred_not());
        return lhs;
    }

    ExprPtr pred_not() {
        if (accept(Tok::Not)) return unary(ExprKind::Not, pred_not());
        return pred_atom();
    }

    ExprPtr pred_atom() {
        if (peek().kind == Tok::LParen) {
            // Could open a parenthesized predicate or the expression on the
            // left of a comparison; try the predicate reading first.
            const std::size_t start = pos_;
            try {
                next();
                ExprPtr p = pred();
                expect(Tok::RParen, "')'");
                return p;
            } catch (const ParseError&) {
                pos_ = start;
            }
        }
        return comparison();
    }

    ExprPtr comparison() {
        ExprPtr lhs = expr();
        switch (peek().kind) {
            case Tok::Equal: next(); return binary(ExprKind::Eq, lhs, expr());
            case Tok::Colon: next(); return binary(ExprKind::In, lhs, expr());
            case Tok::SubsetEq: next(); return binary(ExprKind::SubsetEq, lhs, expr());
            case Tok::Subset: next(); return binary(ExprKind::Subset, lhs, expr());
            default: throw ParseError(peek().offset, "'=', ':', '<:' or '<<:'");
        }
    }

    // ---- expressions ----

    ExprPtr expr() {
        ExprPtr lhs = inter();
        for (;;) {
            if (accept(Tok::Union))
                lhs = binary(ExprKind::Union, lhs, inter());
            else if (accept(Tok::SetMinus))
                lhs = binary(ExprKind::SetMinus, lhs, inter());
            else
                return lhs;
        }
    }

    ExprPtr inter() {
        ExprPtr lhs = cprod();
        while (accept(Tok::Inter)) lhs = binary(ExprKind::Inter, lhs, cprod());
        return lhs;
    }

    ExprPtr cprod() {
        ExprPtr lhs = restrict_();
        while (accept(Tok::CProd)) lhs = binary(ExprKind::CProd, lhs, restrict_());
        return lhs;
    }

    ExprPtr restrict_() {
        ExprPtr lhs = compose();
        for (;;) {
            if (accept(Tok::DomRes))
                lhs = binary(ExprKind::DomRes, lhs, compose());
            else if (accept(Tok::DomSub))
                lhs = binary(ExprKind::DomSub, lhs, compose());
            else if (accept(Tok::RanRes))
                lhs = binary(ExprKind::RanRes, lhs, compose());
            else if (accept(Tok::RanSub))
                lhs = binary(ExprKind::RanSub, lhs, compose());
            else
                return lhs;
        }
    }

    ExprPtr compose() {
        ExprPtr lhs = postfix();
        for (;;) {
            if (accept(Tok::Semi))
                lhs = binary(ExprKind::FComp, lhs, postfix());
            else if (accept(Tok::Circ))
                lhs = binary(ExprKind::BComp, lhs, postfix());
            else if (accept(Tok::Ovl))
                lhs = binary(ExprKind::Ovl, lhs, postfix());
            else
                return lhs;
        }
    }

    ExprPtr postfix() {
        ExprPtr base = atom();
        for (;;) {
            if (accept(Tok::Tilde)) {
                base = unary(ExprKind::Inverse, base);
            } else if (accept(Tok::LBracket)) {
                ExprPtr arg = expr();
                expect(Tok::RBracket, "']'");
                base = binary(ExprKind::Image, base, arg);
            } else {
                return base;
            }
        }
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident: next(); return var(t.text);
            case Tok::Integer: next(); return int_lit(Int(t.text));
            case Tok::True: next(); return bool_lit(true);
            case Tok::False: next(); return bool_lit(false);
            case Tok::Card:
            case Tok::Dom:
            case Tok::Ran: {
                next();
                expect(Tok::LParen, "'('");
                ExprPtr arg = expr();
                expect(Tok::RParen, "')'");
                return unary(t.kind == Tok::Card  ? ExprKind::Card
                             : t.kind == Tok::Dom ? ExprKind::Dom
                                                  : ExprKind::Ran,
                             arg);
            }
            case Tok::LBrace: next(); return collection_literal();
            case Tok::LParen: {
                next();
                ExprPtr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default: throw ParseError(t.offset, "an expression");
        }
    }

    Scalar scalar_literal() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Integer: next(); return Scalar(Int(t.text));
            case Tok::True: next(); return Scalar(true);
            case Tok::False: next(); return Scalar(false);
            default: throw ParseError(t.offset, "an integer or boolean literal");
        }
    }

    // Opening '{' already consumed. `{}` is an (ambiguously typed) empty
    // set literal; the first maplet arrow decides set vs relation.
    ExprPtr collection_literal() {
        if (accept(Tok::RBrace)) return set_lit({});
        Scalar first = scalar_literal();
        if (accept(Tok::Maplet)) {
            std::vector<std::pair<Scalar, Scalar>> pairs;
            pairs.emplace_back(first, scalar_literal());
            while (accept(Tok::Comma)) {
                Scalar k = scalar_literal();
                expect(Tok::Maplet, "'|->'");
                pairs.emplace_back(k, scalar_literal());
            }
            expect(Tok::RBrace, "'}'");
            return rel_lit(std::move(pairs));
        }
        std::vector<Scalar> elems{first};
        while (accept(Tok::Comma)) elems.push_back(scalar_literal());
        expect(Tok::RBrace, "'}'");
        return set_lit(std::move(elems));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) {
    return Parser(text).parse_expr_or_pred();
}

ActionSet parse_actions(const std::string& text) {
    return Parser(text).parse_action_list();
}

}  // namespace ebsql
