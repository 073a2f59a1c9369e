#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qtails/expr.hpp"

namespace qtails {

namespace detail {

enum class Tok {
    ident, integer, string, lparen, rparen, lbrace, rbrace,
    colon, semicolon, comma, star, caret, slash, plus, minus, eqeq, end
};

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    int line = 1;
    int col = 1;
};

inline const char* token_name(Tok t) {
    switch (t) {
        case Tok::ident: return "identifier";
        case Tok::integer: return "integer";
        case Tok::string: return "string literal";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::colon: return "':'";
        case Tok::semicolon: return "';'";
        case Tok::comma: return "','";
        case Tok::star: return "'*'";
        case Tok::caret: return "'^'";
        case Tok::slash: return "'/'";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::eqeq: return "'=='";
        case Tok::end: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_blank();
        tok_.line = line_;
        tok_.col = col_;
        tok_.text.clear();
        tok_.value = 0;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::end;
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = Tok::ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            std::string digits(src_.substr(start, pos_ - start));
            if (digits.size() > 18)
                throw SyntaxError(tok_.line, tok_.col, "integer literal too large");
            tok_.kind = Tok::integer;
            tok_.text = digits;
            tok_.value = std::stoll(digits);
            return;
        }
        if (c == '"') {
            bump();
            std::string text;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                text += src_[pos_];
                bump();
            }
            if (pos_ >= src_.size() || src_[pos_] != '"')
                throw SyntaxError(tok_.line, tok_.col, "unterminated string literal");
            bump();
            tok_.kind = Tok::string;
            tok_.text = std::move(text);
            return;
        }
        bump();
        switch (c) {
            case '(': tok_.kind = Tok::lparen; return;
            case ')': tok_.kind = Tok::rparen; return;
            case '{': tok_.kind = Tok::lbrace; return;
            case '}': tok_.kind = Tok::rbrace; return;
            case ':': tok_.kind = Tok::colon; return;
            case ';': tok_.kind = Tok::semicolon; return;
            case ',': tok_.kind = Tok::comma; return;
            case '*': tok_.kind = Tok::star; return;
            case '^': tok_.kind = Tok::caret; return;
            case '/': tok_.kind = Tok::slash; return;
            case '+': tok_.kind = Tok::plus; return;
            case '-': tok_.kind = Tok::minus; return;
            case '=':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    bump();
                    tok_.kind = Tok::eqeq;
                    return;
                }
                throw SyntaxError(tok_.line, tok_.col, "expected '=='");
            default:
                throw SyntaxError(tok_.line, tok_.col,
                                  std::string("unexpected character '") + c + "'");
        }
    }

    void skip_blank() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
                continue;
            }
            break;
        }
    }

    void bump() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

/* Recursive-descent parser for the .qid grammar:
 *
 *   file := decl*
 *   decl := "identity" STRING ":" expr "==" expr ";"
 *   expr := term ("*" term)*
 *   term := atom ("^" SIGNED_INT)?
 *   atom := "h" "(" INT ")" | "eta" ("(" INT ")")? | "1" | msum | "(" expr ")"
 *   msum := "sum" "{" "vars:" IDENT+ ";" ["sign:" linform ";"]
 *           "exp:" qpoly ";" ["num:" linform ("," linform)* ";"]
 *           ["den:" linform ("," linform)* ";"] "}"
 *
 * qpoly is rational-coefficient polynomial arithmetic (+, -, *, /, ^INT,
 * parentheses) capped at total degree 2; linform is its integer linear
 * restriction. "#" starts a line comment. */
class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ExprPtr parse_expression_full() {
        ExprPtr e = parse_expr();
        expect(Tok::end, "after expression");
        return e;
    }

    std::vector<Identity> parse_file() {
        std::vector<Identity> out;
        while (lex_.peek().kind != Tok::end) {
            Token kw = expect(Tok::ident, "at start of declaration");
            if (kw.text != "identity")
                throw SyntaxError(kw.line, kw.col, "expected 'identity', got '" + kw.text + "'");
            Token name = expect(Tok::string, "after 'identity'");
            for (const auto& prev : out)
                if (prev.name == name.text) throw DuplicateName(name.text);
            expect(Tok::colon, "after identity name");
            Identity id;
            id.name = name.text;
            id.lhs = parse_expr();
            expect(Tok::eqeq, "between identity sides");
            id.rhs = parse_expr();
            expect(Tok::semicolon, "after declaration");
            out.push_back(std::move(id));
        }
        return out;
    }

private:
    Token expect(Tok kind, const char* where) {
        if (lex_.peek().kind != kind)
            throw SyntaxError(lex_.peek().line, lex_.peek().col,
                              std::string("expected ") + token_name(kind) + " " + where + ", got " +
                                  token_name(lex_.peek().kind));
        return lex_.next();
    }

    ExprPtr parse_expr() {
        std::vector<ExprPtr> factors;
        factors.push_back(parse_term());
        while (lex_.peek().kind == Tok::star) {
            lex_.next();
            factors.push_back(parse_term());
        }
        return SeriesExpr::product(std::move(factors));
    }

    ExprPtr parse_term() {
        auto [atom, eta_base] = parse_atom();
        if (lex_.peek().kind != Tok::caret) return atom;
        Token caret = lex_.next();
        bool negative = false;
        if (lex_.peek().kind == Tok::minus) {
            lex_.next();
            negative = true;
        }
        Token num = expect(Tok::integer, "after '^'");
        long long k = negative ? -num.value : num.value;
        if (eta_base >= 1) return SeriesExpr::eta(eta_base, static_cast<int>(k));
        if (k < 0)
            throw SyntaxError(caret.line, caret.col, "negative power is only valid on eta");
        if (k == 0) return SeriesExpr::one();
        std::vector<ExprPtr> copies(static_cast<size_t>(k), atom);
        return SeriesExpr::product(std::move(copies));
    }

    /* Returns the parsed atom plus the eta base offset when the atom was a
     * literal eta (so a following '^' can set its power directly). */
    std::pair<ExprPtr, int> parse_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::lparen) {
            lex_.next();
            ExprPtr e = parse_expr();
            expect(Tok::rparen, "to close '('");
            return {e, 0};
        }
        if (t.kind == Tok::integer) {
            Token one = lex_.next();
            if (one.value != 1)
                throw SyntaxError(one.line, one.col, "expected 'h', 'eta', 'sum', '1' or '('");
            return {SeriesExpr::one(), 0};
        }
        if (t.kind == Tok::ident) {
            if (t.text == "h") {
                lex_.next();
                expect(Tok::lparen, "after 'h'");
                Token b = expect(Tok::integer, "as theta subscript");
                expect(Tok::rparen, "after theta subscript");
                if (b.value < 1)
                    throw SyntaxError(b.line, b.col, "theta subscript must be >= 1");
                return {SeriesExpr::h(static_cast<int>(b.value)), 0};
            }
            if (t.text == "eta") {
                lex_.next();
                int j = 1;
                if (lex_.peek().kind == Tok::lparen) {
                    lex_.next();
                    Token jt = expect(Tok::integer, "as eta base offset");
                    expect(Tok::rparen, "after eta base offset");
                    if (jt.value < 1)
                        throw SyntaxError(jt.line, jt.col, "eta base offset must be >= 1");
                    j = static_cast<int>(jt.value);
                }
                return {SeriesExpr::eta(j, 1), j};
            }
            if (t.text == "sum") return {parse_msum(), 0};
        }
        throw SyntaxError(t.line, t.col, "expected 'h', 'eta', 'sum', '1' or '('");
    }

    ExprPtr parse_msum() {
        Token kw = lex_.next(); // "sum"
        expect(Tok::lbrace, "after 'sum'");
        section("vars");
        std::map<std::string, int> scope;
        std::vector<std::string> names;
        while (lex_.peek().kind == Tok::ident) {
            Token v = lex_.next();
            if (scope.count(v.text))
                throw SyntaxError(v.line, v.col, "duplicate summation variable '" + v.text + "'");
            scope[v.text] = static_cast<int>(names.size());
            names.push_back(v.text);
        }
        expect(Tok::semicolon, "after variable list");

        MultisumSpec spec;
        spec.nvars = static_cast<int>(names.size());
        if (peek_section("sign")) {
            spec.sign = parse_linform(scope);
            expect(Tok::semicolon, "after sign form");
        }
        section("exp");
        spec.exponent = parse_qpoly(scope);
        expect(Tok::semicolon, "after exponent");
        if (peek_section("num")) {
            spec.numerator_pochhammers = parse_linform_list(scope);
            expect(Tok::semicolon, "after numerator list");
        }
        if (peek_section("den")) {
            spec.denominator_pochhammers = parse_linform_list(scope);
            expect(Tok::semicolon, "after denominator list");
        }
        expect(Tok::rbrace, "to close 'sum{'");
        try {
            return SeriesExpr::multisum(std::move(spec), std::move(names));
        } catch (const SyntaxError&) {
            throw;
        } catch (const Error& e) {
            throw SyntaxError(kw.line, kw.col, std::string("invalid multisum: ") + e.what());
        }
    }

    void section(const char* name) {
        Token t = expect(Tok::ident, "as section keyword");
        if (t.text != name)
            throw SyntaxError(t.line, t.col,
                              std::string("expected section '") + name + "', got '" + t.text + "'");
        expect(Tok::colon, "after section keyword");
    }

    bool peek_section(const char* name) {
        if (lex_.peek().kind != Tok::ident || lex_.peek().text != name) return false;
        lex_.next();
        expect(Tok::colon, "after section keyword");
        return true;
    }

    std::vector<LinearForm> parse_linform_list(const std::map<std::string, int>& scope) {
        std::vector<LinearForm> out;
        out.push_back(parse_linform(scope));
        while (lex_.peek().kind == Tok::comma) {
            lex_.next();
            out.push_back(parse_linform(scope));
        }
        return out;
    }

    LinearForm parse_linform(const std::map<std::string, int>& scope) {
        Token at = lex_.peek();
        QuadraticExponent p = parse_qpoly(scope);
        if (!p.quad_terms().empty())
            throw SyntaxError(at.line, at.col, "expected a linear form, got a quadratic");
        LinearForm f;
        if (!p.constant().is_integer())
            throw SyntaxError(at.line, at.col, "linear form needs integer coefficients");
        f.set_constant(p.constant().num());
        for (const auto& [i, c] : p.linear_terms()) {
            if (!c.is_integer())
                throw SyntaxError(at.line, at.col, "linear form needs integer coefficients");
            f.set_coefficient(i, c.num());
        }
        return f;
    }

    /* qpoly := ['-'] qterm (('+'|'-') qterm)* */
    QuadraticExponent parse_qpoly(const std::map<std::string, int>& scope) {
        bool neg = false;
        if (lex_.peek().kind == Tok::minus) {
            lex_.next();
            neg = true;
        }
        QuadraticExponent acc = parse_qterm(scope);
        if (neg) acc = poly_scale(acc, Rational(-1));
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k != Tok::plus && k != Tok::minus) break;
            lex_.next();
            QuadraticExponent t = parse_qterm(scope);
            if (k == Tok::minus) t = poly_scale(t, Rational(-1));
            poly_add_into(acc, t);
        }
        return acc;
    }

    /* qterm := qfactor (('*'|'/') qfactor)* */
    QuadraticExponent parse_qterm(const std::map<std::string, int>& scope) {
        QuadraticExponent acc = parse_qfactor(scope);
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k != Tok::star && k != Tok::slash) break;
            Token op = lex_.next();
            QuadraticExponent rhs = parse_qfactor(scope);
            if (k == Tok::star)
                acc = poly_mul(acc, rhs, op);
            else
                acc = poly_div(acc, rhs, op);
        }
        return acc;
    }

    /* qfactor := (INT | IDENT | '(' qpoly ')') ('^' INT)? */
    QuadraticExponent parse_qfactor(const std::map<std::string, int>& scope) {
        QuadraticExponent base;
        const Token& t = lex_.peek();
        if (t.kind == Tok::integer) {
            Token n = lex_.next();
            base.set_constant(Rational(n.value));
        } else if (t.kind == Tok::ident) {
            Token v = lex_.next();
            auto it = scope.find(v.text);
            if (it == scope.end())
                throw SyntaxError(v.line, v.col, "undeclared variable '" + v.text + "'");
            base.set_linear(it->second, Rational(1));
        } else if (t.kind == Tok::lparen) {
            lex_.next();
            base = parse_qpoly(scope);
            expect(Tok::rparen, "to close '('");
        } else {
            throw SyntaxError(t.line, t.col, "expected integer, variable or '('");
        }
        if (lex_.peek().kind == Tok::caret) {
            Token op = lex_.next();
            Token e = expect(Tok::integer, "as polynomial power");
            QuadraticExponent acc;
            acc.set_constant(Rational(1));
            for (long long i = 0; i < e.value; ++i) acc = poly_mul(acc, base, op);
            base = std::move(acc);
        }
        return base;
    }

    static void poly_add_into(QuadraticExponent& a, const QuadraticExponent& b) {
        a.add_constant(b.constant());
        for (const auto& [i, c] : b.linear_terms()) a.add_linear(i, c);
        for (const auto& [k, c] : b.quad_terms()) a.add_quad(k.first, k.second, c);
    }

    static QuadraticExponent poly_scale(const QuadraticExponent& a, const Rational& s) {
        QuadraticExponent r;
        r.set_constant(a.constant() * s);
        for (const auto& [i, c] : a.linear_terms()) r.set_linear(i, c * s);
        for (const auto& [k, c] : a.quad_terms()) r.set_quad(k.first, k.second, c * s);
        return r;
    }

    QuadraticExponent poly_mul(const QuadraticExponent& a, const QuadraticExponent& b, const Token& op) {
        auto degree = [](const QuadraticExponent& p) {
            if (!p.quad_terms().empty()) return 2;
            if (!p.linear_terms().empty()) return 1;
            return 0;
        };
        if (degree(a) + degree(b) > 2)
            throw SyntaxError(op.line, op.col, "exponent polynomial exceeds total degree 2");
        QuadraticExponent r = poly_scale(a, b.constant());
        poly_add_into(r, poly_scale(b, a.constant()));
        r.add_constant(-(a.constant() * b.constant())); // counted twice above
        for (const auto& [i, ca] : a.linear_terms())
            for (const auto& [j, cb] : b.linear_terms()) r.add_quad(i, j, ca * cb);
        return r;
    }

    QuadraticExponent poly_div(const QuadraticExponent& a, const QuadraticExponent& b, const Token& op) {
        if (!b.quad_terms().empty() || !b.linear_terms().empty())
            throw SyntaxError(op.line, op.col, "can only divide by a constant");
        if (b.constant().is_zero()) throw SyntaxError(op.line, op.col, "division by zero");
        return poly_scale(a, Rational(1) / b.constant());
    }

    Lexer lex_;
};

} // namespace detail

inline ExprPtr parse_expression(std::string_view text) {
    detail::Parser p(text);
    return p.parse_expression_full();
}

inline std::vector<Identity> parse_identity_file(std::string_view text) {
    detail::Parser p(text);
    return p.parse_file();
}

} // namespace qtails
