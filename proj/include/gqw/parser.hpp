#pragma once

// Text grammar for all four fragments (whitespace-insensitive, '#' starts a
// line comment):
//
//   formula := quant | binary
//   quant   := ("forall"|"exists") (indvar | predvar ":" arity) "." formula
//   binary  := unary (("&"|"|"|"->"|"<->") unary)*
//   unary   := "~" unary | atom | "(" formula ")"
//   atom    := predvar "(" indvar ("," indvar)* ")" | predvar
//            | QSYM "(" predvar ("," predvar)* ")"
//            | QSYM "[" varlist "|" formula (";" varlist "|" formula)* "]"
//            | indvar "=" indvar                      (with equality enabled)
//
// Precedence ~ > & > | > -> > <->; "->" associates to the right; "<->"
// desugars into the two implications. A quantifier body extends as far to
// the right as possible, and the parser also accepts a quantifier directly
// under "~" or as a binary operand (the printer parenthesizes those).

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqw/errors.hpp"
#include "gqw/formula.hpp"

namespace gqw {

struct ParseOptions {
    bool allow_equality = false;
};

namespace detail {

enum class Tok {
    Ident, Number, Forall, Exists,
    LParen, RParen, LBracket, RBracket,
    Comma, Semicolon, Dot, Colon, Equals,
    Tilde, Amp, Pipe, Arrow, Iff,
    End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            if (pos_ >= src_.size()) break;
            std::size_t line = line_, col = col_;
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string word = take_ident();
                Tok k = word == "forall" ? Tok::Forall
                      : word == "exists" ? Tok::Exists
                                         : Tok::Ident;
                out.push_back({k, word, line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    digits += advance();
                out.push_back({Tok::Number, digits, line, col});
            } else if (c == '<' && src_.substr(pos_).starts_with("<->")) {
                advance(); advance(); advance();
                out.push_back({Tok::Iff, "<->", line, col});
            } else if (c == '-' && src_.substr(pos_).starts_with("->")) {
                advance(); advance();
                out.push_back({Tok::Arrow, "->", line, col});
            } else {
                advance();
                Tok k;
                switch (c) {
                    case '(': k = Tok::LParen; break;
                    case ')': k = Tok::RParen; break;
                    case '[': k = Tok::LBracket; break;
                    case ']': k = Tok::RBracket; break;
                    case ',': k = Tok::Comma; break;
                    case ';': k = Tok::Semicolon; break;
                    case '.': k = Tok::Dot; break;
                    case ':': k = Tok::Colon; break;
                    case '=': k = Tok::Equals; break;
                    case '~': k = Tok::Tilde; break;
                    case '&': k = Tok::Amp; break;
                    case '|': k = Tok::Pipe; break;
                    default:
                        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
                }
                out.push_back({k, std::string(1, c), line, col});
            }
        }
        out.push_back({Tok::End, "", line_, col_});
        return out;
    }

private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string take_ident() {
        std::string word;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                word += advance();
            else
                break;
        }
        return word;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, ParseOptions opts)
        : toks_(std::move(tokens)), opts_(opts) {}

    Formula run() {
        Formula f = formula();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(Tok k) {
        if (peek().kind == k) { next(); return true; }
        return false;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError("expected " + what + ", found '" + describe(peek()) + "'",
                             peek().line, peek().column);
        return toks_[pos_++];
    }
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? "end of input" : t.text;
    }
    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.column);
    }

    Formula formula() { return iff_level(); }

    Formula iff_level() {
        Formula f = imp_level();
        while (accept(Tok::Iff)) {
            Formula rhs = imp_level();
            f = iff(f, rhs);
        }
        return f;
    }

    Formula imp_level() {
        Formula f = or_level();
        if (accept(Tok::Arrow)) {
            Formula rhs = imp_level();
            return imp(std::move(f), std::move(rhs));
        }
        return f;
    }

    Formula or_level() {
        Formula f = and_level();
        while (accept(Tok::Pipe)) f = disj(std::move(f), and_level());
        return f;
    }

    Formula and_level() {
        Formula f = unary();
        while (accept(Tok::Amp)) f = conj(std::move(f), unary());
        return f;
    }

    Formula unary() {
        if (accept(Tok::Tilde)) return neg(unary());
        if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return quant();
        if (accept(Tok::LParen)) {
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        return atom_like();
    }

    Formula quant() {
        const Token& kw = next();
        QuantKind kind = kw.kind == Tok::Forall ? QuantKind::Forall : QuantKind::Exists;
        const Token& name = expect(Tok::Ident, "a variable");
        if (is_ind_var(name.text)) {
            expect(Tok::Dot, "'.'");
            Formula body = formula();
            return kind == QuantKind::Forall ? forall_ind(name.text, std::move(body))
                                             : exists_ind(name.text, std::move(body));
        }
        if (is_pred_var(name.text)) {
            expect(Tok::Colon, "':' and an arity after a predicate binder");
            const Token& num = expect(Tok::Number, "an arity");
            if (num.text.size() > 2)
                fail("arity " + num.text + " is out of range", num);
            int arity = std::stoi(num.text);
            expect(Tok::Dot, "'.'");
            Formula body = formula();
            return kind == QuantKind::Forall
                       ? forall_pred(name.text, arity, std::move(body))
                       : exists_pred(name.text, arity, std::move(body));
        }
        fail("'" + name.text + "' is not a valid variable", name);
    }

    Formula atom_like() {
        const Token& head = expect(Tok::Ident, "an atom");
        if (peek().kind == Tok::LBracket) return qbinder(head);
        if (peek().kind == Tok::LParen) return application(head);
        if (peek().kind == Tok::Equals && is_ind_var(head.text)) {
            if (!opts_.allow_equality)
                fail("equality atoms are disabled (enable the equality option)", peek());
            next();
            const Token& rhs = expect(Tok::Ident, "an individual variable");
            if (!is_ind_var(rhs.text))
                fail("equality relates individual variables, found '" + rhs.text + "'", rhs);
            return equal(head.text, rhs.text);
        }
        if (is_pred_var(head.text)) return atom(head.text); // 0-ary atom
        fail("unexpected '" + head.text + "' (an individual variable is not a formula)", head);
    }

    // Head already consumed; decides Atom vs QApp by the class of the first
    // argument identifier.
    Formula application(const Token& head) {
        expect(Tok::LParen, "'('");
        std::vector<Token> args;
        args.push_back(expect(Tok::Ident, "an argument"));
        while (accept(Tok::Comma)) args.push_back(expect(Tok::Ident, "an argument"));
        expect(Tok::RParen, "')'");

        if (is_ind_var(args.front().text)) {
            if (!is_pred_var(head.text))
                fail("'" + head.text + "' is not a valid predicate variable", head);
            std::vector<std::string> names;
            for (const auto& t : args) {
                if (!is_ind_var(t.text))
                    fail("atom arguments must all be individual variables", t);
                names.push_back(t.text);
            }
            return atom(head.text, std::move(names));
        }
        std::vector<std::string> names;
        for (const auto& t : args) {
            if (!is_pred_var(t.text))
                fail("quantifier application arguments must all be predicate variables", t);
            names.push_back(t.text);
        }
        return qapp(head.text, std::move(names));
    }

    Formula qbinder(const Token& head) {
        expect(Tok::LBracket, "'['");
        std::vector<QBindPart> parts;
        for (;;) {
            std::vector<std::string> vars;
            const Token& v0 = expect(Tok::Ident, "a bound variable");
            if (!is_ind_var(v0.text)) fail("bound tuple entries must be individual variables", v0);
            vars.push_back(v0.text);
            while (accept(Tok::Comma)) {
                const Token& v = expect(Tok::Ident, "a bound variable");
                if (!is_ind_var(v.text))
                    fail("bound tuple entries must be individual variables", v);
                vars.push_back(v.text);
            }
            expect(Tok::Pipe, "'|'");
            Formula body = formula();
            parts.push_back(QBindPart{std::move(vars), std::move(body)});
            if (accept(Tok::Semicolon)) continue;
            expect(Tok::RBracket, "']'");
            break;
        }
        return qbind(head.text, std::move(parts));
    }

    std::vector<Token> toks_;
    ParseOptions opts_;
    std::size_t pos_ = 0;
};

} // namespace detail

// Parses one formula and validates it (arity consistency, identifier
// classes, bound-tuple well-formedness).
inline Formula parse(std::string_view text, const ParseOptions& opts = {}) {
    detail::Lexer lex(text);
    detail::Parser parser(lex.run(), opts);
    Formula f = parser.run();
    validate(f);
    return f;
}

} // namespace gqw
