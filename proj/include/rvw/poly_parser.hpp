#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"

namespace rvw {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) +
                             ", column " + std::to_string(c)),
          line(l),
          column(c) {}
};

namespace detail_parse {

enum class Tok { Int, Var, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    Int value;  // Int: literal value; Var: 1-based variable index
    int line, column;
};

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto bump = [&](size_t k) {
        for (size_t j = 0; j < k; ++j, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            bump(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back(
                {Tok::Int, Int(text.substr(i, j - i)), tl, tc});
            bump(j - i);
            continue;
        }
        if (c == 't' && i + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            size_t j = i + 1;
            while (j < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            Int idx(text.substr(i + 1, j - i - 1));
            if (idx < 1) throw ParseError("variable index must be >= 1", tl, tc);
            if (idx > 4096)
                throw ParseError("variable index out of range", tl, tc);
            out.push_back({Tok::Var, idx, tl, tc});
            bump(j - i);
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c +
                                     "'",
                                 tl, tc);
        }
        out.push_back({k, 0, tl, tc});
        bump(1);
    }
    out.push_back({Tok::End, 0, line, col});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> toks, int nvars)
        : toks_(std::move(toks)), nvars_(nvars) {}

    MultiPoly<Int> run() {
        MultiPoly<Int> f = expr();
        if (peek().kind != Tok::End)
            throw ParseError("trailing input", peek().line, peek().column);
        return f;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    MultiPoly<Int> expr() {
        MultiPoly<Int> acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            Tok op = take().kind;
            MultiPoly<Int> rhs = term();
            acc = (op == Tok::Plus) ? acc + rhs : acc - rhs;
        }
        return acc;
    }
    MultiPoly<Int> term() {
        MultiPoly<Int> acc = factor();
        while (peek().kind == Tok::Star) {
            take();
            acc = acc * factor();
        }
        return acc;
    }
    MultiPoly<Int> factor() {
        if (peek().kind == Tok::Minus) {
            take();
            return -factor();
        }
        return power();
    }
    MultiPoly<Int> power() {
        MultiPoly<Int> base = primary();
        if (peek().kind == Tok::Caret) {
            Token caret = take();
            if (peek().kind != Tok::Int)
                throw ParseError("exponent must be an integer literal",
                                 peek().line, peek().column);
            Token e = take();
            if (e.value < 0 || e.value > 4096)
                throw ParseError("exponent out of range", e.line, e.column);
            (void)caret;
            return base.pow(static_cast<unsigned>(e.value.get_ui()));
        }
        return base;
    }
    MultiPoly<Int> primary() {
        Token t = take();
        switch (t.kind) {
            case Tok::Int:
                return MultiPoly<Int>::constant(nvars_, t.value);
            case Tok::Var:
                return MultiPoly<Int>::variable(
                    nvars_, static_cast<int>(t.value.get_ui()) - 1, Int(1));
            case Tok::LParen: {
                MultiPoly<Int> inner = expr();
                if (peek().kind != Tok::RParen)
                    throw ParseError("expected ')'", peek().line,
                                     peek().column);
                take();
                return inner;
            }
            default:
                throw ParseError("expected a number, variable or '('", t.line,
                                 t.column);
        }
    }

    std::vector<Token> toks_;
    int nvars_;
    size_t pos_ = 0;
};

}  // namespace detail_parse

// Parses "+ - * ^ ( )" expressions over integer literals and variables
// t1..tn.  Exponents bind tightest, then unary minus, then products, then
// sums, all left associative.  The variable count is the largest index seen,
// or min_nvars if larger.
inline MultiPoly<Int> parse_poly(const std::string& text, int min_nvars = 0) {
    auto toks = detail_parse::tokenize(text);
    int nvars = min_nvars;
    for (const auto& t : toks)
        if (t.kind == detail_parse::Tok::Var)
            nvars = std::max(nvars, static_cast<int>(t.value.get_ui()));
    return detail_parse::Parser(std::move(toks), nvars).run();
}

}  // namespace rvw
