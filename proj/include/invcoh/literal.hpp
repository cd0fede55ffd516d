#pragma once

// Text syntax for exact cyclotomic values, used by every input and output
// file: rationals as `p/q` or `p`, roots of unity as `c(N,k)` meaning
// zeta_N^k, combined with + - * and parentheses.

#include <cctype>
#include "cyclotomic.hpp"

namespace invcoh {

namespace detail {

struct LitParser {
    const std::string& s;
    size_t pos = 0;
    CtxPtr ctx;

    explicit LitParser(const std::string& str, CtxPtr c) : s(str), ctx(std::move(c)) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("literal parse error at position " + std::to_string(pos) +
                                    " in \"" + s + "\": " + msg);
    }

    Cyclo parse_expr() {
        Cyclo v = parse_term();
        while (true) {
            skip_ws();
            if (eat('+')) v += parse_term();
            else if (eat('-')) v -= parse_term();
            else return v;
        }
    }

    Cyclo parse_term() {
        Cyclo v = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) v *= parse_factor();
            else return v;
        }
    }

    Cyclo parse_factor() {
        skip_ws();
        if (eat('-')) return -parse_factor();
        return parse_atom();
    }

    Cyclo parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        if (eat('(')) {
            Cyclo v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s[pos] == 'c') {
            ++pos;
            if (!eat('(')) fail("expected '(' after c");
            Int n = parse_int();
            if (!eat(',')) fail("expected ',' in c(N,k)");
            Int k = parse_int();
            if (!eat(')')) fail("expected ')' in c(N,k)");
            if (n <= 0) fail("root order must be positive");
            unsigned long nn = (unsigned long)to_long(n);
            if (ctx->conductor % nn != 0)
                fail("root order " + n.get_str() + " does not divide conductor " +
                     std::to_string(ctx->conductor));
            long kk = to_long(fdiv_r(k, n));
            return root(ctx, kk * (long)(ctx->conductor / nn));
        }
        if (std::isdigit((unsigned char)s[pos])) {
            Int num = parse_int();
            skip_ws();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                Int den = parse_int();
                if (den == 0) fail("zero denominator");
                return Cyclo(ctx, rat(num, den));
            }
            return Cyclo(ctx, Rat(num));
        }
        fail("unexpected character");
    }

    Int parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected integer");
        Int v(s.substr(start, pos - start));
        return neg ? Int(-v) : v;
    }
};

} // namespace detail

inline Cyclo parse_cyclo(const std::string& text, const CtxPtr& ctx) {
    detail::LitParser p(text, ctx);
    Cyclo v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

} // namespace invcoh
