#include "cyclelab/error.hpp"
#include "cyclelab/lexer.hpp"
#include "cyclelab/parse.hpp"
#include "cyclelab/poly.hpp"

namespace cyclelab {

namespace {

class PolyParser {
public:
    PolyParser(TokenStream& ts, const RingPtr& ring) : ts_(ts), ring_(ring) {}

    Poly expr()
    {
        bool negate = false;
        if (ts_.accept("-"))
            negate = true;
        else
            ts_.accept("+");
        Poly acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (ts_.accept("+"))
                acc += term();
            else if (ts_.accept("-"))
                acc -= term();
            else
                break;
        }
        return acc;
    }

private:
    bool starts_power() const
    {
        const Token& t = ts_.peek();
        if (t.kind == TokenKind::Integer) return true;
        if (t.kind == TokenKind::Identifier) return ring_->index_of(t.text).has_value();
        return t.kind == TokenKind::Symbol && t.text == "(";
    }

    Poly term()
    {
        Poly acc = power();
        while (true) {
            if (ts_.accept("*")) {
                acc = acc * power();
            } else if (ts_.is("/")) {
                ts_.next();
                if (ts_.peek().kind != TokenKind::Integer) ts_.fail("only integer denominators are allowed");
                mpz_class d(ts_.next().text);
                if (d == 0) ts_.fail("division by zero");
                acc = acc.scaled(Scalar(ring_->field, mpq_class(1, d)));
            } else if (starts_power()) {
                acc = acc * power();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly power()
    {
        Poly base = atom();
        if (ts_.accept("^")) {
            if (ts_.peek().kind != TokenKind::Integer) ts_.fail("exponent must be a nonnegative integer");
            const Token& e = ts_.next();
            if (e.text.size() > 6) ts_.fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(e.text)));
        }
        return base;
    }

    Poly atom()
    {
        const Token& t = ts_.peek();
        if (t.kind == TokenKind::Integer) {
            ts_.next();
            return Poly::constant(ring_, Scalar(ring_->field, mpq_class(mpz_class(t.text))));
        }
        if (t.kind == TokenKind::Identifier) {
            auto idx = ring_->index_of(t.text);
            if (!idx) ts_.fail("unknown variable '" + t.text + "' for ring " + ring_->to_string());
            ts_.next();
            return Poly::variable(ring_, *idx);
        }
        if (ts_.accept("(")) {
            Poly inner = expr();
            ts_.expect(")");
            return inner;
        }
        ts_.fail("expected a coefficient, variable or '('");
    }

    TokenStream& ts_;
    const RingPtr& ring_;
};

}  // namespace

Poly parse_poly(TokenStream& ts, const RingPtr& ring) { return PolyParser(ts, ring).expr(); }

Poly parse_poly(std::string_view text, const RingPtr& ring)
{
    TokenStream ts(text, tokenize(text));
    Poly p = parse_poly(ts, ring);
    if (!ts.at_end()) ts.fail("unexpected trailing input");
    return p;
}

}  // namespace cyclelab
