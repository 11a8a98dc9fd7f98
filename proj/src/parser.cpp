#include "colorpoincare/parser.hpp"

#include <cctype>

namespace colorpoincare {
namespace {

class Parser {
  public:
    Parser(GrassmannAlgebra& alg, const std::string& src) : alg_(alg), src_(src) {}

    Multivector run() {
        Multivector out = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return out;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Multivector expr() {
        bool neg = eat('-');
        Multivector acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Multivector term() {
        Multivector acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    long integer() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("expected an integer");
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000000000L) fail("integer literal too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    Multivector factor() {
        skip_ws();
        size_t at = pos_;
        bool scalar_atom = false;
        Multivector base = atom(&scalar_atom);
        if (!eat('^')) return base;
        long e = integer();
        if (e < 0) {
            if (!scalar_atom)
                throw ParseError("negative powers are only defined for scalars", at);
            auto s = base.as_scalar();
            Scalar inv = s->inverse();  // throws std::domain_error with context
            Multivector out = Multivector::scalar(*base.algebra(), Scalar::one(alg_.field()));
            for (long k = 0; k < -e; ++k) out = inv * out;
            return out;
        }
        Multivector out = Multivector::one(alg_);
        for (long k = 0; k < e; ++k) out = out * base;
        return out;
    }

    Multivector atom(bool* scalar_atom) {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (eat('(')) {
            Multivector inner = expr();
            if (!eat(')')) fail("expected ')'");
            *scalar_atom = inner.as_scalar().has_value();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer();
            Rational r(num);
            if (eat('/')) {
                long den = integer();
                if (den == 0) fail("zero denominator");
                r = Rational(num, den);
                r.canonicalize();
            }
            *scalar_atom = true;
            return Multivector::scalar(alg_, Scalar::from_rational(alg_.field(), r));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            if (name == "q") {
                *scalar_atom = true;
                return Multivector::scalar(alg_, Scalar::q_power(alg_.field(), 1));
            }
            if (name == "i") {
                *scalar_atom = true;
                return Multivector::scalar(alg_, Scalar::i(alg_.field()));
            }
            if (name == "z8") {
                *scalar_atom = true;
                return Multivector::scalar(alg_, Scalar::z8_power(alg_.field(), 1));
            }
            *scalar_atom = false;
            for (Family fam : {Family::ThR, Family::ThG, Family::ThB, Family::ThbR,
                               Family::ThbG, Family::ThbB, Family::Eta, Family::Etab}) {
                if (name == GrassmannAlgebra::family_prefix(fam)) {
                    if (!eat('[')) fail("expected '[' after generator family " + name);
                    long idx = integer();
                    if (idx < 0) fail("generator index must be nonnegative");
                    if (!eat(']')) fail("expected ']'");
                    return Multivector::generator(alg_, alg_.canonical(fam, static_cast<int>(idx)));
                }
            }
            int pid = alg_.find_parameter(name);
            if (pid >= 0) return Multivector::generator(alg_, pid);
            throw ParseError("unknown name '" + name +
                                 "': expected q, i, z8, a generator family "
                                 "(th_r, th_g, th_b, thb_r, thb_g, thb_b, eta, etab) "
                                 "or a declared parameter",
                             start);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    GrassmannAlgebra& alg_;
    const std::string& src_;
    size_t pos_ = 0;
};

}  // namespace

Multivector parse_expression(GrassmannAlgebra& alg, const std::string& src) {
    return Parser(alg, src).run();
}

}  // namespace colorpoincare
