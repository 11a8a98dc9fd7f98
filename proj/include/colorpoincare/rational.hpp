#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace colorpoincare {

// Exact rational numbers. mpq_class keeps itself in lowest terms.
using Rational = mpq_class;

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    Rational out(1);
    while (k) {
        if (k & 1ul) out *= b;
        b *= b;
        k >>= 1;
    }
    if (neg) {
        if (out == 0) throw std::domain_error("rational_pow: zero to negative power");
        out = Rational(1) / out;
    }
    return out;
}

// Returns s with s*s == r when r is a square in Q, otherwise nullopt.
inline std::optional<Rational> rational_exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rational(sn, sd);
}

}  // namespace colorpoincare
