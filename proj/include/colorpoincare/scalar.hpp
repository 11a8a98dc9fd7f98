#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorpoincare/rational.hpp"

namespace colorpoincare {

// Coefficient field for a given grading order n.
//
// All scalars live in Q(zeta_m)(q) where m = lcm(8, n) (m = 8 when n = 0).
// For n > 0 the deformation parameter q is the primitive n-th root of unity
// zeta_m^(m/n), so scalars are plain elements of Q(zeta_m).  For n = 0 the
// parameter q stays formal and scalars are Laurent polynomials in q with
// coefficients in Q(zeta_8).
//
// Elements of Q(zeta_m) are kept reduced modulo the m-th cyclotomic
// polynomial, i.e. as coordinate vectors on the basis 1, zeta, ..,
// zeta^(phi(m)-1).  Including the factor 8 in m guarantees that i = zeta_m^(m/4)
// and sqrt(2) = z8 + z8^(-1) always exist, which the adjoint and the spinor
// normalisations need.
class ScalarField : public std::enable_shared_from_this<ScalarField> {
  public:
    // n = 0 (formal q) or n >= 3.  n = 1 and n = 2 are rejected: the colour
    // commutation factor needs q^3 = 1-type cancellations with q != +-1, and
    // for n in {1,2} the factor degenerates to an ordinary sign grading.
    static std::shared_ptr<const ScalarField> make(int n);

    int n() const { return n_; }
    int m() const { return m_; }
    int degree() const { return deg_; }  // phi(m)

    // zeta_m^e for any integer e, as a basis vector (length phi(m)).
    const std::vector<long>& zeta_power(long e) const;

    // Exponent of zeta_m giving q (defined only for n > 0).
    int q_zeta_exponent() const;
    // Exponent of zeta_m giving z8 (the primitive 8th root).
    int z8_zeta_exponent() const { return m_ / 8; }

    const std::vector<long>& cyclotomic() const { return phi_poly_; }

  private:
    explicit ScalarField(int n);
    int n_ = 0;
    int m_ = 8;
    int deg_ = 4;
    std::vector<long> phi_poly_;             // Phi_m, monic, length deg_+1
    std::vector<std::vector<long>> powers_;  // m rows, each length deg_
};

using FieldPtr = std::shared_ptr<const ScalarField>;

// One exact scalar.  Internally a map q-exponent -> coordinates of a
// Q(zeta_m) element; for n > 0 everything is folded into q-exponent 0.
class Scalar {
  public:
    Scalar() = default;
    explicit Scalar(FieldPtr f) : f_(std::move(f)) {}

    static Scalar zero(const FieldPtr& f) { return Scalar(f); }
    static Scalar one(const FieldPtr& f) { return from_rational(f, 1); }
    static Scalar from_rational(const FieldPtr& f, const Rational& r);
    static Scalar q_power(const FieldPtr& f, long e);
    static Scalar zeta_power(const FieldPtr& f, long e);  // zeta_m^e
    static Scalar z8_power(const FieldPtr& f, long e);
    static Scalar i(const FieldPtr& f);
    // (-1)^parity * q^qexp; the building block of commutation factors.
    static Scalar sign_q(const FieldPtr& f, long parity, long qexp);

    const FieldPtr& field() const { return f_; }
    bool is_zero() const { return terms_.empty(); }
    // If the scalar is a plain rational, report it.
    std::optional<Rational> as_rational() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Complex conjugation: zeta_m -> zeta_m^-1, and q -> q^-1 when q is formal.
    Scalar conjugate() const;

    // Multiplicative inverse.  For n > 0 every nonzero scalar is invertible.
    // For n = 0 only elements supported on a single q-power are; anything else
    // throws std::domain_error with an explanation.
    Scalar inverse() const;

    // Exact square root of a rational r inside this field, when one exists:
    // built from z8 + z8^-1 = sqrt(2) and quadratic Gauss sums for odd primes
    // dividing m.  Returns nullopt when the field is too small to contain it.
    static std::optional<Scalar> sqrt_rational(const FieldPtr& f, const Rational& r);

    // Canonical rendering, e.g. "1/2*z8^3*q^-1 + 2".  Deterministic: terms are
    // sorted by q-exponent then z8-exponent, unit factors are dropped.
    std::string str() const;

    // Total order compatible with == (used only for deterministic containers).
    int compare(const Scalar& o) const;

  private:
    void add_term(long qexp, const std::vector<Rational>& vec, const Rational& mult);
    void prune();
    FieldPtr f_;
    std::map<long, std::vector<Rational>> terms_;
};

}  // namespace colorpoincare
