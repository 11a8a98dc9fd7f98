#include <doctest.h>

#include "colorpoincare/scalar.hpp"

using namespace colorpoincare;

TEST_CASE("eighth root basics at n = 0") {
    auto f = ScalarField::make(0);
    CHECK(f->m() == 8);
    CHECK(f->degree() == 4);
    Scalar z8 = Scalar::z8_power(f, 1);
    CHECK(z8 * z8 == Scalar::i(f));
    CHECK(z8 * z8 * z8 * z8 == Scalar::from_rational(f, -1));
    Scalar s2 = Scalar::z8_power(f, 1) + Scalar::z8_power(f, -1);
    CHECK(s2 * s2 == Scalar::from_rational(f, 2));
    CHECK(Scalar::i(f) * Scalar::i(f) == Scalar::from_rational(f, -1));
}

TEST_CASE("formal q is an honest Laurent variable") {
    auto f = ScalarField::make(0);
    Scalar q = Scalar::q_power(f, 1);
    CHECK(q * Scalar::q_power(f, -1) == Scalar::one(f));
    Scalar p = Scalar::one(f) + q;
    CHECK(p * p == Scalar::one(f) + Scalar::from_rational(f, 2) * q + Scalar::q_power(f, 2));
    CHECK_THROWS_AS(p.inverse(), std::domain_error);
    CHECK((Scalar::from_rational(f, Rational(3, 4)) * Scalar::q_power(f, -2)).inverse() ==
          Scalar::from_rational(f, Rational(4, 3)) * Scalar::q_power(f, 2));
}

TEST_CASE("n = 3 folds q into the 24th cyclotomic field") {
    auto f = ScalarField::make(3);
    CHECK(f->m() == 24);
    CHECK(f->degree() == 8);  // phi(24)
    Scalar q = Scalar::q_power(f, 1);
    CHECK(q * q * q == Scalar::one(f));
    CHECK(Scalar::one(f) + q + q * q == Scalar::zero(f));
    CHECK(Scalar::zeta_power(f, 12) == Scalar::from_rational(f, -1));
    // 1/(1+q) = 1+q^2 because (1+q)(1+q^2) = 1 + q + q^2 + 1 = 1.
    CHECK((Scalar::one(f) + q).inverse() == Scalar::one(f) + q * q);
    CHECK(q.conjugate() == q * q);
}

TEST_CASE("conjugation") {
    auto f = ScalarField::make(0);
    CHECK(Scalar::i(f).conjugate() == -Scalar::i(f));
    CHECK(Scalar::q_power(f, 2).conjugate() == Scalar::q_power(f, -2));
    Scalar x = Scalar::z8_power(f, 3) * Scalar::q_power(f, -1) +
               Scalar::from_rational(f, Rational(5, 7));
    CHECK(x.conjugate().conjugate() == x);
    Scalar s2 = Scalar::z8_power(f, 1) + Scalar::z8_power(f, -1);
    CHECK(s2.conjugate() == s2);  // sqrt(2) is real
}

TEST_CASE("square roots via Gauss sums") {
    auto f0 = ScalarField::make(0);
    auto two = Scalar::sqrt_rational(f0, 2);
    REQUIRE(two.has_value());
    CHECK(*two * *two == Scalar::from_rational(f0, 2));
    CHECK(*two == Scalar::z8_power(f0, 1) + Scalar::z8_power(f0, -1));

    CHECK(*Scalar::sqrt_rational(f0, Rational(4, 9)) == Scalar::from_rational(f0, Rational(2, 3)));
    auto m2 = Scalar::sqrt_rational(f0, -2);
    REQUIRE(m2.has_value());
    CHECK(*m2 * *m2 == Scalar::from_rational(f0, -2));
    CHECK(!Scalar::sqrt_rational(f0, 3).has_value());  // zeta_3 not in Q(zeta_8)

    auto f3 = ScalarField::make(3);
    auto r3 = Scalar::sqrt_rational(f3, 3);
    REQUIRE(r3.has_value());
    CHECK(*r3 * *r3 == Scalar::from_rational(f3, 3));
    auto r6 = Scalar::sqrt_rational(f3, Rational(-27, 2));
    REQUIRE(r6.has_value());
    CHECK(*r6 * *r6 == Scalar::from_rational(f3, Rational(-27, 2)));

    auto f5 = ScalarField::make(5);
    auto r5 = Scalar::sqrt_rational(f5, 5);
    REQUIRE(r5.has_value());
    CHECK(*r5 * *r5 == Scalar::from_rational(f5, 5));
}

TEST_CASE("canonical rendering") {
    auto f = ScalarField::make(0);
    Scalar x = Scalar::from_rational(f, Rational(1, 2)) * Scalar::z8_power(f, 3) *
                   Scalar::q_power(f, -1) +
               Scalar::from_rational(f, 2);
    CHECK(x.str() == "1/2*z8^3*q^-1 + 2");
    CHECK(Scalar::zero(f).str() == "0");
    CHECK(Scalar::one(f).str() == "1");
    CHECK((-Scalar::q_power(f, 1)).str() == "-q");
    CHECK((Scalar::one(f) - Scalar::q_power(f, 2)).str() == "1 - q^2");
    CHECK(Scalar::i(f).str() == "z8^2");
}

TEST_CASE("grading orders 1 and 2 are rejected") {
    CHECK_THROWS_AS(ScalarField::make(1), std::invalid_argument);
    CHECK_THROWS_AS(ScalarField::make(2), std::invalid_argument);
    CHECK_THROWS_AS(ScalarField::make(-3), std::invalid_argument);
}

TEST_CASE("field axioms spot checks") {
    for (int n : {0, 5}) {
        auto f = ScalarField::make(n);
        Scalar a = Scalar::q_power(f, 1) + Scalar::from_rational(f, Rational(2, 3));
        Scalar b = Scalar::z8_power(f, 5) - Scalar::q_power(f, -2);
        Scalar c = Scalar::i(f) * Scalar::from_rational(f, 7) + Scalar::z8_power(f, 1);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * (b * c) == (a * b) * c);
        CHECK(a * b == b * a);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        if (n > 0) CHECK(a * a.inverse() == Scalar::one(f));
    }
}
