#include <doctest.h>

#include <random>

#include "colorpoincare/parser.hpp"

using namespace colorpoincare;

TEST_CASE("scalar expressions") {
    GradingConfig cfg(0);
    GrassmannAlgebra alg(cfg);
    auto f = cfg.field();
    CHECK(*parse_expression(alg, "1/2*z8^3*q^-1 + 2").as_scalar() ==
          Scalar::from_rational(f, Rational(1, 2)) * Scalar::z8_power(f, 3) *
                  Scalar::q_power(f, -1) +
              Scalar::from_rational(f, 2));
    CHECK(*parse_expression(alg, "i^2").as_scalar() == Scalar::from_rational(f, -1));
    CHECK(*parse_expression(alg, "(1+q)^2").as_scalar() ==
          Scalar::one(f) + Scalar::from_rational(f, 2) * Scalar::q_power(f, 1) +
              Scalar::q_power(f, 2));
    CHECK(*parse_expression(alg, "2/4").as_scalar() == Scalar::from_rational(f, Rational(1, 2)));
    CHECK(*parse_expression(alg, " - q ").as_scalar() == -Scalar::q_power(f, 1));
}

TEST_CASE("generator expressions and normal ordering") {
    GradingConfig cfg(0);
    GrassmannAlgebra alg(cfg);
    auto f = cfg.field();
    auto m = parse_expression(alg, "th_r[1]*th_g[1] + q*th_g[1]*th_r[1]");
    // th_g th_r = q^-1 th_r th_g, so the sum collapses to 2 th_r th_g.
    auto expected = Scalar::from_rational(f, 2) *
                    parse_expression(alg, "th_r[1]*th_g[1]");
    CHECK(m == expected);
    CHECK(parse_expression(alg, "th_r[2]^2").is_zero());
    CHECK(parse_expression(alg, "eta[1]*eta[2] + etab[1]").str() ==
          "etab[1] + eta[1]*eta[2]");
}

TEST_CASE("round trips through the canonical rendering") {
    GradingConfig cfg(0);
    GrassmannAlgebra alg(cfg);
    auto f = cfg.field();
    for (const char* src : {
             "th_r[1]",
             "1/2*z8^3*q^-1 + 2",
             "(1 + q)*th_r[1]*th_g[1]",
             "q^-1*th_b[4]*eta[1]*etab[2]",
             "-th_r[1] + th_g[1] - 3*th_b[1]",
             "1 - q^2",
         }) {
        Multivector m = parse_expression(alg, src);
        CHECK(parse_expression(alg, m.str()) == m);
        CHECK(parse_expression(alg, m.str()).str() == m.str());
    }
}

TEST_CASE("random round trips") {
    GradingConfig cfg(0);
    GrassmannAlgebra alg(cfg);
    auto f = cfg.field();
    std::mt19937 rng(2024);
    std::vector<int> pool;
    for (Family fam : {Family::ThR, Family::ThG, Family::ThbB, Family::Eta, Family::Etab})
        pool.push_back(alg.canonical(fam, 1 + static_cast<int>(rng() % 3)));
    for (int it = 0; it < 120; ++it) {
        Multivector m(&alg);
        int nterms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < nterms; ++t) {
            std::vector<int> w;
            int len = static_cast<int>(rng() % 4);
            for (int j = 0; j < len; ++j) w.push_back(pool[rng() % pool.size()]);
            Scalar c = Scalar::q_power(f, static_cast<long>(rng() % 7) - 3);
            if (rng() % 2) c *= Scalar::z8_power(f, static_cast<long>(rng() % 4));
            if (rng() % 3 == 0) c *= Scalar::from_rational(f, Rational(static_cast<long>(rng() % 9) - 4,
                                                                       1 + static_cast<long>(rng() % 5)));
            m += Multivector::word(alg, w, c);
        }
        CHECK(parse_expression(alg, m.str()) == m);
    }
}

TEST_CASE("errors carry positions and explanations") {
    GradingConfig cfg(0);
    GrassmannAlgebra alg(cfg);
    CHECK_THROWS_AS(parse_expression(alg, "th_r[1"), ParseError);
    CHECK_THROWS_AS(parse_expression(alg, "th_x[1]"), ParseError);
    CHECK_THROWS_AS(parse_expression(alg, "q^"), ParseError);
    CHECK_THROWS_AS(parse_expression(alg, "1/0"), ParseError);
    CHECK_THROWS_AS(parse_expression(alg, "th_r[1]^-1"), ParseError);
    CHECK_THROWS_AS(parse_expression(alg, "(1+q)^-1"), std::domain_error);
    CHECK_THROWS_AS(parse_expression(alg, "2 + + 3"), ParseError);
    try {
        parse_expression(alg, "th_r[1] * th_y[2]");
    } catch (const ParseError& e) {
        CHECK(e.position == 10);
        CHECK(std::string(e.what()).find("unknown name") != std::string::npos);
    }
}
