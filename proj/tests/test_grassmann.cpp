#include <doctest.h>

#include <random>

#include "colorpoincare/grassmann.hpp"

using namespace colorpoincare;

namespace {
struct Fix {
    GradingConfig cfg{0};
    GrassmannAlgebra alg{cfg};
    FieldPtr f = cfg.field();
    Scalar q1 = Scalar::q_power(f, 1);
    Scalar qm1 = Scalar::q_power(f, -1);
    Multivector G(Family fam, int idx) { return Multivector::generator(alg, alg.canonical(fam, idx)); }
};
}  // namespace

TEST_CASE("exchange relations and nilpotency") {
    Fix x;
    auto thr = x.G(Family::ThR, 1), thg = x.G(Family::ThG, 1), thb = x.G(Family::ThB, 1);
    auto eta = x.G(Family::Eta, 1), etab = x.G(Family::Etab, 1);
    auto thbr = x.G(Family::ThbR, 1), thbg = x.G(Family::ThbG, 1);

    // Colour pairs pick up q factors, cyclically.
    CHECK(thr * thg == x.q1 * (thg * thr));
    CHECK(thg * thb == x.q1 * (thb * thg));
    CHECK(thb * thr == x.q1 * (thr * thb));
    // Mixed colour/anticolour pairs.
    CHECK(thr * thbg == x.qm1 * (thbg * thr));
    CHECK(thr * thbr == -(thbr * thr));
    // White generators anticommute with every coloured one.
    CHECK(thr * eta == -(eta * thr));
    CHECK(etab * thg == -(thg * etab));
    CHECK(eta * etab == -(etab * eta));
    // Same family, distinct indices: epsilon(d,d) = -1 anticommutation.
    auto thr2 = x.G(Family::ThR, 2);
    CHECK(thr * thr2 == -(thr2 * thr));

    for (auto& m : {thr, thg, thb, thbr, thbg, eta, etab}) CHECK((m * m).is_zero());
}

TEST_CASE("parameters: powers, defaults, validation") {
    Fix x;
    int x0 = x.alg.parameter("x0", Degree{0, 0, 0});
    int u = x.alg.parameter("u", Degree{1, 1, 0}, Scalar::one(x.f));
    int z = x.alg.parameter("z", Degree{1, 0, 0});
    auto X = Multivector::generator(x.alg, x0);
    auto U = Multivector::generator(x.alg, u);
    auto Z = Multivector::generator(x.alg, z);

    CHECK(!(X * X).is_zero());  // degree-zero coordinates admit powers
    CHECK(!(U * U).is_zero());  // epsilon((1,1,0),(1,1,0)) = +1
    CHECK((Z * Z).is_zero());   // colour degree stays nilpotent
    auto one = Multivector::one(x.alg);
    CHECK((X + one) * (X + one) ==
          X * X + Scalar::from_rational(x.f, 2) * X + one);

    // Default adjoint phase follows the family of the same degree.
    CHECK(Z.adjoint() == (Scalar::i(x.f) * x.q1) * Z);
    CHECK_THROWS_AS(x.alg.parameter("v", Degree{1, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(x.alg.parameter("w", Degree{1, 1, 0},
                                    Scalar::from_rational(x.f, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(x.alg.parameter("x0", Degree{1, 0, 0}), std::invalid_argument);
}

TEST_CASE("left derivative") {
    Fix x;
    int r = x.alg.canonical(Family::ThR, 1), g = x.alg.canonical(Family::ThG, 1);
    auto thr = Multivector::generator(x.alg, r), thg = Multivector::generator(x.alg, g);
    auto w = thr * thg;
    CHECK(w.derivative(r) == thg);
    CHECK(w.derivative(g) == x.q1 * thr);  // factor epsilon(d_r, d_g) = q
    CHECK(w.derivative(x.alg.canonical(Family::ThB, 1)).is_zero());

    int x0 = x.alg.parameter("x0", Degree{0, 0, 0});
    auto X = Multivector::generator(x.alg, x0);
    CHECK((X * X).derivative(x0) == Scalar::from_rational(x.f, 2) * X);
    CHECK((X * X * X).derivative(x0) == Scalar::from_rational(x.f, 3) * (X * X));
}

TEST_CASE("derivative satisfies the graded product rule") {
    Fix x;
    std::mt19937 rng(42);
    std::vector<int> pool;
    for (Family fam : {Family::ThR, Family::ThG, Family::ThB, Family::ThbR, Family::ThbG,
                       Family::Eta, Family::Etab})
        pool.push_back(x.alg.canonical(fam, 1));
    pool.push_back(x.alg.parameter("x0", Degree{0, 0, 0}));
    pool.push_back(x.alg.parameter("u", Degree{1, 1, 0}, Scalar::one(x.f)));
    auto rand_word = [&](int maxlen) {
        std::vector<int> w;
        int len = static_cast<int>(rng() % (maxlen + 1));
        for (int i = 0; i < len; ++i) w.push_back(pool[rng() % pool.size()]);
        return w;
    };
    for (int it = 0; it < 160; ++it) {
        std::vector<int> fw = rand_word(3), gw = rand_word(3);
        int d = pool[rng() % pool.size()];
        auto F = Multivector::word(x.alg, fw, Scalar::q_power(x.f, static_cast<long>(rng() % 3) - 1));
        auto G = Multivector::word(x.alg, gw, Scalar::one(x.f));
        if (F.is_zero() || G.is_zero()) continue;
        // epsilon(f, d_x) accumulated pairwise over the generators of f.
        long par = 0, qe = 0;
        for (int id : fw) {
            auto [p, e] = GradingConfig::epsilon_parts(x.alg.gen(id).degree, x.alg.gen(d).degree);
            par += p;
            qe += e;
        }
        auto lhs = (F * G).derivative(d);
        auto rhs = F.derivative(d) * G + Scalar::sign_q(x.f, par, qe) * (F * G.derivative(d));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("adjoint phases and frozen composites") {
    Fix x;
    auto thr = x.G(Family::ThR, 1), thg = x.G(Family::ThG, 1);
    auto eta = x.G(Family::Eta, 1), etab = x.G(Family::Etab, 1);
    Scalar i = Scalar::i(x.f);

    CHECK(thr.adjoint() == (i * x.q1) * thr);
    CHECK(eta.adjoint() == (-i) * eta);
    CHECK(etab.adjoint() == (-i) * etab);
    // (th_r th_g)^# = (iq)^2 th_g th_r = -q^2 * q^-1 th_r th_g = -q th_r th_g.
    CHECK((thr * thg).adjoint() == (-x.q1) * (thr * thg));
    // (eta etab)^# = (-i)^2 etab eta = -(etab eta) = eta etab.
    CHECK((eta * etab).adjoint() == eta * etab);
}

TEST_CASE("adjoint is an antilinear antiautomorphism and an involution") {
    Fix x;
    std::mt19937 rng(7);
    std::vector<int> pool;
    for (Family fam :
         {Family::ThR, Family::ThG, Family::ThbB, Family::Eta, Family::Etab})
        pool.push_back(x.alg.canonical(fam, 1));
    pool.push_back(x.alg.canonical(Family::ThR, 2));
    pool.push_back(x.alg.parameter("x0", Degree{0, 0, 0}));
    pool.push_back(x.alg.parameter("u", Degree{-1, -1, 0}, Scalar::one(x.f)));
    auto rand_mv = [&]() {
        Multivector m(&x.alg);
        int nterms = 1 + static_cast<int>(rng() % 2);
        for (int t = 0; t < nterms; ++t) {
            std::vector<int> w;
            int len = static_cast<int>(rng() % 4);
            for (int j = 0; j < len; ++j) w.push_back(pool[rng() % pool.size()]);
            Scalar c = Scalar::q_power(x.f, static_cast<long>(rng() % 5) - 2);
            if (rng() % 2) c *= Scalar::i(x.f);
            if (rng() % 3 == 0) c *= Scalar::from_rational(x.f, Rational(1, 2));
            m += Multivector::word(x.alg, w, c);
        }
        return m;
    };
    for (int it = 0; it < 120; ++it) {
        auto F = rand_mv(), G = rand_mv();
        CHECK(F.adjoint().adjoint() == F);
        CHECK((F * G).adjoint() == G.adjoint() * F.adjoint());
        CHECK((F + G).adjoint() == F.adjoint() + G.adjoint());
        Scalar c = Scalar::i(x.f) * Scalar::q_power(x.f, 1) + Scalar::one(x.f);
        CHECK((c * F).adjoint() == c.conjugate() * F.adjoint());
    }
}

TEST_CASE("products associate") {
    Fix x;
    std::mt19937 rng(99);
    std::vector<int> pool;
    for (Family fam : {Family::ThR, Family::ThG, Family::ThB, Family::ThbR, Family::Eta})
        pool.push_back(x.alg.canonical(fam, 1));
    pool.push_back(x.alg.parameter("x0", Degree{0, 0, 0}));
    for (int it = 0; it < 100; ++it) {
        auto w = [&]() {
            std::vector<int> out;
            int len = static_cast<int>(rng() % 3) + 1;
            for (int j = 0; j < len; ++j) out.push_back(pool[rng() % pool.size()]);
            return out;
        };
        auto F = Multivector::word(x.alg, w(), Scalar::one(x.f));
        auto G = Multivector::word(x.alg, w(), Scalar::q_power(x.f, 1));
        auto H = Multivector::word(x.alg, w(), Scalar::i(x.f));
        CHECK((F * G) * H == F * (G * H));
    }
}

TEST_CASE("homogeneity and rendering") {
    Fix x;
    auto thr = x.G(Family::ThR, 1), thg = x.G(Family::ThG, 1);
    CHECK(*(thr * thg).homogeneous_degree() == Degree{1, 1, 0});
    CHECK(!(thr + thr * thg).homogeneous_degree().has_value());
    CHECK(*Multivector::zero(x.alg).homogeneous_degree() == Degree{0, 0, 0});

    CHECK(thr.str() == "th_r[1]");
    CHECK((thr + thg).str() == "th_r[1] + th_g[1]");
    CHECK((-thr).str() == "-th_r[1]");
    CHECK(((Scalar::one(x.f) + x.q1) * (thr * thg)).str() == "(1 + q)*th_r[1]*th_g[1]");
    CHECK((x.qm1 * thr).str() == "q^-1*th_r[1]");
    CHECK(Multivector::zero(x.alg).str() == "0");
    // Coefficient lookups honour the requested generator ordering.
    int r = x.alg.canonical(Family::ThR, 1), g = x.alg.canonical(Family::ThG, 1);
    auto w = thr * thg;
    CHECK(w.coefficient({r, g}) == Scalar::one(x.f));
    CHECK(w.coefficient({g, r}) == x.q1);
}
