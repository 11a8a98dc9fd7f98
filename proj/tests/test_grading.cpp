#include <doctest.h>

#include <random>

#include "colorpoincare/grading.hpp"

using namespace colorpoincare;

namespace {
Scalar eps_raw(const GradingConfig& cfg, const Degree& x, const Degree& y) {
    auto [p, e] = GradingConfig::epsilon_parts(x, y);
    return Scalar::sign_q(cfg.field(), p, e);
}
}  // namespace

TEST_CASE("commutation factor on the eight generator families") {
    GradingConfig cfg(0);
    auto f = cfg.field();
    Degree r{1, 0, 0}, g{0, 1, 0}, b{0, 0, 1};
    Degree rb{-1, 0, 0}, gb{0, -1, 0};
    Degree w{1, 1, 1}, wb{-1, -1, -1};

    Scalar q = Scalar::q_power(f, 1);
    CHECK(cfg.epsilon(r, g) == q);
    CHECK(cfg.epsilon(g, r) == Scalar::q_power(f, -1));
    CHECK(cfg.epsilon(g, b) == q);
    CHECK(cfg.epsilon(b, r) == q);
    CHECK(cfg.epsilon(r, r) == -Scalar::one(f));
    CHECK(cfg.epsilon(r, rb) == -Scalar::one(f));
    CHECK(cfg.epsilon(r, gb) == Scalar::q_power(f, -1));
    CHECK(cfg.epsilon(w, w) == -Scalar::one(f));
    CHECK(cfg.epsilon(w, wb) == -Scalar::one(f));
    CHECK(cfg.epsilon(w, r) == -Scalar::one(f));  // parity 1, q-exponent 0
    // The white degree pairs to +-1 against everything.
    for (const Degree& d : {r, g, b, rb, gb, w, wb}) {
        auto [p, e] = GradingConfig::epsilon_parts(w, d);
        CHECK(e == 0);
    }
}

TEST_CASE("bicharacter laws hold on the integer lattice") {
    std::mt19937 rng(20260814u);
    std::uniform_int_distribution<int> pick(-4, 4);
    for (int n : {0, 3, 4, 5}) {
        GradingConfig cfg(n);
        auto f = cfg.field();
        for (int it = 0; it < 200; ++it) {
            Degree x{pick(rng), pick(rng), pick(rng)};
            Degree xp{pick(rng), pick(rng), pick(rng)};
            Degree y{pick(rng), pick(rng), pick(rng)};
            Degree xs{x.r + xp.r, x.g + xp.g, x.b + xp.b};
            CHECK(eps_raw(cfg, xs, y) == eps_raw(cfg, x, y) * eps_raw(cfg, xp, y));
            CHECK(eps_raw(cfg, y, xs) == eps_raw(cfg, y, x) * eps_raw(cfg, y, xp));
            CHECK(eps_raw(cfg, x, y) * eps_raw(cfg, y, x) == Scalar::one(f));
            auto [p, e] = GradingConfig::epsilon_parts(x, x);
            CHECK(e == 0);  // epsilon(x,x) is always a plain sign
        }
    }
}

TEST_CASE("for odd n the sign part does not descend to residue classes") {
    // With n = 3, reducing 2+2 -> 1 flips the sign part: this is exactly why
    // all bicharacter checks are phrased on integer triples.
    GradingConfig cfg(3);
    Degree x{2, 0, 0}, y{1, 0, 0};
    Scalar lhs_reduced = cfg.epsilon(cfg.add(x, x), y);
    Scalar rhs = cfg.epsilon(x, y) * cfg.epsilon(x, y);
    CHECK(lhs_reduced != rhs);
    Degree raw_sum{4, 0, 0};
    CHECK(eps_raw(cfg, raw_sum, y) == rhs);
}

TEST_CASE("canonical representatives") {
    GradingConfig cfg(3);
    CHECK(cfg.reduce(-1, 5, 3) == Degree{2, 2, 0});
    CHECK(cfg.add(Degree{2, 2, 0}, Degree{2, 0, 0}) == Degree{1, 2, 0});
    CHECK(cfg.neg(Degree{1, 0, 2}) == Degree{2, 0, 1});
    GradingConfig cfg0(0);
    CHECK(cfg0.reduce(-1, 5, 3) == Degree{-1, 5, 3});
    CHECK(cfg0.neg(Degree{1, 0, 2}) == Degree{-1, 0, -2});
}

TEST_CASE("degree classification") {
    GradingConfig c0(0);
    using K = GradingConfig::Kind;
    CHECK(c0.classify({0, 0, 0}) == K::Bosonic);
    CHECK(c0.classify({2, 2, 2}) == K::Bosonic);
    CHECK(c0.classify({-4, -4, -4}) == K::Bosonic);
    CHECK(c0.classify({1, 1, 1}) == K::Fermionic);
    CHECK(c0.classify({-3, -3, -3}) == K::Fermionic);
    CHECK(c0.classify({1, 0, 0}) == K::Exotic);
    CHECK(c0.classify({1, 1, 0}) == K::Exotic);
    CHECK(c0.classify({2, 2, 0}) == K::Exotic);

    GradingConfig c3(3);
    CHECK(c3.classify({0, 0, 0}) == K::Bosonic);
    CHECK(c3.classify({2, 2, 2}) == K::Bosonic);
    CHECK(c3.classify({1, 1, 1}) == K::Fermionic);
    CHECK(c3.classify({1, 0, 0}) == K::Exotic);

    // n = 4, degree (2,0,0): commutes or anticommutes with everything but has
    // epsilon(x,x) = +1, so it is neither bosonic nor fermionic.
    GradingConfig c4(4);
    CHECK(c4.classify({2, 0, 0}) == K::Exotic);
    CHECK(c4.classify({2, 2, 2}) == K::Bosonic);
    CHECK(c4.classify({3, 3, 3}) == K::Fermionic);

    GradingConfig c6(6);
    CHECK(c6.classify({3, 3, 3}) == K::Fermionic);
}
