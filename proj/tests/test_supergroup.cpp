#include <doctest.h>

#include <random>
#include <stdexcept>

#include "colorpoincare/supergroup.hpp"

using namespace colorpoincare;

namespace {

struct Fixture {
    GradingConfig cfg;
    Superalgebra alg;
    Supergroup grp;
    Fixture() : cfg(3), alg(Superalgebra::make(cfg, 4)), grp(alg) {}
};

Multivector param(Supergroup& g, const std::string& name, const Degree& d) {
    GrassmannAlgebra& h = g.params();
    int id = h.parameter(name, d);
    Multivector m(&h);
    m.accumulate({id}, Scalar::one(g.field()));
    return m;
}

Multivector bicolor_param(Supergroup& g, const std::string& name, const Degree& d) {
    GrassmannAlgebra& h = g.params();
    int id = h.parameter(name, d, Scalar::one(g.field()));
    Multivector m(&h);
    m.accumulate({id}, Scalar::one(g.field()));
    return m;
}

}  // namespace

TEST_CASE("Lorentz builders satisfy the metric and intertwining relations") {
    Fixture fx;
    std::string why;
    for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
        GroupElement g = fx.grp.rotation_element(a, b);
        CHECK(fx.grp.lorentz_pair_valid(g.lambda, g.spin_tail, &why));
    }
    for (int k = 1; k <= 3; ++k) {
        GroupElement g = fx.grp.boost_element(k);
        CHECK(fx.grp.lorentz_pair_valid(g.lambda, g.spin_tail, &why));
    }

    // The quarter-turn in the (1,2) plane maps e1 -> -e2, e2 -> e1.
    GroupElement r12 = fx.grp.rotation_element(1, 2);
    const FieldPtr& f = fx.grp.field();
    CHECK(r12.lambda.at(0, 1).coefficient({}) == Scalar::one(f));
    CHECK(r12.lambda.at(1, 0).coefficient({}) == Scalar::from_rational(f, -1));
    CHECK(r12.lambda.at(2, 2).coefficient({}) == Scalar::one(f));
    CHECK(r12.lambda.at(3, 3).coefficient({}) == Scalar::one(f));
    CHECK(r12.lambda.at(0, 0).is_zero());

    // The axis-3 boost has cosh = 5/4, sinh = 3/4.
    GroupElement b3 = fx.grp.boost_element(3);
    CHECK(b3.lambda.at(2, 2).coefficient({}) == Scalar::from_rational(f, Rational(5, 4)));
    CHECK(b3.lambda.at(3, 3).coefficient({}) == Scalar::from_rational(f, Rational(5, 4)));
    CHECK(b3.lambda.at(0, 0).coefficient({}) == Scalar::one(f));
}

TEST_CASE("translations compose additively and match the matrix oracle") {
    Fixture fx;
    GroupElement a = fx.grp.identity_element();
    GroupElement b = fx.grp.identity_element();
    Multivector s = param(fx.grp, "s", Degree{0, 0, 0});
    fx.grp.set_t(a, 1, s);
    fx.grp.set_t(b, 1, Multivector::scalar(fx.grp.params(), Scalar::from_rational(fx.grp.field(), 3)));
    fx.grp.set_t(b, 4, s);

    GroupElement ab = fx.grp.compose(a, b);
    CHECK((ab.t[0] - (a.t[0] + b.t[0])).is_zero());
    CHECK((ab.t[3] - s).is_zero());
    CHECK((fx.grp.rep_of_element(ab) == fx.grp.rep_of_element(a) * fx.grp.rep_of_element(b)));

    // A rotation mixes the translation slots of the right factor: the (1,2)
    // quarter turn sends the first slot of b into minus the second.
    GroupElement r = fx.grp.rotation_element(1, 2);
    GroupElement rb = fx.grp.compose(r, b);
    CHECK(rb.t[0].is_zero());
    CHECK((rb.t[1] + b.t[0]).is_zero());
    CHECK((rb.t[3] - s).is_zero());
    CHECK((fx.grp.rep_of_element(rb) == fx.grp.rep_of_element(r) * fx.grp.rep_of_element(b)));
}

TEST_CASE("same-degree odd slots merge by addition") {
    Fixture fx;
    GroupElement a = fx.grp.identity_element();
    GroupElement b = fx.grp.identity_element();
    Multivector z1 = param(fx.grp, "z1", Superalgebra::q_degrees()[2]);
    Multivector z2 = param(fx.grp, "z2", Superalgebra::q_degrees()[2]);
    fx.grp.set_zeta(a, 2, 0, z1);
    fx.grp.set_zeta(b, 2, 0, z2);
    GroupElement ab = fx.grp.compose(a, b);
    CHECK((ab.zeta[2][0] - (z1 + z2)).is_zero());
    for (int mu = 0; mu < 4; ++mu) CHECK(ab.t[static_cast<size_t>(mu)].is_zero());
    for (int c = 0; c < 12; ++c)
        for (int k = 0; k < 4; ++k) CHECK(ab.u[static_cast<size_t>(c)][static_cast<size_t>(k)].is_zero());
    CHECK((fx.grp.rep_of_element(ab) == fx.grp.rep_of_element(a) * fx.grp.rep_of_element(b)));
}

TEST_CASE("opposite odd degrees generate an even translation correction") {
    Fixture fx;
    const FieldPtr& f = fx.grp.field();
    // Left factor carries an antiwhite quadruple, right factor a white one:
    // reordering them produces tau but no bicolor correction.
    GroupElement a = fx.grp.identity_element();
    GroupElement b = fx.grp.identity_element();
    std::array<Multivector, 4> za, zb;
    for (int k = 0; k < 4; ++k) {
        za[static_cast<size_t>(k)] = param(fx.grp, "xa" + std::to_string(k), Superalgebra::q_degrees()[4]);
        zb[static_cast<size_t>(k)] = param(fx.grp, "xb" + std::to_string(k), Superalgebra::q_degrees()[0]);
        fx.grp.set_zeta(a, 4, k, za[static_cast<size_t>(k)]);
        fx.grp.set_zeta(b, 0, k, zb[static_cast<size_t>(k)]);
    }
    GroupElement ab = fx.grp.compose(a, b);

    bool any_tau = false;
    for (int mu = 0; mu < 4; ++mu) any_tau = any_tau || !ab.t[static_cast<size_t>(mu)].is_zero();
    CHECK(any_tau);
    for (int c = 0; c < 12; ++c)
        for (int k = 0; k < 4; ++k) CHECK(ab.u[static_cast<size_t>(c)][static_cast<size_t>(k)].is_zero());

    // Closed form: tau^mu = -kappa zeta^{a#} (gamma4 gamma^mu)_{ab} xi^{b#}
    // with kappa the antiwhite coefficient.
    const CliffordData& cl = fx.alg.clifford();
    Scalar kap = Scalar::from_rational(f, fx.alg.kappa().of(Superalgebra::q_degrees()[4]));
    for (int mu = 1; mu <= 4; ++mu) {
        MatS g4gmu = cl.gamma[3] * (Scalar::from_rational(f, cl.eta(mu)) * cl.gamma[static_cast<size_t>(mu - 1)]);
        Multivector expect(&fx.grp.params());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (g4gmu.at(i, j).is_zero()) continue;
                expect += (Scalar::from_rational(f, -1) * kap * g4gmu.at(i, j)) *
                          (za[static_cast<size_t>(i)].adjoint() * zb[static_cast<size_t>(j)].adjoint());
            }
        CHECK((ab.t[static_cast<size_t>(mu - 1)] - expect).is_zero());
    }
    CHECK((fx.grp.rep_of_element(ab) == fx.grp.rep_of_element(a) * fx.grp.rep_of_element(b)));

    // In the opposite order nothing needs reordering, so no correction.
    GroupElement ba = fx.grp.compose(b, a);
    for (int mu = 0; mu < 4; ++mu) CHECK(ba.t[static_cast<size_t>(mu)].is_zero());
    CHECK((fx.grp.rep_of_element(ba) == fx.grp.rep_of_element(b) * fx.grp.rep_of_element(a)));
}

TEST_CASE("colored odd degrees generate a bicolor correction in the right sector") {
    Fixture fx;
    GroupElement a = fx.grp.identity_element();
    GroupElement b = fx.grp.identity_element();
    // green (index 2) past red (index 1): degree sum r+g, the first bicolor
    // sector.
    fx.grp.set_zeta(a, 2, 1, param(fx.grp, "zg", Superalgebra::q_degrees()[2]));
    fx.grp.set_zeta(b, 1, 3, param(fx.grp, "zr", Superalgebra::q_degrees()[1]));
    GroupElement ab = fx.grp.compose(a, b);
    for (int mu = 0; mu < 4; ++mu) CHECK(ab.t[static_cast<size_t>(mu)].is_zero());
    bool sector0 = false;
    for (int k = 0; k < 4; ++k) sector0 = sector0 || !ab.u[0][static_cast<size_t>(k)].is_zero();
    CHECK(sector0);
    for (int c = 1; c < 12; ++c)
        for (int k = 0; k < 4; ++k) CHECK(ab.u[static_cast<size_t>(c)][static_cast<size_t>(k)].is_zero());
    CHECK((fx.grp.rep_of_element(ab) == fx.grp.rep_of_element(a) * fx.grp.rep_of_element(b)));
}

TEST_CASE("Lorentz factors transform the odd and even slots of the right factor") {
    Fixture fx;
    GroupElement r = fx.grp.rotation_element(2, 3);
    GroupElement b = fx.grp.identity_element();
    Multivector z = param(fx.grp, "zz", Superalgebra::q_degrees()[7]);
    Multivector u = bicolor_param(fx.grp, "uu", Superalgebra::r_degrees()[6]);
    fx.grp.set_zeta(b, 7, 1, z);
    fx.grp.set_u(b, 6, 2, u);
    fx.grp.set_t(b, 2, Multivector::scalar(fx.grp.params(), Scalar::one(fx.grp.field())));
    GroupElement rb = fx.grp.compose(r, b);
    CHECK((fx.grp.rep_of_element(rb) == fx.grp.rep_of_element(r) * fx.grp.rep_of_element(b)));
    GroupElement br = fx.grp.compose(b, r);
    CHECK((fx.grp.rep_of_element(br) == fx.grp.rep_of_element(b) * fx.grp.rep_of_element(r)));
    CHECK(!fx.grp.equal(rb, br));
}

TEST_CASE("nilpotent-corrected Lorentz pairs stay valid and satisfy the oracle") {
    Fixture fx;
    Multivector om = param(fx.grp, "o1", Superalgebra::q_degrees()[3]) *
                     param(fx.grp, "o2", Superalgebra::q_degrees()[7]);
    GroupElement g = fx.grp.lorentz_corrected(fx.grp.boost_element(1), 2, 4, om);
    std::string why;
    CHECK(fx.grp.lorentz_pair_valid(g.lambda, g.spin_tail, &why));
    GroupElement h = fx.grp.identity_element();
    fx.grp.set_t(h, 3, param(fx.grp, "t3", Degree{0, 0, 0}));
    fx.grp.set_zeta(h, 5, 0, param(fx.grp, "z5", Superalgebra::q_degrees()[5]));
    GroupElement gh = fx.grp.compose(g, h);
    CHECK((fx.grp.rep_of_element(gh) == fx.grp.rep_of_element(g) * fx.grp.rep_of_element(h)));
}

TEST_CASE("inverse is two-sided on a fully loaded element") {
    Fixture fx;
    GroupElement g = fx.grp.compose(fx.grp.rotation_element(1, 2), fx.grp.boost_element(2));
    fx.grp.set_t(g, 1, param(fx.grp, "it", Degree{0, 0, 0}));
    fx.grp.set_zeta(g, 0, 0, param(fx.grp, "iw", Superalgebra::q_degrees()[0]));
    fx.grp.set_zeta(g, 4, 2, param(fx.grp, "iwb", Superalgebra::q_degrees()[4]));
    fx.grp.set_zeta(g, 1, 1, param(fx.grp, "ir", Superalgebra::q_degrees()[1]));
    fx.grp.set_u(g, 9, 3, bicolor_param(fx.grp, "iu", Superalgebra::r_degrees()[9]));
    GroupElement gi = fx.grp.inverse(g);
    GroupElement id = fx.grp.identity_element();
    CHECK(fx.grp.equal(fx.grp.compose(g, gi), id));
    CHECK(fx.grp.equal(fx.grp.compose(gi, g), id));
    // the matrix inverse agrees
    CHECK((fx.grp.rep_of_element(g) * fx.grp.rep_of_element(gi) == fx.grp.representation().identity()));
}

TEST_CASE("associativity on a loaded triple") {
    Fixture fx;
    GroupElement g = fx.grp.rotation_element(1, 3);
    fx.grp.set_zeta(g, 6, 2, param(fx.grp, "ag", Superalgebra::q_degrees()[6]));
    GroupElement h = fx.grp.boost_element(3);
    fx.grp.set_zeta(h, 2, 0, param(fx.grp, "ah", Superalgebra::q_degrees()[2]));
    fx.grp.set_t(h, 2, param(fx.grp, "at", Degree{0, 0, 0}));
    GroupElement k = fx.grp.identity_element();
    fx.grp.set_zeta(k, 3, 1, param(fx.grp, "ak", Superalgebra::q_degrees()[3]));
    fx.grp.set_u(k, 0, 0, bicolor_param(fx.grp, "au", Superalgebra::r_degrees()[0]));
    CHECK(fx.grp.equal(fx.grp.compose(fx.grp.compose(g, h), k),
                       fx.grp.compose(g, fx.grp.compose(h, k))));
}

TEST_CASE("exp_nilpotent accepts square-zero dressings and rejects the rest") {
    Fixture fx;
    const Representation& rep = fx.grp.representation();
    Scalar ih = Scalar::i(fx.grp.field());

    GroupElement el = fx.grp.identity_element();
    Multivector tv = param(fx.grp, "et", Degree{0, 0, 0});
    fx.grp.set_t(el, 1, tv);
    SuperMatrix m = rep.gamma_of(fx.alg.p_index(1)).left_mul(ih * tv);
    CHECK((exp_nilpotent(m) == fx.grp.rep_of_element(el)));

    // an opposite-degree mix squares to zero and exponentiates to 1 + X,
    // which differs from the two-factor product by the ordering cross term
    std::array<Multivector, 4> zr, zrb, zg;
    for (auto& v : zr) v = Multivector(&fx.grp.params());
    for (auto& v : zrb) v = Multivector(&fx.grp.params());
    for (auto& v : zg) v = Multivector(&fx.grp.params());
    zr[0] = param(fx.grp, "er", Superalgebra::q_degrees()[1]);
    zrb[0] = param(fx.grp, "erb", Superalgebra::q_degrees()[5]);
    zg[0] = param(fx.grp, "eg", Superalgebra::q_degrees()[2]);
    SuperMatrix x = fx.grp.odd_part(5, zrb);
    SuperMatrix y = fx.grp.odd_part(1, zr);
    CHECK((exp_nilpotent(x + y) == rep.identity() + x + y));
    GroupElement mixed = fx.grp.identity_element();
    fx.grp.set_zeta(mixed, 5, 0, zrb[0]);
    fx.grp.set_zeta(mixed, 1, 0, zr[0]);
    CHECK((exp_nilpotent(x + y) != fx.grp.rep_of_element(mixed)));

    // a colored x colored mix of different, non-opposite degrees has a
    // nonzero square and is outside the domain
    CHECK_THROWS_AS(exp_nilpotent(fx.grp.odd_part(2, zg) + fx.grp.odd_part(1, zr)),
                    std::domain_error);

    // rotation generators never square to zero
    CHECK_THROWS_AS(exp_nilpotent(rep.gamma_of(fx.alg.m_index(1, 2))
                                      .left_mul(Multivector::scalar(fx.grp.params(), ih))),
                    std::domain_error);
}

TEST_CASE("slot setters enforce degree homogeneity") {
    Fixture fx;
    GroupElement g = fx.grp.identity_element();
    CHECK_THROWS_AS(fx.grp.set_t(g, 1, param(fx.grp, "bad1", Superalgebra::q_degrees()[1])),
                    std::invalid_argument);
    CHECK_THROWS_AS(fx.grp.set_zeta(g, 0, 0, param(fx.grp, "bad2", Superalgebra::q_degrees()[1])),
                    std::invalid_argument);
    CHECK_THROWS_AS(fx.grp.set_u(g, 0, 0, param(fx.grp, "bad3", Degree{0, 0, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(fx.grp.rotation_element(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(fx.grp.boost_element(4), std::invalid_argument);
}

TEST_CASE("element JSON names every degree sector") {
    Fixture fx;
    GroupElement g = fx.grp.identity_element();
    fx.grp.set_zeta(g, 1, 0, param(fx.grp, "jz", Superalgebra::q_degrees()[1]));
    std::string j = fx.grp.element_json(g);
    CHECK(j.find("\"lambda\"") != std::string::npos);
    CHECK(j.find("\"zeta\"") != std::string::npos);
    CHECK(j.find("jz") != std::string::npos);
    CHECK(j.find(Superalgebra::q_degree_name(1)) != std::string::npos);
}

TEST_CASE("randomized composition suite is clean") {
    Fixture fx;
    SuiteReport r = fx.grp.composition_report(20260814, 12, true);
    if (!r.passed())
        for (const auto& fl : r.failures) MESSAGE((fl.context + ": " + fl.detail));
    CHECK(r.passed());
    CHECK(r.cases == 48);
}

TEST_CASE("structure suite is clean") {
    Fixture fx;
    SuiteReport r = fx.grp.structure_report();
    if (!r.passed())
        for (const auto& fl : r.failures) MESSAGE((fl.context + ": " + fl.detail));
    CHECK(r.passed());
    CHECK(r.info.count("correction pairs") == 1);
    CHECK(r.info.at("symmetric eight-term sum").substr(0, 7) == "differs");
}
