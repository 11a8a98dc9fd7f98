#include <doctest.h>

#include "colorpoincare/superalgebra.hpp"

using namespace colorpoincare;

namespace {

// bracket() returns target-sorted terms with zero coefficients dropped, so
// expected values can be compared as sorted lists.
void expect_bracket(const Superalgebra& alg, int i, int j,
                    std::vector<std::pair<int, Scalar>> want) {
    std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const LinComb& have = alg.bracket(i, j);
    REQUIRE(have.size() == want.size());
    for (size_t k = 0; k < have.size(); ++k) {
        CHECK(have[k].first == want[k].first);
        CHECK(have[k].second == want[k].second);
    }
}

}  // namespace

TEST_CASE("basis layout and degrees") {
    GradingConfig cfg(3);
    Superalgebra four = Superalgebra::make(cfg, 4);
    Superalgebra two = Superalgebra::make(cfg, 2);
    CHECK(four.dim() == 90);
    CHECK(two.dim() == 74);

    CHECK(four.at(four.m_index(1, 2)).name == "M[1,2]");
    CHECK(four.at(four.p_index(4)).name == "P[4]");
    CHECK(four.at(four.q_index(0, 0)).name == "Q[1;w]");
    CHECK(four.at(four.q_index(5, 3)).name == "Q[4;rb]");
    CHECK(four.at(four.r_index(0, 0)).name == "R[1;r+g]");
    CHECK(four.at(four.r_index(11, 3)).name == "R[4;bb+r]");
    CHECK(four.index_of("Q[2;gb]") == four.q_index(6, 1));
    CHECK(four.index_of("nope") == -1);

    CHECK(four.at(four.q_index(0, 0)).deg == Degree{1, 1, 1});
    CHECK(four.at(four.q_index(7, 0)).deg == Degree{0, 0, -1});
    CHECK(four.at(four.r_index(8, 0)).deg == Degree{-1, 0, 1});  // b+rb
    CHECK(four.at(four.m_index(2, 4)).deg.is_zero());

    // 21 distinct degrees: 0, 8 cubic, 12 bicolor
    for (int i = 0; i < four.dim(); ++i)
        for (int j = 0; j < four.dim(); ++j)
            CHECK(four.epsilon_basis(i, j) == cfg.epsilon(four.at(i).deg, four.at(j).deg));
}

TEST_CASE("four-component bracket values against hand computation") {
    GradingConfig cfg(3);
    const FieldPtr& f = cfg.field();
    Superalgebra alg = Superalgebra::make(cfg, 4);
    Scalar I = Scalar::i(f), one = Scalar::one(f);
    Scalar q = Scalar::q_power(f, 1);
    Scalar two = Scalar::from_rational(f, 2);
    Scalar half = Scalar::from_rational(f, Rational(1, 2));

    // Lorentz sector: [M12, M23] = i hbar M13, [M12, M34] = 0.
    expect_bracket(alg, alg.m_index(1, 2), alg.m_index(2, 3), {{alg.m_index(1, 3), I}});
    expect_bracket(alg, alg.m_index(1, 2), alg.m_index(3, 4), {});
    // Vector action: [M12, P1] = -i P2, [M12, P2] = i P1, [M12, P3] = 0;
    // the fourth slot carries the metric sign: [M14, P4] = -i P1.
    expect_bracket(alg, alg.m_index(1, 2), alg.p_index(1), {{alg.p_index(2), -I}});
    expect_bracket(alg, alg.m_index(1, 2), alg.p_index(2), {{alg.p_index(1), I}});
    expect_bracket(alg, alg.m_index(1, 2), alg.p_index(3), {});
    expect_bracket(alg, alg.m_index(1, 4), alg.p_index(4), {{alg.p_index(1), -I}});
    // Same action on the vector index of R.
    expect_bracket(alg, alg.m_index(1, 2), alg.r_index(0, 0), {{alg.r_index(0, 1), -I}});

    // Spin action, frozen convention: gamma1 gamma2 = -i (1 x sigma2), so
    // [M12, Q1] = (i/2) Q2 within every degree.
    for (int di : {0, 1, 4, 6}) {
        expect_bracket(alg, alg.m_index(1, 2), alg.q_index(di, 0), {{alg.q_index(di, 1), half * I}});
        expect_bracket(alg, alg.m_index(1, 2), alg.q_index(di, 1), {{alg.q_index(di, 0), -(half * I)}});
    }

    // White pairing: gamma^1 C = -i sigma1 x sigma1, gamma^3 C = i sigma3 x 1,
    // gamma^4 C = -i. With kappa = 2: [Q1w, Q4wb] = 2i P1,
    // [Q1w, Q1wb] = -2i P3 + 2i P4.
    expect_bracket(alg, alg.q_index(0, 0), alg.q_index(4, 3), {{alg.p_index(1), two * I}});
    expect_bracket(alg, alg.q_index(0, 0), alg.q_index(4, 0),
                   {{alg.p_index(3), -(two * I)}, {alg.p_index(4), two * I}});
    // Colour pairing onto the bicolor translations:
    // [Q1r, Q1g] = i(1-q) (R3 - R4) in degree r+g.
    expect_bracket(alg, alg.q_index(1, 0), alg.q_index(2, 0),
                   {{alg.r_index(0, 2), I * (one - q)}, {alg.r_index(0, 3), -(I * (one - q))}});
    // White-anticolour sector: [Q1w, Q1rb] = -2i R3 + 2i R4 in degree g+b.
    expect_bracket(alg, alg.q_index(0, 0), alg.q_index(5, 0),
                   {{alg.r_index(1, 2), -(two * I)}, {alg.r_index(1, 3), two * I}});

    // Sectors with no admissible target vanish.
    expect_bracket(alg, alg.p_index(1), alg.p_index(2), {});
    expect_bracket(alg, alg.p_index(1), alg.q_index(0, 0), {});
    expect_bracket(alg, alg.q_index(0, 0), alg.q_index(1, 0), {});  // white-colour
    expect_bracket(alg, alg.q_index(1, 0), alg.q_index(1, 1), {});  // same degree
    expect_bracket(alg, alg.q_index(2, 0), alg.r_index(0, 0), {});
    expect_bracket(alg, alg.r_index(0, 0), alg.r_index(3, 0), {});
}

TEST_CASE("two-component bracket values against hand computation") {
    GradingConfig cfg(3);
    const FieldPtr& f = cfg.field();
    Superalgebra alg = Superalgebra::make(cfg, 2);
    Scalar I = Scalar::i(f);
    Scalar two = Scalar::from_rational(f, 2);
    Scalar half = Scalar::from_rational(f, Rational(1, 2));

    // [Q1w, Q1wb] = 2 P3 + 2 P4 (pairing sigma3 and the folded fourth slot).
    expect_bracket(alg, alg.q_index(0, 0), alg.q_index(4, 0),
                   {{alg.p_index(3), two}, {alg.p_index(4), two}});
    // [Q1r, Q2rb] = 2 P1 - 2i P2.
    expect_bracket(alg, alg.q_index(1, 0), alg.q_index(5, 1),
                   {{alg.p_index(1), two}, {alg.p_index(2), -(two * I)}});
    // Spin action sigma1 sigma2 = i sigma3: [M12, Q1w] = (1/2) Q1w, and the
    // anti-handed spinors transform with the conjugate: [M12, Q1wb] = -(1/2) Q1wb.
    expect_bracket(alg, alg.m_index(1, 2), alg.q_index(0, 0), {{alg.q_index(0, 0), half}});
    expect_bracket(alg, alg.m_index(1, 2), alg.q_index(4, 0), {{alg.q_index(4, 0), -half}});
}

TEST_CASE("grading and antisymmetry hold for both formulations and orders") {
    for (int n : {0, 3, 5}) {
        GradingConfig cfg(n);
        for (int sd : {2, 4}) {
            Superalgebra alg = Superalgebra::make(cfg, sd);
            auto g = alg.grading_report();
            CHECK(g.failure_count == 0);
            CHECK(g.cases == static_cast<long long>(alg.dim()) * alg.dim());
            auto a = alg.antisymmetry_report();
            CHECK(a.failure_count == 0);
        }
    }
}

TEST_CASE("four-component graded Jacobi identity holds on all ordered triples") {
    for (int n : {0, 3}) {
        GradingConfig cfg(n);
        Superalgebra alg = Superalgebra::make(cfg, 4);
        auto rep = alg.jacobi_report(/*parallel=*/true);
        CHECK(rep.cases == 729000);
        CHECK(rep.failure_count == 0);
    }
}

TEST_CASE("two-component Jacobi failure set is exactly the chirality obstruction") {
    // The pure bicolor sectors pair two same-handed two-spinors into a
    // four-vector, which no convention can make Lorentz covariant. The
    // verifier must find failures, and only in triples containing such a pair.
    GradingConfig cfg(3);
    Superalgebra alg = Superalgebra::make(cfg, 2);
    auto rep = alg.jacobi_report(/*parallel=*/true);
    CHECK(rep.failure_count == 432);
    CHECK(rep.info.at("failures_with_same_handed_colour_pair") == "432");
    CHECK(rep.info.at("failures_otherwise") == "0");

    // The obstruction is independent of the grading order.
    GradingConfig cfg0(0);
    auto rep0 = Superalgebra::make(cfg0, 2).jacobi_report(true);
    CHECK(rep0.failure_count == 432);
    CHECK(rep0.info.at("failures_otherwise") == "0");
}

TEST_CASE("jacobi serial and parallel paths agree") {
    GradingConfig cfg(3);
    Superalgebra alg = Superalgebra::make(cfg, 2);
    auto a = alg.jacobi_report(false);
    auto b = alg.jacobi_report(true);
    CHECK(a.failure_count == b.failure_count);
    REQUIRE(a.failures.size() == b.failures.size());
    for (size_t k = 0; k < a.failures.size(); ++k) {
        CHECK(a.failures[k].context == b.failures[k].context);
        CHECK(a.failures[k].detail == b.failures[k].detail);
    }
}

TEST_CASE("kappa configuration") {
    GradingConfig cfg(3);
    KappaConfig k;
    CHECK(k.of(Degree{1, 1, 1}) == Rational(2));
    CHECK(k.of(Degree{0, 0, -1}) == k.of(Degree{0, 0, 1}));
    CHECK_THROWS_AS(k.of(Degree{1, 1, 0}), std::invalid_argument);

    // kappa_white = 8, kappa_r = 2: sqrt(16) = 4, still rational.
    KappaConfig k2;
    k2.white = 8;
    Superalgebra alg = Superalgebra(cfg, default_clifford(cfg.field(), 4), k2);
    Scalar I = Scalar::i(cfg.field());
    Scalar four = Scalar::from_rational(cfg.field(), 4);
    // [Q1w, Q1rb] = -sqrt(kappa_w kappa_r) (i R3 - i R4) = -4i R3 + 4i R4
    const LinComb& br = alg.bracket(alg.q_index(0, 0), alg.q_index(5, 0));
    REQUIRE(br.size() == 2);
    CHECK(br[0].second == -(four * I));
    CHECK(alg.jacobi_report(true).failure_count == 0);

    // Q(zeta_24) contains sqrt(2) and sqrt(3), so odd kappa products work at n=3...
    KappaConfig k3;
    k3.r = 3;
    CHECK_NOTHROW(Superalgebra(cfg, default_clifford(cfg.field(), 4), k3));
    // ...but Q(zeta_40) has no sqrt(6): the constructor must refuse, clearly.
    GradingConfig cfg5(5);
    CHECK_THROWS_AS(Superalgebra(cfg5, default_clifford(cfg5.field(), 4), k3), std::domain_error);
}

TEST_CASE("fault injection is detected by the matching report") {
    GradingConfig cfg(3);
    {
        Superalgebra alg = Superalgebra::make(cfg, 4);
        alg.inject_fault("epsilon-sign");
        CHECK(alg.antisymmetry_report().failure_count > 0);
        CHECK(alg.jacobi_report(true).failure_count > 0);
    }
    {
        Superalgebra alg = Superalgebra::make(cfg, 4);
        alg.inject_fault("jacobi-drop");
        CHECK(alg.jacobi_report(true).failure_count > 0);
    }
    {
        Superalgebra alg = Superalgebra::make(cfg, 4);
        alg.inject_fault("grading-shift");
        CHECK(alg.grading_report().failure_count > 0);
    }
    Superalgebra alg = Superalgebra::make(cfg, 4);
    CHECK_THROWS_AS(alg.inject_fault("bogus"), std::invalid_argument);
}

TEST_CASE("convention search reproduces the frozen conventions") {
    GradingConfig cfg(3);

    auto four = convention_search(cfg, 4);
    REQUIRE(!four.empty());
    CHECK(four.size() == 72);  // structurally admissible candidates
    CHECK(four.front().probe_failures == 0);
    CHECK(four.front().id == "4c;metric=(+,+,+,-);set=majorana;worder=ab;C=g{4}*1");
    long long ties4 = 0;
    for (const auto& c : four)
        if (c.probe_failures == 0) ++ties4;
    // Jacobi constrains the spin order and the C class but neither the metric
    // signature nor the phase of C: 3 metrics x 3 sets x 4 phases survive.
    CHECK(ties4 == 36);
    for (const auto& c : four)
        if (c.probe_failures == 0) CHECK(c.id.find("worder=ab") != std::string::npos);

    auto two = convention_search(cfg, 2);
    REQUIRE(!two.empty());
    CHECK(two.front().probe_failures == 432);  // the obstruction minimum
    CHECK(two.front().id == "2c;metric=(+,+,+,-);sigma4=1;worder=ab;X=sigma;p=+1;x4=-1");
    long long ties2 = 0;
    for (const auto& c : two)
        if (c.probe_failures == 432) ++ties2;
    CHECK(ties2 == 4);  // global sign equivalences

    // The library defaults agree with the winners (for spinor_dim 4 up to the
    // documented C phase, taking the real antisymmetric representative).
    Superalgebra def4(cfg, default_clifford(cfg.field(), 4));
    std::vector<int> probe;
    for (int i = 0; i < 42; ++i) probe.push_back(i);
    CHECK(def4.jacobi_failures_on(probe) == 0);
    CHECK(default_clifford(cfg.field(), 2).record.at("metric") == "(+,+,+,-)");
    CHECK(default_clifford(cfg.field(), 2).record.at("pairing") == "sigma, p=+1, x4=-1");
}
