#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "colorpoincare/representation.hpp"

namespace colorpoincare {

// Finite transformation [Lambda | T | zeta | U] of the graded Poincare
// group: a Lorentz pair (vector matrix plus spinor tail), four even
// translations, eight odd translation quadruples (one per mono/white
// degree) and twelve bicolor quadruples.  Entries are multivectors over the
// representation's host algebra; every slot is degree-homogeneous.
struct GroupElement {
    MatMV lambda;     // 4x4 degree-0 entries, Lambda^T eta Lambda = eta
    MatMV spin_tail;  // 4x4 spinor lift, see Supergroup::lorentz_pair_valid
    std::array<Multivector, 4> t;                    // degree 0
    std::array<std::array<Multivector, 4>, 8> zeta;  // [deg_idx][component]
    std::array<std::array<Multivector, 4>, 12> u;    // [bicolor_idx][component]

    explicit GroupElement(const GrassmannAlgebra* alg)
        : lambda(alg, 4, 4), spin_tail(alg, 4, 4) {
        for (auto& m : t) m = Multivector(alg);
        for (auto& q : zeta)
            for (auto& m : q) m = Multivector(alg);
        for (auto& q : u)
            for (auto& m : q) m = Multivector(alg);
    }
};

// exp of a square-zero supermatrix, i.e. 1 + M.  The precondition M*M == 0
// is checked, not assumed; violations throw std::domain_error naming the
// first nonzero block of the square.
SuperMatrix exp_nilpotent(const SuperMatrix& m);

// The group built on top of the 100x100 representation.  Owns the host
// algebra in which all parameter generators live; elements from different
// Supergroup instances must not be mixed.
class Supergroup {
  public:
    explicit Supergroup(const Superalgebra& alg);
    Supergroup(const Supergroup&) = delete;
    Supergroup& operator=(const Supergroup&) = delete;

    const Superalgebra& algebra() const { return *alg_; }
    const Representation& representation() const { return rep_; }
    GrassmannAlgebra& params() { return host_; }
    const GrassmannAlgebra& params() const { return host_; }
    const FieldPtr& field() const { return f_; }

    // --- element builders -------------------------------------------------
    GroupElement identity_element() const;
    // Exact quarter turn in the (alpha, beta) plane, 1 <= alpha < beta <= 3.
    GroupElement rotation_element(int alpha, int beta) const;
    // Exact boost along axis 1..3 with cosh = 5/4, sinh = 3/4.
    GroupElement boost_element(int axis) const;
    // Right-multiplies the Lorentz pair of g by exp(omega * generator) in the
    // (alpha, beta) plane, 1 <= alpha < beta <= 4; omega must be an even
    // nilpotent multivector of degree 0, otherwise the series cannot stop.
    GroupElement lorentz_corrected(GroupElement g, int alpha, int beta,
                                   const Multivector& omega) const;

    void set_t(GroupElement& g, int mu, Multivector v) const;  // mu 1..4
    void set_zeta(GroupElement& g, int deg_idx, int comp, Multivector v) const;
    void set_u(GroupElement& g, int bicolor_idx, int comp, Multivector v) const;

    // Metric preservation Lambda^T eta Lambda = eta together with the
    // spinor-vector intertwining relation
    //   tail^T (gamma^mu C) tail = sum_nu Lambda^mu_nu (gamma^nu C).
    bool lorentz_pair_valid(const MatMV& lambda, const MatMV& tail,
                            std::string* why = nullptr) const;
    // Induced matrix on the odd parameter quadruples: the entrywise adjoint
    // of gamma4 tail^T gamma4^{-1}, transposed.  For rotations this equals
    // the tail itself; conjugating the dressed odd factor by the Lorentz
    // factor replaces zeta by param_spin(tail) * zeta.
    MatMV param_spin(const MatMV& tail) const;

    // --- representation -----------------------------------------------------
    // Product of the factor supermatrices: U factor, then the eight odd
    // factors in degree order, then the translation factor, then the Lorentz
    // factor.
    SuperMatrix rep_of_element(const GroupElement& g) const;
    // Dressed odd generator sum (i/sqrt(hbar)) sum_ab zeta^{a#} (gamma4)_{ab}
    // Gamma(Q_b) of one degree sector; the odd factor is 1 + odd_part.
    SuperMatrix odd_part(int deg_idx, const std::array<Multivector, 4>& z) const;
    SuperMatrix lambda_factor(const GroupElement& g) const;

    // --- group law ----------------------------------------------------------
    GroupElement compose(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& g) const;
    bool equal(const GroupElement& a, const GroupElement& b) const;

    // Randomized element activating at most max_active fresh parameter
    // generators (bounds monomial growth in exact arithmetic).
    GroupElement random_element(std::mt19937_64& rng, int max_active = 6);

    // --- suites -------------------------------------------------------------
    // Matrix-product oracle rep(compose(g,h)) == rep(g) rep(h), associativity,
    // two-sided inverse, and degree-0 homogeneity over seeded random samples.
    SuiteReport composition_report(std::uint64_t seed, int samples, bool parallel = true);
    // Parameter-count audit, Lorentz builder validity, the odd-factor
    // conjugation identity, the exp_nilpotent domain, and diagnostics
    // comparing the derived composition corrections with the closed-form
    // opposite-degree contraction.
    SuiteReport structure_report();

    // Degree-tagged JSON rendering of an element (external interface for the
    // CLI's supergroup suite).
    std::string element_json(const GroupElement& g) const;

  private:
    struct OddCorrections {
        std::array<Multivector, 4> tau;                      // adds to T
        std::array<std::array<Multivector, 4>, 12> rho_sharp;  // adjoints add to U
        int contributing_pairs = 0;  // ordered degree pairs with nonzero commutator
    };
    // Corrections from reordering the odd factors of a product into canonical
    // degree order; left holds the left element's zeta, right the already
    // spin-transformed zeta of the right element.
    OddCorrections corrections(const std::array<std::array<Multivector, 4>, 8>& left,
                               const std::array<std::array<Multivector, 4>, 8>& right) const;
    Multivector fresh(const Degree& d, const std::string& tag);
    MatMV to_mv(const MatS& m) const;
    // Inverse over the even subalgebra: exact inverse of the scalar part plus
    // a terminating Neumann series on the nilpotent remainder.
    MatMV matmv_inverse(const MatMV& a) const;
    void warm_gamma_cache() const;
    GroupElement lorentz_from_tail(const MatS& tail) const;

    const Superalgebra* alg_;
    GrassmannAlgebra host_;
    Representation rep_;
    FieldPtr f_;
    // Degree-d parameters dress the degree-(-d) generator matrices, so the
    // dressed factors are homogeneous of degree 0.  These map each slot to
    // the opposite-degree sector.
    std::array<int, 8> q_opp_{};
    std::array<int, 12> r_opp_{};
    Scalar i_over_h_;    // i / hbar
    Scalar inv_sqrt_h_;  // 1 / sqrt(hbar)
    Scalar lambda_s_;    // the length unit as a scalar
    std::uint64_t param_counter_ = 0;
};

}  // namespace colorpoincare
