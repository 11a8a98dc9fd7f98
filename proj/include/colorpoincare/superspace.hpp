#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "colorpoincare/supergroup.hpp"

namespace colorpoincare {

// Point of the coset of the supergroup by its Lorentz subgroup, written in
// the coordinates induced by the ordered-product parametrization: four even
// translations X, one odd spinor quadruple Xi per cubic degree and one
// quadruple Omega per bicolor degree. Entries live in the group's parameter
// algebra so that group elements can act on them directly.
struct SuperPoint {
    std::array<Multivector, 4> x;
    std::array<std::array<Multivector, 4>, 8> xi;
    std::array<std::array<Multivector, 4>, 12> omega;

    explicit SuperPoint(const GrassmannAlgebra* alg) {
        for (auto& m : x) m = Multivector(alg);
        for (auto& q : xi)
            for (auto& m : q) m = Multivector(alg);
        for (auto& q : omega)
            for (auto& m : q) m = Multivector(alg);
    }
};

// First-order operator sum_k c_k d/d(gen k) with multivector coefficients
// multiplying from the left; d/d(gen) is the graded left derivative. The
// stored degree is the raw degree the operator carries as a map and fixes
// its side of the commutation factor in graded brackets.
class DiffOperator {
  public:
    DiffOperator(const GrassmannAlgebra* alg, Degree deg) : alg_(alg), deg_(deg) {}

    const GrassmannAlgebra* algebra() const { return alg_; }
    const Degree& degree() const { return deg_; }
    const std::map<int, Multivector>& terms() const { return terms_; }

    void add(int gen_id, const Multivector& coef);
    void add_scaled(const DiffOperator& o, const Scalar& s);
    Multivector coefficient(int gen_id) const;  // zero when absent
    Multivector apply(const Multivector& f) const;
    bool is_zero() const;
    bool operator==(const DiffOperator& o) const;
    bool operator!=(const DiffOperator& o) const { return !(*this == o); }

  private:
    const GrassmannAlgebra* alg_;
    Degree deg_;
    std::map<int, Multivector> terms_;
};

// a b - eps b a on generator coefficients. Both arguments are graded
// derivations, so the second-order parts cancel against eps and the bracket
// is first order again; eps must be the commutation factor of the two
// operator degrees.
DiffOperator graded_bracket(const DiffOperator& a, const DiffOperator& b, const Scalar& eps);

// The supergroup acting on its coset by the Lorentz subgroup. Owns a group
// (and through it the parameter algebra hosting the canonical coordinates),
// realizes every basis element of the superalgebra as a first-order
// differential operator in the coordinates, and checks that those operators
// close on the structure constants.
class Superspace {
  public:
    explicit Superspace(const Superalgebra& alg);
    Superspace(const Superspace&) = delete;
    Superspace& operator=(const Superspace&) = delete;

    const Superalgebra& algebra() const { return *alg_; }
    Supergroup& group() { return grp_; }
    const Supergroup& group() const { return grp_; }
    GrassmannAlgebra& coordinates() { return grp_.params(); }
    const FieldPtr& field() const { return f_; }

    // canonical coordinate generators, created once in the constructor
    int x_id(int mu) const { return xid_[static_cast<size_t>(mu - 1)]; }  // mu 1..4
    int xi_id(int deg_idx, int comp) const {
        return xiid_[static_cast<size_t>(deg_idx)][static_cast<size_t>(comp)];
    }
    int omega_id(int bicolor_idx, int comp) const {
        return omid_[static_cast<size_t>(bicolor_idx)][static_cast<size_t>(comp)];
    }
    Multivector coord_x(int mu) const;
    Multivector coord_xi(int deg_idx, int comp) const;
    Multivector coord_omega(int bicolor_idx, int comp) const;

    SuperPoint origin() const;
    // the point whose entries are the coordinate generators themselves
    SuperPoint canonical_point() const;
    bool points_equal(const SuperPoint& a, const SuperPoint& b) const;

    // p as the group element (1, x, xi, omega); act(g, p) is left
    // multiplication read back in coset coordinates, i.e. the non-Lorentz
    // slots of compose(g, embed(p)).
    GroupElement embed(const SuperPoint& p) const;
    SuperPoint act(const GroupElement& g, const SuperPoint& p) const;

    // replace every canonical coordinate generator of f by the matching
    // entry of p; generators that are not coordinates pass through
    Multivector substitute(const Multivector& f, const SuperPoint& p) const;

    // exact variation f(g_zeta . p) - f(p) of a superfield under the odd
    // transformation with quadruple zeta in the given parameter slot
    Multivector delta_odd(int deg_idx, const std::array<Multivector, 4>& zeta,
                          const Multivector& f) const;

    // flow of one odd parameter slot component, extracted from the action
    // on the canonical point; a self-adjoint square-zero zeta satisfies
    // delta_odd == zeta * slot_flow(...).apply exactly
    const DiffOperator& slot_flow(int deg_idx, int comp);

    // realization of superalgebra basis element i; graded brackets of these
    // reproduce the structure constants exactly. The Lorentz and bicolor
    // operators are the reverses of their coordinate flows, which absorbs
    // the sector signs of the ordered-product parametrization; the sign is
    // fitted, not assumed, by operator_bracket_report.
    const DiffOperator& operator_of(int basis_index);

    SuiteReport action_report(std::uint64_t seed, int samples, bool parallel = true);
    SuiteReport operator_bracket_report(bool parallel = true);

  private:
    int fresh_param(const Degree& d, const std::string& tag);
    void warm_caches();
    DiffOperator build_operator(int basis_index);

    const Superalgebra* alg_;
    Supergroup grp_;
    FieldPtr f_;
    std::array<int, 4> xid_{};
    std::array<std::array<int, 4>, 8> xiid_{};
    std::array<std::array<int, 4>, 12> omid_{};
    // slot k holds parameters of the degree opposite to the generators it
    // dresses; opposite slots pair by raw negation
    std::array<int, 8> qopp_{};
    std::array<int, 12> ropp_{};
    std::array<std::optional<DiffOperator>, 32> flows_;
    std::vector<std::optional<DiffOperator>> ops_;
    std::uint64_t param_counter_ = 0;
    bool warmed_ = false;
};

}  // namespace colorpoincare
