#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colorpoincare/clifford.hpp"
#include "colorpoincare/grading.hpp"
#include "colorpoincare/report.hpp"
#include "colorpoincare/scalar.hpp"

namespace colorpoincare {

struct Units {
    Rational hbar{1};
    Rational lambda{1};
};

// kappa_d normalizes the (d, -d) sectors; kappa_{-d} = kappa_d. Defaults to
// 2 for every family, for which all square roots appearing in the tables
// are rational.
struct KappaConfig {
    Rational white{2}, r{2}, g{2}, b{2};
    Rational of(const Degree& d) const;
};

enum class BasisKind { M, P, Q, R };

struct BasisElement {
    BasisKind kind;
    int alpha = 0, beta = 0;  // M: alpha < beta in 1..4
    int mu = 0;               // P: 1..4
    int deg_idx = -1;         // Q: 0..7, R: 0..11
    int comp = 0;             // Q: 0..spinor_dim-1, R: 0..3
    Degree deg{0, 0, 0};
    std::string name;
};

using LinComb = std::vector<std::pair<int, Scalar>>;

// The minimal graded Poincare superalgebra over the chosen grading group:
// Lorentz generators M, translations P, odd charges Q in the eight cubic
// degrees, and the bicolor translations R. Structure constants are exact
// scalars; the reports verify grading, epsilon-antisymmetry and the graded
// Jacobi identity over every ordered tuple of basis elements.
class Superalgebra {
  public:
    Superalgebra(const GradingConfig& cfg, CliffordData cliff, KappaConfig kappa = {},
                 Units units = {});
    static Superalgebra make(const GradingConfig& cfg, int spinor_dim, KappaConfig kappa = {},
                             Units units = {});

    int dim() const { return static_cast<int>(basis_.size()); }
    int spinor_dim() const { return cliff_.spinor_dim; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& at(int i) const { return basis_[static_cast<size_t>(i)]; }
    int index_of(const std::string& name) const;  // -1 when absent

    static const std::array<Degree, 8>& q_degrees();
    static const std::array<Degree, 12>& r_degrees();
    static std::string q_degree_name(int k);
    static std::string r_degree_name(int k);

    int m_index(int alpha, int beta) const;  // 1-based, alpha < beta
    int p_index(int mu) const;               // 1-based
    int q_index(int deg_idx, int comp) const;
    int r_index(int deg_idx, int comp) const;

    const LinComb& bracket(int i, int j) const {
        return table_[static_cast<size_t>(i) * basis_.size() + static_cast<size_t>(j)];
    }
    // epsilon(deg_i, deg_j) evaluated on the declared integer degree vectors.
    const Scalar& epsilon_basis(int i, int j) const;

    const GradingConfig& config() const { return cfg_; }
    const CliffordData& clifford() const { return cliff_; }
    const KappaConfig& kappa() const { return kappa_; }
    const Units& units() const { return units_; }
    const FieldPtr& field() const { return f_; }

    SuiteReport grading_report() const;
    SuiteReport antisymmetry_report() const;
    SuiteReport jacobi_report(bool parallel = true) const;
    // Failure count of the Jacobi identity restricted to triples from the
    // given index subset; used by convention_search as a cheap probe.
    long long jacobi_failures_on(const std::vector<int>& subset) const;
    bool jacobi_holds(int i, int j, int k) const;

    // Deliberately corrupts the tables so negative tests can confirm the
    // verifier notices. kind: epsilon-sign | jacobi-drop | grading-shift.
    void inject_fault(const std::string& kind);

  private:
    void build_basis();
    void build_table();
    void fill_mm();
    void fill_m_other();
    void fill_qq();
    void complete_by_antisymmetry();
    LinComb& slot(int i, int j) {
        return table_[static_cast<size_t>(i) * basis_.size() + static_cast<size_t>(j)];
    }
    void add_term(int i, int j, int target, const Scalar& c);
    // Accumulates weight * [x, inner] into res (res indexed by basis index).
    void accumulate_nested(std::vector<std::pair<int, Scalar>>& res, int x, const LinComb& inner,
                           const Scalar& weight) const;
    std::string triple_name(int i, int j, int k) const;

    GradingConfig cfg_;
    FieldPtr f_;
    CliffordData cliff_;
    KappaConfig kappa_;
    Units units_;
    std::vector<BasisElement> basis_;
    std::vector<LinComb> table_;
    std::vector<int> deg_of_;              // basis index -> degree table index
    std::vector<Scalar> eps_deg_;          // degree-pair epsilon cache
    int n_deg_ = 0;
};

struct ConventionCandidate {
    CliffordData cliff;
    std::string id;
    long long probe_failures = -1;
    long long full_failures = -1;  // -1: full verification not run
};

// Scans the documented convention space, ranking candidates by probe
// failure count with enumeration order as the tie break. Runs the full
// Jacobi verification on the best candidate (and on every candidate tied
// with it) when full_verify is set.
std::vector<ConventionCandidate> convention_search(const GradingConfig& cfg, int spinor_dim,
                                                   const KappaConfig& kappa = {}, Units units = {},
                                                   bool full_verify = false, bool parallel = true);

}  // namespace colorpoincare
