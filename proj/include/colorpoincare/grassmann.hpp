#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "colorpoincare/grading.hpp"

namespace colorpoincare {

// The eight canonical generator families of the colour Grassmann algebra,
// plus caller-declared parameter generators.
enum class Family : int {
    ThR = 0,   // degree ( 1, 0, 0)
    ThG = 1,   // degree ( 0, 1, 0)
    ThB = 2,   // degree ( 0, 0, 1)
    ThbR = 3,  // degree (-1, 0, 0)
    ThbG = 4,  // degree ( 0,-1, 0)
    ThbB = 5,  // degree ( 0, 0,-1)
    Eta = 6,   // degree ( 1, 1, 1)
    Etab = 7,  // degree (-1,-1,-1)
    Param = 8,
};

struct Generator {
    Family family = Family::Param;
    int index = 0;       // canonical families: the bracketed index; params: declaration sequence
    Degree degree;       // declared integer vector, deliberately NOT reduced mod n
    Scalar adj_phase;    // x^# = adj_phase * x for a single generator
    std::string name;    // e.g. "th_r[1]" or a parameter name
    std::uint64_t order_key = 0;
};

class Multivector;

// Generator registry + the normal-ordering engine.  Words are kept sorted by
// order_key: canonical families first (in the enum order above, then by
// index), parameters last in declaration order.
class GrassmannAlgebra {
  public:
    explicit GrassmannAlgebra(GradingConfig cfg) : cfg_(std::move(cfg)) {}

    const GradingConfig& config() const { return cfg_; }
    const FieldPtr& field() const { return cfg_.field(); }

    // Canonical family generator with a given index; created on first use.
    int canonical(Family fam, int index);
    // Parameter generator.  The adjoint phase defaults to the phase of the
    // canonical family with the same degree vector (i*q for the six colour
    // degrees, -i for white and antiwhite, 1 for degree zero); for any other
    // degree a phase must be given.  Phases must be unit modulus so that the
    // adjoint stays an involution.
    int parameter(const std::string& name, const Degree& deg);
    int parameter(const std::string& name, const Degree& deg, const Scalar& adj_phase);

    int find_canonical(Family fam, int index) const;        // -1 if absent
    int find_parameter(const std::string& name) const;      // -1 if absent
    const Generator& gen(int id) const { return gens_[static_cast<size_t>(id)]; }
    int size() const { return static_cast<int>(gens_.size()); }

    // epsilon(d,d) = +1, i.e. the generator commutes with itself and powers
    // are allowed; epsilon(d,d) = -1 generators square to zero.
    bool self_commuting(int id) const {
        auto [p, e] = GradingConfig::epsilon_parts(gen(id).degree, gen(id).degree);
        (void)e;
        return p % 2 == 0;
    }

    static Degree family_degree(Family f);
    static const char* family_prefix(Family f);

    struct NormalForm {
        bool zero = false;
        std::vector<int> ids;  // canonically sorted
        long parity = 0;       // accumulated sign exponent
        long qexp = 0;         // accumulated q exponent
    };
    // Sort an arbitrary product of generators into canonical order,
    // accumulating the commutation factor one adjacent swap at a time.
    NormalForm normal_order(std::vector<int> seq) const;

    Degree word_degree(const std::vector<int>& ids) const;  // reduced group degree

  private:
    Scalar default_phase(const Degree& deg) const;
    GradingConfig cfg_;
    std::vector<Generator> gens_;
    std::map<std::pair<int, int>, int> canon_;
    std::map<std::string, int> params_;
    int param_seq_ = 0;
};

// An element of the colour Grassmann algebra: a finite scalar combination of
// normally ordered words.
class Multivector {
  public:
    Multivector() = default;
    explicit Multivector(const GrassmannAlgebra* alg) : alg_(alg) {}

    static Multivector zero(const GrassmannAlgebra& alg) { return Multivector(&alg); }
    static Multivector scalar(const GrassmannAlgebra& alg, const Scalar& s);
    static Multivector one(const GrassmannAlgebra& alg) {
        return scalar(alg, Scalar::one(alg.field()));
    }
    static Multivector generator(const GrassmannAlgebra& alg, int id);
    static Multivector word(const GrassmannAlgebra& alg, const std::vector<int>& ids,
                            const Scalar& coeff);

    const GrassmannAlgebra* algebra() const { return alg_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    std::optional<Scalar> as_scalar() const;
    Scalar coefficient(const std::vector<int>& ids) const;

    Multivector operator-() const;
    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(const Multivector& a, const Multivector& b);
    friend Multivector operator*(const Scalar& s, Multivector a);
    bool operator==(const Multivector& o) const;
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    // Antilinear antiautomorphism #: conjugate coefficients, reverse words,
    // apply the per-generator phases.
    Multivector adjoint() const;

    // Left derivative with respect to one generator.
    Multivector derivative(int gen_id) const;

    // Reduced grading degree when every word has the same one (the zero
    // element reports degree zero); nullopt for inhomogeneous elements.
    std::optional<Degree> homogeneous_degree() const;

    // Keep only terms whose word satisfies the predicate.
    Multivector filter(const std::function<bool(const std::vector<int>&)>& keep) const;

    // Iteration support for reports and operators.
    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

    std::string str() const;

    // Adds coeff * (the normal form of seq); the workhorse for products.
    void accumulate(const std::vector<int>& seq, const Scalar& coeff);

  private:
    void prune();
    const GrassmannAlgebra* alg_ = nullptr;
    // Keyed by canonically sorted id words.  Ids are registry indices; their
    // order_keys increase along each word.  Comparison is length, then the
    // order_key sequence.
    std::map<std::vector<int>, Scalar> terms_;
};

}  // namespace colorpoincare
