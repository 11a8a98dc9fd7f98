#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colorpoincare/grassmann.hpp"
#include "colorpoincare/report.hpp"
#include "colorpoincare/smallmat.hpp"
#include "colorpoincare/superalgebra.hpp"

namespace colorpoincare {

// 24x24 block layout of the 100x100 matrix representation. Blocks 0..3 are
// 5-dimensional, the rest 4-dimensional. Every allowed off-diagonal position
// carries a degree; the whole assignment is the coboundary of a potential
// phi on block indices, position_degree(i,j) = phi(i) - phi(j) on the raw
// integer lattice.
class BlockLayout {
  public:
    static constexpr int kBlocks = 24;

    BlockLayout();

    int block_size(int b) const { return sizes_[static_cast<size_t>(b)]; }
    int offset(int b) const { return offsets_[static_cast<size_t>(b)]; }
    int total() const { return total_; }
    const Degree& potential(int b) const { return phi_[static_cast<size_t>(b)]; }
    Degree position_degree(int i, int j) const;

    // Degree transcribed from the block tables; nullopt when the position is
    // never populated by a generator matrix. Diagonal positions carry 0.
    std::optional<Degree> declared_degree(int i, int j) const;
    const std::map<std::pair<int, int>, Degree>& declared() const { return declared_; }

    // Whether a matrix may store a block here at all: the 4x4 corner and its
    // borders anywhere, the tail only on the diagonal.
    bool position_allowed(int i, int j) const { return i < 4 || j < 4 || i == j; }

  private:
    std::array<int, kBlocks> sizes_{};
    std::array<int, kBlocks> offsets_{};
    std::array<Degree, kBlocks> phi_{};
    std::map<std::pair<int, int>, Degree> declared_;
    int total_ = 0;
};

// Dense block of Grassmann multivectors.
class MatMV {
  public:
    MatMV(const GrassmannAlgebra* alg, int rows, int cols)
        : alg_(alg), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows * cols), Multivector(alg)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const GrassmannAlgebra* algebra() const { return alg_; }
    Multivector& at(int r, int c) { return e_[static_cast<size_t>(r * cols_ + c)]; }
    const Multivector& at(int r, int c) const { return e_[static_cast<size_t>(r * cols_ + c)]; }

    bool is_zero() const;
    MatMV& operator+=(const MatMV& o);
    MatMV operator*(const MatMV& o) const;
    MatMV scaled(const Scalar& s) const;
    // Left multiplication entry by entry; the order matters for odd factors.
    MatMV left_mul(const Multivector& m) const;
    bool operator==(const MatMV& o) const;
    bool operator!=(const MatMV& o) const { return !(*this == o); }

  private:
    const GrassmannAlgebra* alg_;
    int rows_, cols_;
    std::vector<Multivector> e_;
};

// Sparse-by-blocks 100x100 matrix with multivector entries. A matrix is
// homogeneous of degree d when every entry is homogeneous and
// entry_degree + position_degree = d (reduced mod n); products of
// homogeneous matrices add degrees automatically.
class SuperMatrix {
  public:
    SuperMatrix(const GrassmannAlgebra* alg, const BlockLayout* layout)
        : alg_(alg), layout_(layout) {}

    static SuperMatrix identity(const GrassmannAlgebra* alg, const BlockLayout* layout);

    const GrassmannAlgebra* algebra() const { return alg_; }
    const BlockLayout* layout() const { return layout_; }

    MatMV& block(int i, int j);                 // creates a zero block on demand
    const MatMV* find_block(int i, int j) const;  // nullptr when absent or zero
    const std::map<std::pair<int, int>, MatMV>& blocks() const { return blocks_; }

    bool is_zero() const;
    void prune();  // drop blocks that became zero

    SuperMatrix& operator+=(const SuperMatrix& o);
    SuperMatrix& operator-=(const SuperMatrix& o);
    friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
    friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
    SuperMatrix operator*(const SuperMatrix& o) const;
    SuperMatrix scaled(const Scalar& s) const;
    SuperMatrix left_mul(const Multivector& m) const;
    bool operator==(const SuperMatrix& o) const;
    bool operator!=(const SuperMatrix& o) const { return !(*this == o); }

    // Reduced degree when the matrix is homogeneous; nullopt otherwise.
    // The zero matrix reports degree 0.
    std::optional<Degree> homogeneous_degree() const;

    // Text grid of occupied blocks, one row per block line.
    std::string block_pattern() const;

  private:
    const GrassmannAlgebra* alg_;
    const BlockLayout* layout_;
    std::map<std::pair<int, int>, MatMV> blocks_;
};

// Numeric coordinates of an algebra element in the basis (omega: boosts and
// rotations, t: translations, psi: odd, u: bicolor), combined as
//   (i/hbar)(sum omega Gamma(M) + sum t Gamma(P) + sum u Gamma(R))
//     + hbar^{-1/2} e^{-i pi/4} sum psi Gamma(Q).
struct ElementCoordinates {
    std::map<std::pair<int, int>, Scalar> omega;  // key (alpha, beta), alpha < beta
    std::map<int, Scalar> t;                      // key mu 1..4
    std::map<std::pair<int, int>, Scalar> psi;    // key (deg_idx 0..7, comp 0..3)
    std::map<std::pair<int, int>, Scalar> u;      // key (deg_idx 0..11, comp 0..3)
};

// The 100x100 representation of the four-component algebra. The published
// block data alone does not close the bracket relations; gamma_of applies the
// unique uniform real correction (established in the tests and re-verified by
// homomorphism_report):
//   - odd generators scale by u_d sqrt(kappa_d/2) with u = -1 on the white
//     and antiwhite sectors and +1 on the six colored ones,
//   - every bicolor matrix carries a global sign -1,
//   - the spin blocks are +(hbar/2i) transpose(gamma_alpha gamma_beta).
class Representation {
  public:
    // alg must be four-component. Matrices live over *host; passing the
    // algebra that also hosts group parameters lets group code mix them.
    explicit Representation(const Superalgebra& alg, const GrassmannAlgebra* host = nullptr);
    // host_ may point into the object itself, so it cannot be moved or copied.
    Representation(const Representation&) = delete;
    Representation& operator=(const Representation&) = delete;

    const BlockLayout& layout() const { return layout_; }
    const Superalgebra& algebra() const { return *alg_; }
    const GrassmannAlgebra* host() const { return host_; }

    SuperMatrix zero() const { return SuperMatrix(host_, &layout_); }
    SuperMatrix identity() const { return SuperMatrix::identity(host_, &layout_); }

    const SuperMatrix& gamma_of(int basis_index) const;
    SuperMatrix gamma_of_comb(const LinComb& c) const;
    SuperMatrix element_matrix(const ElementCoordinates& coords) const;

    // Small building blocks, exposed for direct inspection.
    MatS vector_block(int alpha, int beta) const;  // 4x4 generator on vectors
    MatS translation_block(int mu) const;          // 5x5 upper-corner pattern
    MatS spin_block(int alpha, int beta) const;    // 4x4
    MatS odd_block_b(int a) const;                 // 5x4
    MatS odd_block_c(int a) const;                 // 4x5

    // Declared table vs potential, path consistency of the table graph, and
    // per-generator block structure + homogeneity.
    SuiteReport degree_consistency_report() const;
    // Gamma([x,y]) == Gamma(x)Gamma(y) - eps(x,y) Gamma(y)Gamma(x) over all
    // ordered basis pairs.
    SuiteReport homomorphism_report(bool parallel = true) const;
    // The corner blocks carry the vector representation faithfully (rank 10
    // over the even span) and the spin blocks close on themselves.
    SuiteReport poincare_block_report() const;

  private:
    SuperMatrix build_gamma(int basis_index) const;
    std::map<std::pair<int, int>, MatS> numeric_gamma(int basis_index) const;

    const Superalgebra* alg_;
    GrassmannAlgebra own_host_;
    const GrassmannAlgebra* host_;
    BlockLayout layout_;
    FieldPtr f_;
    mutable std::vector<std::optional<SuperMatrix>> cache_;
};

// Block coordinates of the odd generator matrices, by degree index in
// Superalgebra::q_degrees() order; four B positions then four C positions.
struct OddBlockPlacement {
    std::array<std::pair<int, int>, 4> b;
    std::array<std::pair<int, int>, 4> c;
};
const std::array<OddBlockPlacement, 8>& odd_block_placements();
// Block coordinate of each bicolor generator matrix, by degree index in
// Superalgebra::r_degrees() order.
const std::array<std::pair<int, int>, 12>& bicolor_block_positions();

}  // namespace colorpoincare
