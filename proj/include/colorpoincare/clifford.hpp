#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "colorpoincare/smallmat.hpp"

namespace colorpoincare {

// Matrix conventions entering the bracket tables: metric signature, the
// gamma (or sigma) set, charge conjugation, the pairing matrices of the odd
// sectors and the spin action used in [M, Q]. A convention is valid when the
// bracket tables built from it satisfy grading, antisymmetry and the graded
// Jacobi identity; convention_search scans the documented space for those.
struct CliffordData {
    int spinor_dim = 4;                // 4: Dirac spinors, 2: two-component
    std::array<int, 4> metric{{1, 1, 1, -1}};
    std::vector<MatS> gamma;           // lower index; gamma_mu^2 = eta_mumu
    MatS C;                            // charge conjugation (4-comp only)
    MatS Cinv;
    // Coefficient matrix of P_mu in [Q_d, Q_-d] (kappa and overall sign
    // excluded) and of R_a in the bicolor sectors.
    std::vector<MatS> pairP;
    std::vector<MatS> pairR;
    // Spin action [M_ab, Q_i] = (hbar/2i) sum_j W_{ij} Q_j, indexed by the
    // pair (a<b) in the order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
    std::vector<MatS> spinW;
    // Two-component only: anti-handed spinors transform with conj(W).
    bool conj_spin_for_anti = false;
    int sP = -1;                       // sign of kappa in the (d,-d) sector
    std::map<std::string, std::string> record;

    static int pair_index(int alpha, int beta);  // alpha < beta, 1-based
    const MatS& spin_w(int alpha, int beta) const { return spinW[pair_index(alpha, beta)]; }
    int eta(int mu) const { return metric[mu - 1]; }  // 1-based
};

// Frozen default conventions; these match the convention_search winners
// (up to the documented phase freedom in C, where the default picks the
// real antisymmetric representative).
CliffordData default_clifford(const FieldPtr& f, int spinor_dim);

struct CliffordCandidate {
    CliffordData data;
    std::string id;
};

// All structurally admissible points of the documented convention space, in
// deterministic enumeration order. For spinor_dim 4 admissibility means
// C gamma_mu^T C^-1 = -gamma_mu and gamma^mu C symmetric.
std::vector<CliffordCandidate> enumerate_clifford_candidates(const FieldPtr& f, int spinor_dim);

}  // namespace colorpoincare
