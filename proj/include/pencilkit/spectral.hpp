#ifndef PENCILKIT_SPECTRAL_HPP
#define PENCILKIT_SPECTRAL_HPP

#include <array>

#include "pencilkit/determining.hpp"

namespace pencilkit {

/// Complementary projections P = R_-1 A1 (domain side) and
/// Q = A1 R_-1 (range side).
struct ProjectionPair {
    ComplexMatrix p;
    ComplexMatrix q;
};

/// Builds (R_-1 A1, A1 R_-1) and checks idempotence plus the
/// complementarity identities I - P = R_0 A0 and I - Q = A0 R_0.
ProjectionPair projections(const BasicSolution& basic, const LinearPencil& pencil,
                           double tol_base = 1e-10);

/// Off-diagonal block norms { ||Q A0 (I-P)||, ||(I-Q) A0 P||,
/// ||Q A1 (I-P)||, ||(I-Q) A1 P|| } for the separation identity
/// A_i = Q A_i P + (I-Q) A_i (I-P).  The pencil is taken as already
/// local to the projections' expansion point.
std::array<double, 4> block_decomposition_residual(const LinearPencil& pencil,
                                                   const ProjectionPair& pair);

/// All finite singular points of a regular pencil: roots of
/// det(A0 + A1 z), found by sampling at Chebyshev-scaled points,
/// interpolation, and companion-matrix rootfinding.  Roots closer than
/// 1e-7 are merged; output sorted by modulus then argument.
std::vector<cplx> find_singularities(const LinearPencil& pencil);

/// One isolated singularity with its local data.  principal[j-1] is
/// the coefficient R_{k,-j}; residue() is R_{k,-1}.
struct SingularPoint {
    cplx z;
    int order = 0;
    std::vector<ComplexMatrix> principal;
    ComplexMatrix p;
    ComplexMatrix q;
    BasicSolution basic;

    const ComplexMatrix& residue() const { return principal.front(); }
};

struct SingularitySet {
    std::vector<SingularPoint> points;
    ComplexMatrix p_inf;
    ComplexMatrix q_inf;
    std::vector<ComplexMatrix> entire_part;  // polynomial coefficients; empty when zero
    double max_annihilation_residual = 0.0;  // max ||P_k P_l||, ||Q_k Q_l|| over k != l
};

/// Global partial-fraction decomposition: local solve at every finite
/// singularity, mutual-annihilation check, remainder projections
/// P_inf = I - sum P_k, and the entire part fitted on a circle
/// enclosing all singularities.
SingularitySet global_decomposition(const LinearPencil& pencil, double tol_base = 1e-10);

/// Laurent window on the annulus s < |z| < r about the origin,
/// obtained by re-expanding each singularity's principal part
/// geometrically (outer expansion for |z_k| <= s, inner for
/// |z_k| >= r) and adding the entire part.
LaurentSeries expand_in_annulus(const SingularitySet& ss, double s, double r, std::size_t k_neg,
                                std::size_t k_pos);

struct JordanChain {
    std::vector<ComplexMatrix> vectors;  // x_0, ..., x_{len-1} as column vectors
    ComplexMatrix seed;

    std::size_t length() const { return vectors.size(); }
};

/// Chain x_j = (-1)^(q-j-1) (R_-1 A0)^(q-j-1) R_-1 phi where q <= order
/// is the largest power with nonvanishing head for this seed.  Throws
/// DegenerateSeed when R_-1 phi vanishes.
JordanChain jordan_chain(const PoleSolution& ps, const LinearPencil& pencil,
                         const ComplexMatrix& phi);

/// Canonical-basis seed search, first seed reaching the full order wins.
JordanChain jordan_chain_search(const PoleSolution& ps, const LinearPencil& pencil);

/// dim x dim truncation of the weighted shift w_{i,i+1} = delta^(2^(i-1)),
/// whose full operator has ||W^n|| = delta^(2^n - 1).
ComplexMatrix weighted_shift(double delta, std::size_t dim);

}  // namespace pencilkit

#endif
