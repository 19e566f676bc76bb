#ifndef PENCILKIT_MARKOV_HPP
#define PENCILKIT_MARKOV_HPP

#include "pencilkit/determining.hpp"

namespace pencilkit {

/// Row-stochastic transition matrix.  Entries must be real and
/// nonnegative (within 1e-12) and rows must sum to 1 within 1e-10.
struct StochasticMatrix {
    ComplexMatrix p;

    StochasticMatrix() = default;
    explicit StochasticMatrix(ComplexMatrix p_);

    std::size_t states() const { return p.rows(); }
};

/// Pencil A0 + A1 eps whose inverse is the chain's fundamental
/// operator [I - T_eps + T_eps^inf]^-1.
struct PerturbedChainPencil {
    LinearPencil pencil;
    StochasticMatrix source;
    double limit_residual = 0.0;  // ||P T^inf - T^inf||_F
};

/// Staircase chain on r+1 states: row k (1-based) has entries 1/k in
/// columns 1..k.  State 1 is absorbing.
StochasticMatrix staircase_chain(std::size_t r);

/// A0 = first row all ones, other rows zero; A1 = (I - P)^T.  Requires
/// the chain to absorb at state 1 (every column of T^inf except the
/// first vanishes); throws NotAbsorbingAtFirstState otherwise.
PerturbedChainPencil perturbed_pencil(const StochasticMatrix& chain);

/// R_-1 / eps + R_0 from the pencil's basic solution at 0,
/// cross-checked against direct inversion of A0 + eps A1.
ComplexMatrix fundamental_inverse(const StochasticMatrix& chain, double epsilon);

/// The staircase pencil's (R_-1, R_0) built directly: first row of
/// R_-1 is [0, -(s_1+1), ..., -(s_r+1)] with harmonic sums s_n, row i
/// (2 <= i <= r+1) has 1 + 1/(i-1) on the diagonal and 1/(i-1) to its
/// right; R_0 has first row all ones, other rows zero.
std::pair<ComplexMatrix, ComplexMatrix> closed_form_staircase(std::size_t r);

}  // namespace pencilkit

#endif
