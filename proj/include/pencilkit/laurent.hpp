#ifndef PENCILKIT_LAURENT_HPP
#define PENCILKIT_LAURENT_HPP

#include "pencilkit/determining.hpp"

namespace pencilkit {

/// Pointwise resolvent value with its verification residual
/// ||A(z) value - I||_F and a condition estimate of the inner inverses.
struct ResolventSample {
    cplx z;
    ComplexMatrix value;
    double residual = 0.0;
    double condition = 0.0;
};

/// Full Laurent window from the basic solution via the recurrences
/// R_-j = (-1)^(j-1) (R_-1 A0)^(j-1) R_-1 and R_j = (-1)^j (R_0 A1)^j R_0.
LaurentSeries coefficients_from_basic(const BasicSolution& basic, std::size_t k_neg,
                                      std::size_t k_pos);

/// Closed form (I w + R_-1 A0)^-1 R_-1 + (I + R_0 A1 w)^-1 R_0 at the
/// local coordinate w = z - center.  Throws InnerSingular when either
/// inner matrix is numerically singular.
ResolventSample evaluate_closed_form(const BasicSolution& basic, cplx z);

/// Partial sum of the stored window at z.
ComplexMatrix evaluate_partial_sum(const LaurentSeries& series, cplx z);

/// Residuals of the two classical resolvent equations for
/// Rl = l^-1 R(-1/l) A0 and Sl = l^-1 A0 R(-1/l), at lambda, mu in the
/// reciprocal annulus.  Throws OutOfDomain when -1/lambda or -1/mu
/// leaves the annulus.
std::pair<double, double> resolvent_equation_residual(const BasicSolution& basic, cplx lambda,
                                                      cplx mu);

/// Trapezoidal contour integral (1/2 pi i) \oint R(zeta) (zeta-center)^(-j-1) dzeta
/// over |zeta - center| = rho, with direct LU inversion at each node and
/// pairwise summation.  nodes == 0 starts at 128 and doubles until two
/// successive estimates differ by < 1e-11 or 4096 nodes are reached.
ComplexMatrix contour_coefficient_oracle(const LinearPencil& pencil, cplx center, double rho,
                                         long j, std::size_t nodes = 0);

}  // namespace pencilkit

#endif
