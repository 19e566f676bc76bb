#ifndef PENCILKIT_POLY_HPP
#define PENCILKIT_POLY_HPP

#include <functional>

#include "pencilkit/determining.hpp"

namespace pencilkit {

/// Polynomial pencil A(z) = sum_i A_i z^i, degree n >= 1, A_n != 0.
struct PolynomialPencil {
    std::vector<ComplexMatrix> coeffs;  // A_0 first

    PolynomialPencil() = default;
    explicit PolynomialPencil(std::vector<ComplexMatrix> coeffs_);

    std::size_t degree() const { return coeffs.size() - 1; }
    std::size_t base_dim() const { return coeffs.front().rows(); }
};

ComplexMatrix evaluate(const PolynomialPencil& pp, cplx z);

/// Taylor re-expansion about z0: coefficients of A(w + z0) in w.
PolynomialPencil taylor_shift(const PolynomialPencil& pp, cplx z0);

/// Companion-style augmented linear pencil whose resolvent blocks
/// carry the polynomial pencil's Laurent coefficients.
struct AugmentedPencil {
    LinearPencil inner;
    std::size_t degree = 0;
    std::size_t base_dim = 0;
};

/// Block Toeplitz augmentation: script-A0 lower triangular in
/// A_0..A_{n-1}, script-A1 upper triangular in A_n..A_1.
AugmentedPencil augment(const PolynomialPencil& pp);

/// Unpack an augmented-pencil Laurent series into the base series:
/// block (a, b) of script-R_j is R_{nj+a-b}.  Duplicate positions are
/// averaged; disagreement beyond 1e-8 raises BlockInconsistency.
/// max_duplicate_disagreement reports the observed spread.
LaurentSeries extract_block_series(const LaurentSeries& aug_series, std::size_t degree,
                                   std::size_t base_dim,
                                   double* max_duplicate_disagreement = nullptr);

/// Basic solution [R_-n, ..., R_{n-1}] of the polynomial pencil at
/// `center`, via the augmented linear path.
std::vector<ComplexMatrix> poly_basic_solution(const PolynomialPencil& pp, cplx center,
                                               double tol_base = 1e-10);

/// Per-j residual pairs of the polynomial fundamental equations
/// sum_k R_{j-n+k} A_{n-k} = delta_j0 I (left) and mirrored (right).
std::vector<std::pair<double, double>> poly_fundamental_residuals(const LaurentSeries& series,
                                                                  const PolynomialPencil& pp,
                                                                  long j_min, long j_max);

/// Coefficient source for an analytic pencil: finite data or a rule.
struct AnalyticCoefficients {
    std::function<ComplexMatrix(std::size_t)> coeff;
    std::optional<std::size_t> degree;  // set when the pencil is a polynomial

    static AnalyticCoefficients from_polynomial(PolynomialPencil pp);
};

struct TruncatedInverse {
    ComplexMatrix value;
    double contraction = 0.0;  // ||A_m(z)^-1 rho_m(z)||_F
};

/// Truncated-pencil inverse [I + A_m(z)^-1 rho_m(z)]^-1 A_m(z)^-1 with
/// the bracket evaluated as a Neumann series.  rho_m is estimated from
/// the 16 coefficients after the truncation.  Throws
/// TruncationNotContractive when the contraction factor reaches 1.
TruncatedInverse analytic_truncated_inverse(const AnalyticCoefficients& source, cplx z,
                                            std::size_t m, std::size_t neumann_terms);

}  // namespace pencilkit

#endif
