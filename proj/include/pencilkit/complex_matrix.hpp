#ifndef PENCILKIT_COMPLEX_MATRIX_HPP
#define PENCILKIT_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pencilkit/errors.hpp"

namespace pencilkit {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.  All operators of the library
/// (A0, A1, the Laurent coefficients, projections) are carried by this
/// one type.  Entries are checked finite on construction from data;
/// values are immutable by convention once built (operations return
/// new matrices).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    /// rows x cols zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// Construct from row-major entries; throws on NaN/Inf or size mismatch.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    /// Convenience for literals in tests and golden data.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool square() const { return rows_ == cols_; }
    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx scalar);

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate_transpose() const;

    double frobenius_norm() const;
    double max_abs() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx scalar);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// m^k by repeated multiplication; m must be square, k >= 0.
ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned k);

/// Entrywise |a-b| <= atol + rtol*|b|.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double atol = 1e-12, double rtol = 1e-9);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// LU decomposition with partial pivoting (max-modulus pivot, ties to
/// the lowest row).
class LuFactorization {
  public:
    explicit LuFactorization(ComplexMatrix a);

    /// True when the smallest pivot falls below n*eps*||A||_F.
    bool is_singular() const;
    double smallest_pivot() const { return smallest_pivot_; }

    cplx determinant() const;

    /// Solve A X = rhs; throws SingularMatrixError.
    ComplexMatrix solve(const ComplexMatrix& rhs) const;
    ComplexMatrix inverse() const;

    /// ||A||_F * ||A^-1||_F, a cheap condition estimate; +inf when singular.
    double condition_estimate() const;

  private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    double norm_ = 0.0;
    double smallest_pivot_ = 0.0;
};

ComplexMatrix inverse(const ComplexMatrix& a);

/// Largest singular value by power iteration on A^H A.  Deterministic
/// start vector; converges to machine accuracy for the desk-scale
/// matrices handled here.
double spectral_norm(const ComplexMatrix& a);

/// Gelfand radius lim_j ||M^j||^(1/j), evaluated by repeated squaring
/// with per-step normalization (j = 2^k up to k = 48).  The limit is
/// norm-independent; Frobenius is used internally.
double gelfand_radius(const ComplexMatrix& m);

}  // namespace pencilkit

#endif
