#include "pencilkit/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pencilkit {

namespace {

void check_finite(const std::vector<cplx>& entries) {
    for (const cplx& v : entries) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error("ComplexMatrix: non-finite entry");
        }
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw Error("ComplexMatrix: entry count does not match shape");
    }
    check_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows.begin() == rows.end() ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw Error("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    check_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (!same_shape(rhs)) throw Error("matrix add: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (!same_shape(rhs)) throw Error("matrix sub: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (cplx& v : data_) v *= scalar;
    return *this;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cplx scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, cplx scalar) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw Error("matrix mul: shape mismatch");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const cplx a = lhs(i, k);
            if (a == cplx{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned k) {
    if (!m.square()) throw Error("matrix_power: matrix not square");
    ComplexMatrix out = ComplexMatrix::identity(m.rows());
    for (unsigned i = 0; i < k; ++i) out = out * m;
    return out;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double atol, double rtol) {
    if (!a.same_shape(b)) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j) - b(i, j)) > atol + rtol * std::abs(b(i, j))) return false;
    return true;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw Error("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double d = std::abs(a(i, j) - b(i, j));
            if (!(d <= m)) m = d;  // propagates NaN instead of dropping it
        }
    return m;
}

LuFactorization::LuFactorization(ComplexMatrix a) : lu_(std::move(a)) {
    if (!lu_.square()) throw Error("LU: matrix not square");
    const std::size_t n = lu_.rows();
    norm_ = lu_.frobenius_norm();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    smallest_pivot_ = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu_(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(lu_(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(col, j), lu_(piv, j));
            std::swap(perm_[col], perm_[piv]);
            sign_ = -sign_;
        }
        smallest_pivot_ = std::min(smallest_pivot_, best);
        if (best == 0.0) continue;  // exactly singular; leave the zero column
        const cplx d = lu_(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = lu_(r, col) / d;
            lu_(r, col) = f;
            if (f == cplx{}) continue;
            for (std::size_t j = col + 1; j < n; ++j) lu_(r, j) -= f * lu_(col, j);
        }
    }
    if (n == 0) smallest_pivot_ = 0.0;
}

bool LuFactorization::is_singular() const {
    const double n = static_cast<double>(lu_.rows());
    const double eps = std::numeric_limits<double>::epsilon();
    return smallest_pivot_ <= n * eps * std::max(norm_, 1e-300);
}

cplx LuFactorization::determinant() const {
    cplx d = static_cast<double>(sign_);
    for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& rhs) const {
    if (is_singular()) throw SingularMatrixError("LU solve: matrix numerically singular");
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n) throw Error("LU solve: rhs shape mismatch");
    ComplexMatrix x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(perm_[i], j);
    // forward substitution (unit lower triangle)
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) {
            const cplx f = lu_(i, k);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) {
            const cplx f = lu_(ii, k);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) x(ii, j) -= f * x(k, j);
        }
        const cplx d = lu_(ii, ii);
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(ii, j) /= d;
    }
    return x;
}

ComplexMatrix LuFactorization::inverse() const {
    return solve(ComplexMatrix::identity(lu_.rows()));
}

double LuFactorization::condition_estimate() const {
    if (is_singular()) return std::numeric_limits<double>::infinity();
    return norm_ * inverse().frobenius_norm();
}

ComplexMatrix inverse(const ComplexMatrix& a) { return LuFactorization(a).inverse(); }

double spectral_norm(const ComplexMatrix& a) {
    if (a.empty()) return 0.0;
    const std::size_t n = a.cols();
    const ComplexMatrix gram = a.conjugate_transpose() * a;
    // deterministic start with incommensurate components
    std::vector<cplx> v(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.37 * std::sin(1.0 + 2.17 * static_cast<double>(i));
        s += std::norm(v[i]);
    }
    for (cplx& x : v) x /= std::sqrt(s);
    double lambda = 0.0;
    for (int it = 0; it < 2000; ++it) {
        std::vector<cplx> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += gram(i, j) * v[j];
            w[i] = acc;
        }
        double wn = 0.0;
        for (const cplx& x : w) wn += std::norm(x);
        wn = std::sqrt(wn);
        if (wn == 0.0) return 0.0;
        const double prev = lambda;
        lambda = wn;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
        if (it > 2 && std::abs(lambda - prev) <= 1e-15 * lambda) break;
    }
    return std::sqrt(lambda);
}

double gelfand_radius(const ComplexMatrix& m) {
    if (!m.square()) throw Error("gelfand_radius: matrix not square");
    if (m.empty()) return 0.0;
    ComplexMatrix b = m;
    double log_acc = 0.0;  // log rho estimate accumulated as sum log f_k / 2^k
    double scale = 1.0;    // 1 / 2^k
    for (int k = 0; k < 48; ++k) {
        const double f = b.frobenius_norm();
        if (f == 0.0) return 0.0;  // nilpotent
        log_acc += scale * std::log(f);
        if (f < 1e-280) return std::exp(log_acc);  // stop before 1/f overflows
        b *= cplx(1.0 / f);
        b = b * b;
        scale *= 0.5;
    }
    log_acc += scale * std::log(std::max(b.frobenius_norm(), 1e-300));
    return std::exp(log_acc);
}

}  // namespace pencilkit
