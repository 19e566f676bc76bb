#ifndef PENCILKIT_PENCIL_HPP
#define PENCILKIT_PENCIL_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pencilkit/complex_matrix.hpp"

namespace pencilkit {

/// Open annulus s < |w| < r around a local expansion point.
struct Annulus {
    double inner = 0.0;
    double outer = std::numeric_limits<double>::infinity();

    bool contains(double radius, double margin = 1e-12) const {
        return radius > inner + margin && radius < outer - margin;
    }
    bool valid() const { return inner >= 0.0 && outer > inner; }
};

/// Linear pencil A(z) = A0 + A1 z.  Rectangular shapes are allowed at
/// construction; every inversion-style operation requires square.
struct LinearPencil {
    ComplexMatrix a0;
    ComplexMatrix a1;

    LinearPencil() = default;
    LinearPencil(ComplexMatrix a0_, ComplexMatrix a1_);

    std::size_t dim() const { return a0.rows(); }
    bool square() const { return a0.square(); }
};

ComplexMatrix evaluate(const LinearPencil& pencil, cplx z);

/// Pencil re-centred at z0: (A0 + A1 z0, A1), so that the local
/// variable is w = z - z0.
LinearPencil shifted(const LinearPencil& pencil, cplx z0);

/// Default residual tolerance, scaled by the pencil magnitude.
double residual_tolerance(const LinearPencil& pencil, double base = 1e-10);

/// Windowed Laurent coefficients of the resolvent about `center`:
/// neg[j-1] = R_{-j}, nonneg[j] = R_j, on the given annulus.
/// Negative coefficients below the stored window are taken to be zero
/// (finite principal part); positive coefficients above the window are
/// unavailable.
struct LaurentSeries {
    cplx center = 0.0;
    std::vector<ComplexMatrix> neg;
    std::vector<ComplexMatrix> nonneg;
    Annulus annulus;

    bool has(long j) const { return j >= 0 ? static_cast<std::size_t>(j) < nonneg.size() : true; }

    /// R_j; zero below the stored negative window, throws above the
    /// stored nonnegative window.
    ComplexMatrix coeff(long j) const;

    std::size_t matrix_rows() const;
    std::size_t matrix_cols() const;
};

/// Per-j residual pair (left, right) of the fundamental equations
/// || R_{j-1} A1 + R_j A0 - delta_j0 I ||_F and the mirrored product,
/// for the pencil shifted to the series' center.
std::vector<std::pair<double, double>> fundamental_residuals(const LaurentSeries& series,
                                                             const LinearPencil& pencil,
                                                             long j_min, long j_max);

struct GeometricBoundEstimate {
    double s_est = 0.0;
    double r_est = 0.0;
    int j_used = 0;       // effective Gelfand power (2^k) behind the radii
    double c_d = 0.0;     // fitted constant for ||R_j||  <= c_d / r^j
    double d_e = 0.0;     // fitted constant for ||R_-j|| <= d_e * s^j
    std::string norm_used = "frobenius(gelfand)/spectral(fit)";
};

/// Gelfand-limit estimates of the annulus radii from a basic-solution
/// window: s_est = gelfand(R_-1 A0), r_est = 1/gelfand(R_0 A1) for the
/// pencil shifted to the series' center; the constants c_d, d_e come
/// from a least-squares fit of log||R_j|| against the radii.
GeometricBoundEstimate geometric_bound_estimate(const LaurentSeries& series,
                                                const LinearPencil& pencil);

}  // namespace pencilkit

#endif
