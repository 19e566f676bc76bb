#include "pencilkit/pencil.hpp"

#include <algorithm>
#include <cmath>

namespace pencilkit {

LinearPencil::LinearPencil(ComplexMatrix a0_, ComplexMatrix a1_)
    : a0(std::move(a0_)), a1(std::move(a1_)) {
    if (!a0.same_shape(a1)) throw Error("LinearPencil: a0 and a1 must share a shape");
}

ComplexMatrix evaluate(const LinearPencil& pencil, cplx z) {
    ComplexMatrix out = pencil.a1;
    out *= z;
    out += pencil.a0;
    return out;
}

LinearPencil shifted(const LinearPencil& pencil, cplx z0) {
    if (z0 == cplx{}) return pencil;
    return LinearPencil(evaluate(pencil, z0), pencil.a1);
}

double residual_tolerance(const LinearPencil& pencil, double base) {
    return base * std::max(1.0, pencil.a0.frobenius_norm() + pencil.a1.frobenius_norm());
}

ComplexMatrix LaurentSeries::coeff(long j) const {
    if (j >= 0) {
        if (static_cast<std::size_t>(j) >= nonneg.size()) {
            throw WindowTooSmall("LaurentSeries: coefficient R_" + std::to_string(j) +
                                 " outside the stored window");
        }
        return nonneg[static_cast<std::size_t>(j)];
    }
    const std::size_t k = static_cast<std::size_t>(-j);
    if (k > neg.size()) return ComplexMatrix(matrix_rows(), matrix_cols());
    return neg[k - 1];
}

std::size_t LaurentSeries::matrix_rows() const {
    if (!nonneg.empty()) return nonneg.front().rows();
    if (!neg.empty()) return neg.front().rows();
    return 0;
}

std::size_t LaurentSeries::matrix_cols() const {
    if (!nonneg.empty()) return nonneg.front().cols();
    if (!neg.empty()) return neg.front().cols();
    return 0;
}

std::vector<std::pair<double, double>> fundamental_residuals(const LaurentSeries& series,
                                                             const LinearPencil& pencil,
                                                             long j_min, long j_max) {
    if (j_min > j_max) throw Error("fundamental_residuals: empty j range");
    const LinearPencil local = shifted(pencil, series.center);
    const std::size_t n = local.dim();
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(j_max - j_min + 1));
    for (long j = j_min; j <= j_max; ++j) {
        const ComplexMatrix rj = series.coeff(j);
        const ComplexMatrix rjm1 = series.coeff(j - 1);
        ComplexMatrix left = rjm1 * local.a1 + rj * local.a0;
        ComplexMatrix right = local.a1 * rjm1 + local.a0 * rj;
        if (j == 0) {
            left -= eye;
            right -= eye;
        }
        out.emplace_back(left.frobenius_norm(), right.frobenius_norm());
    }
    return out;
}

namespace {

// least-squares slope/intercept of y against x
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return {0.0, y.empty() ? 0.0 : sy / n};
    const double slope = (n * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / n};
}

}  // namespace

GeometricBoundEstimate geometric_bound_estimate(const LaurentSeries& series,
                                                const LinearPencil& pencil) {
    if (series.neg.size() < 2 || series.nonneg.size() < 2) {
        throw WindowTooSmall("geometric_bound_estimate: need at least 2 coefficients per side");
    }
    const LinearPencil local = shifted(pencil, series.center);
    GeometricBoundEstimate est;
    // A vanishing tail on the negative side means a finite principal
    // part, so the true inner radius is 0; the squaring estimate would
    // otherwise report the noise floor of the near-nilpotent product.
    const double neg_scale = std::max(1.0, series.neg.front().frobenius_norm());
    if (series.neg.back().frobenius_norm() <= 1e-9 * neg_scale) {
        est.s_est = 0.0;
    } else {
        est.s_est = gelfand_radius(series.neg.front() * local.a0);
    }
    const double rho_out = gelfand_radius(series.nonneg.front() * local.a1);
    est.r_est = rho_out == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / rho_out;
    est.j_used = 48;

    // fit ||R_-j|| ~ d_e * s^j and ||R_j|| ~ c_d / r^j on the log scale,
    // holding the slope at the Gelfand radius and fitting the constant
    std::vector<double> xs, ys;
    for (std::size_t j = 1; j <= series.neg.size(); ++j) {
        const double nrm = spectral_norm(series.neg[j - 1]);
        if (nrm <= 0.0) continue;
        xs.push_back(static_cast<double>(j));
        ys.push_back(std::log(nrm) - static_cast<double>(j) *
                                         (est.s_est > 0 ? std::log(est.s_est) : 0.0));
    }
    est.d_e = xs.empty() ? 0.0 : std::exp(line_fit(xs, ys).second);
    xs.clear();
    ys.clear();
    for (std::size_t j = 0; j < series.nonneg.size(); ++j) {
        const double nrm = spectral_norm(series.nonneg[j]);
        if (nrm <= 0.0) continue;
        xs.push_back(static_cast<double>(j));
        ys.push_back(std::log(nrm) + static_cast<double>(j) *
                                         (std::isfinite(est.r_est) ? std::log(est.r_est) : 0.0));
    }
    est.c_d = xs.empty() ? 0.0 : std::exp(line_fit(xs, ys).second);
    return est;
}

}  // namespace pencilkit
