#include "pencilkit/poly.hpp"

#include <cmath>
#include <sstream>

namespace pencilkit {

PolynomialPencil::PolynomialPencil(std::vector<ComplexMatrix> coeffs_)
    : coeffs(std::move(coeffs_)) {
    if (coeffs.size() < 2) throw Error("PolynomialPencil: degree must be >= 1");
    for (const ComplexMatrix& c : coeffs) {
        if (!c.square() || !c.same_shape(coeffs.front())) {
            throw Error("PolynomialPencil: coefficients must share one square shape");
        }
    }
    if (coeffs.back().frobenius_norm() == 0.0) {
        throw Error("PolynomialPencil: leading coefficient A_n is zero");
    }
}

ComplexMatrix evaluate(const PolynomialPencil& pp, cplx z) {
    ComplexMatrix acc = pp.coeffs.back();
    for (std::size_t i = pp.coeffs.size() - 1; i-- > 0;) {
        acc *= z;
        acc += pp.coeffs[i];
    }
    return acc;
}

PolynomialPencil taylor_shift(const PolynomialPencil& pp, cplx z0) {
    if (z0 == cplx{}) return pp;
    const std::size_t n = pp.degree();
    const std::size_t m = pp.base_dim();
    std::vector<ComplexMatrix> out(n + 1, ComplexMatrix(m, m));
    for (std::size_t i = 0; i <= n; ++i) {
        // C(k, i) z0^(k-i) A_k summed over k >= i
        double binom = 1.0;
        cplx pw = 1.0;
        for (std::size_t k = i; k <= n; ++k) {
            out[i] += (binom * pw) * pp.coeffs[k];
            binom *= static_cast<double>(k + 1) / static_cast<double>(k + 1 - i);
            pw *= z0;
        }
    }
    return PolynomialPencil(std::move(out));
}

AugmentedPencil augment(const PolynomialPencil& pp) {
    const std::size_t n = pp.degree();
    const std::size_t m = pp.base_dim();
    ComplexMatrix big0(n * m, n * m), big1(n * m, n * m);
    auto place = [m](ComplexMatrix& dst, std::size_t br, std::size_t bc,
                     const ComplexMatrix& src) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) dst(br * m + i, bc * m + j) = src(i, j);
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b <= a; ++b) place(big0, a, b, pp.coeffs[a - b]);
        for (std::size_t b = a; b < n; ++b) place(big1, a, b, pp.coeffs[n - (b - a)]);
    }
    return AugmentedPencil{LinearPencil(std::move(big0), std::move(big1)), n, m};
}

LaurentSeries extract_block_series(const LaurentSeries& aug_series, std::size_t degree,
                                   std::size_t base_dim, double* max_duplicate_disagreement) {
    const std::size_t n = degree;
    const std::size_t m = base_dim;
    if (aug_series.matrix_rows() != n * m || aug_series.matrix_cols() != n * m) {
        throw Error("extract_block_series: augmented coefficient shape mismatch");
    }
    const long aug_lo = -static_cast<long>(aug_series.neg.size());
    const long aug_hi = static_cast<long>(aug_series.nonneg.size()) - 1;
    const long t_lo = static_cast<long>(n) * aug_lo - static_cast<long>(n) + 1;
    const long t_hi = static_cast<long>(n) * aug_hi + static_cast<long>(n) - 1;

    auto block = [&](const ComplexMatrix& big, std::size_t a, std::size_t b) {
        ComplexMatrix out(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) out(i, j) = big(a * m + i, b * m + j);
        return out;
    };

    double spread = 0.0;
    auto coeff_at = [&](long t) {
        ComplexMatrix acc(m, m);
        std::vector<ComplexMatrix> copies;
        for (long j = aug_lo; j <= aug_hi; ++j) {
            const long diff = t - static_cast<long>(n) * j;  // a - b
            if (diff <= -static_cast<long>(n) || diff >= static_cast<long>(n)) continue;
            const ComplexMatrix big = aug_series.coeff(j);
            for (std::size_t a = 0; a < n; ++a) {
                const long b = static_cast<long>(a) - diff;
                if (b < 0 || b >= static_cast<long>(n)) continue;
                copies.push_back(block(big, a, static_cast<std::size_t>(b)));
            }
        }
        if (copies.empty()) return ComplexMatrix(m, m);
        for (const ComplexMatrix& c : copies) acc += c;
        acc *= cplx(1.0 / static_cast<double>(copies.size()));
        for (const ComplexMatrix& c : copies) spread = std::max(spread, max_abs_diff(c, acc));
        return acc;
    };

    LaurentSeries base;
    base.center = aug_series.center;
    base.annulus = aug_series.annulus;
    for (long t = -1; t >= t_lo; --t) base.neg.push_back(coeff_at(t));
    for (long t = 0; t <= t_hi; ++t) base.nonneg.push_back(coeff_at(t));
    if (max_duplicate_disagreement) *max_duplicate_disagreement = spread;
    if (spread > 1e-8) {
        std::ostringstream msg;
        msg << "extract_block_series: duplicate block positions disagree by " << spread;
        throw BlockInconsistency(msg.str());
    }
    return base;
}

std::vector<ComplexMatrix> poly_basic_solution(const PolynomialPencil& pp, cplx center,
                                               double tol_base) {
    const std::size_t n = pp.degree();
    const AugmentedPencil aug = augment(taylor_shift(pp, center));
    const PoleSolution ps = solve_determining(aug.inner, 0.0, -1, 0, tol_base);
    const BasicSolution bs = basic_solution(ps, aug.inner, std::nullopt, tol_base);

    LaurentSeries pair;
    pair.center = 0.0;
    pair.neg.push_back(bs.r_m1);
    pair.nonneg.push_back(bs.r_0);
    const LaurentSeries base = extract_block_series(pair, n, aug.base_dim);

    std::vector<ComplexMatrix> out;
    out.reserve(2 * n);
    for (long t = -static_cast<long>(n); t <= static_cast<long>(n) - 1; ++t)
        out.push_back(base.coeff(t));
    return out;
}

std::vector<std::pair<double, double>> poly_fundamental_residuals(const LaurentSeries& series,
                                                                  const PolynomialPencil& pp,
                                                                  long j_min, long j_max) {
    if (j_min > j_max) throw Error("poly_fundamental_residuals: empty j range");
    const long n = static_cast<long>(pp.degree());
    const std::size_t m = pp.base_dim();
    const ComplexMatrix eye = ComplexMatrix::identity(m);
    std::vector<std::pair<double, double>> out;
    for (long j = j_min; j <= j_max; ++j) {
        ComplexMatrix left(m, m), right(m, m);
        for (long k = 0; k <= n; ++k) {
            const ComplexMatrix r = series.coeff(j - n + k);
            const ComplexMatrix& a = pp.coeffs[static_cast<std::size_t>(n - k)];
            left += r * a;
            right += a * r;
        }
        if (j == 0) {
            left -= eye;
            right -= eye;
        }
        out.emplace_back(left.frobenius_norm(), right.frobenius_norm());
    }
    return out;
}

AnalyticCoefficients AnalyticCoefficients::from_polynomial(PolynomialPencil pp) {
    AnalyticCoefficients src;
    src.degree = pp.degree();
    src.coeff = [pp = std::move(pp)](std::size_t i) {
        if (i < pp.coeffs.size()) return pp.coeffs[i];
        return ComplexMatrix(pp.base_dim(), pp.base_dim());
    };
    return src;
}

TruncatedInverse analytic_truncated_inverse(const AnalyticCoefficients& source, cplx z,
                                            std::size_t m, std::size_t neumann_terms) {
    const ComplexMatrix a0 = source.coeff(0);
    const std::size_t dim = a0.rows();
    ComplexMatrix partial(dim, dim);
    cplx pw = 1.0;
    for (std::size_t i = 0; i <= m; ++i) {
        partial += pw * source.coeff(i);
        pw *= z;
    }
    LuFactorization lu(partial);
    if (lu.is_singular()) {
        throw Error("analytic_truncated_inverse: A_m(z) is numerically singular");
    }
    // remainder estimated from the next 16 terms (exact when the source
    // is a polynomial of degree <= m + 16)
    ComplexMatrix rho(dim, dim);
    const std::size_t tail_stop =
        source.degree ? std::min(*source.degree, m + 16) : m + 16;
    for (std::size_t i = m + 1; i <= tail_stop; ++i) {
        rho += pw * source.coeff(i);
        pw *= z;
    }
    const ComplexMatrix g = lu.solve(rho);
    TruncatedInverse out;
    out.contraction = g.frobenius_norm();
    if (out.contraction >= 1.0) {
        std::ostringstream msg;
        msg << "analytic_truncated_inverse: ||A_m(z)^-1 rho_m(z)|| = " << out.contraction
            << " >= 1; increase the truncation degree m";
        throw TruncationNotContractive(msg.str());
    }
    // Neumann series for [I + G]^-1
    ComplexMatrix neumann = ComplexMatrix::identity(dim);
    ComplexMatrix term = ComplexMatrix::identity(dim);
    for (std::size_t t = 1; t < neumann_terms; ++t) {
        term = cplx(-1.0) * (term * g);
        neumann += term;
    }
    out.value = neumann * lu.inverse();
    return out;
}

}  // namespace pencilkit
