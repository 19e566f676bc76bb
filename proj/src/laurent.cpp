#include "pencilkit/laurent.hpp"

#include <cmath>
#include <numbers>

namespace pencilkit {

LaurentSeries coefficients_from_basic(const BasicSolution& basic, std::size_t k_neg,
                                      std::size_t k_pos) {
    if (k_neg < 1 || k_pos < 1) throw Error("coefficients_from_basic: window must be >= 1");
    LaurentSeries series;
    series.center = basic.center;
    series.annulus = basic.annulus;
    const ComplexMatrix neg_step = basic.r_m1 * basic.local.a0;
    const ComplexMatrix pos_step = basic.r_0 * basic.local.a1;
    series.neg.reserve(k_neg);
    series.neg.push_back(basic.r_m1);
    for (std::size_t j = 2; j <= k_neg; ++j)
        series.neg.push_back(cplx(-1.0) * (neg_step * series.neg.back()));
    series.nonneg.reserve(k_pos + 1);
    series.nonneg.push_back(basic.r_0);
    for (std::size_t j = 1; j <= k_pos; ++j)
        series.nonneg.push_back(cplx(-1.0) * (pos_step * series.nonneg.back()));
    return series;
}

ResolventSample evaluate_closed_form(const BasicSolution& basic, cplx z) {
    const cplx w = z - basic.center;
    const std::size_t n = basic.local.dim();
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const ComplexMatrix inner_neg = w * eye + basic.r_m1 * basic.local.a0;
    const ComplexMatrix inner_pos = eye + w * (basic.r_0 * basic.local.a1);
    LuFactorization lu_neg(inner_neg);
    LuFactorization lu_pos(inner_pos);
    if (lu_neg.is_singular() || lu_pos.is_singular()) {
        throw InnerSingular("evaluate_closed_form: inner matrix singular; z is outside the "
                            "annulus or at a singularity");
    }
    ResolventSample sample;
    sample.z = z;
    sample.value = lu_neg.solve(basic.r_m1) + lu_pos.solve(basic.r_0);
    sample.condition = std::max(lu_neg.condition_estimate(), lu_pos.condition_estimate());
    sample.residual = (evaluate(basic.local, w) * sample.value - eye).frobenius_norm();
    return sample;
}

ComplexMatrix evaluate_partial_sum(const LaurentSeries& series, cplx z) {
    const cplx w = z - series.center;
    // Horner on each side keeps the evaluation stable
    ComplexMatrix negpart(series.matrix_rows(), series.matrix_cols());
    if (!series.neg.empty()) {
        if (w == cplx{}) throw Error("evaluate_partial_sum: z is the expansion center");
        const cplx winv = 1.0 / w;
        for (std::size_t j = series.neg.size(); j-- > 0;) {
            negpart *= winv;
            negpart += series.neg[j];
        }
        negpart *= winv;
    }
    ComplexMatrix pospart(series.matrix_rows(), series.matrix_cols());
    for (std::size_t j = series.nonneg.size(); j-- > 0;) {
        pospart *= w;
        pospart += series.nonneg[j];
    }
    return negpart + pospart;
}

std::pair<double, double> resolvent_equation_residual(const BasicSolution& basic, cplx lambda,
                                                      cplx mu) {
    auto resolvent_at = [&](cplx l) {
        if (l == cplx{}) throw OutOfDomain("resolvent_equation_residual: lambda must be nonzero");
        const cplx w = -1.0 / l;
        if (!basic.annulus.contains(std::abs(w))) {
            throw OutOfDomain("resolvent_equation_residual: -1/lambda outside the annulus");
        }
        const ComplexMatrix rw = evaluate_closed_form(basic, basic.center + w).value;
        return std::pair{(1.0 / l) * (rw * basic.local.a0), (1.0 / l) * (basic.local.a0 * rw)};
    };
    const auto [rl, sl] = resolvent_at(lambda);
    const auto [rm, sm] = resolvent_at(mu);
    const cplx d = mu - lambda;
    const double res_r = (rl - rm - d * (rl * rm)).frobenius_norm();
    const double res_s = (sl - sm - d * (sl * sm)).frobenius_norm();
    return {res_r, res_s};
}

namespace {

ComplexMatrix pairwise_sum(std::vector<ComplexMatrix>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return terms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

ComplexMatrix contour_fixed(const LinearPencil& pencil, cplx center, double rho, long j,
                            std::size_t nodes) {
    std::vector<ComplexMatrix> terms;
    terms.reserve(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
        const cplx w = rho * cplx(std::cos(theta), std::sin(theta));
        LuFactorization lu(evaluate(pencil, center + w));
        if (lu.is_singular()) {
            throw NodeSingular("contour_coefficient_oracle: pencil singular at a quadrature node");
        }
        terms.push_back(std::pow(w, cplx(static_cast<double>(-j))) * lu.inverse());
    }
    ComplexMatrix sum = pairwise_sum(terms, 0, terms.size());
    sum *= cplx(1.0 / static_cast<double>(nodes));
    return sum;
}

}  // namespace

ComplexMatrix contour_coefficient_oracle(const LinearPencil& pencil, cplx center, double rho,
                                         long j, std::size_t nodes) {
    if (!pencil.square()) throw Error("contour_coefficient_oracle: pencil not square");
    if (rho <= 0.0) throw Error("contour_coefficient_oracle: rho must be positive");
    if (nodes != 0) {
        if (nodes < 16) throw Error("contour_coefficient_oracle: need at least 16 nodes");
        return contour_fixed(pencil, center, rho, j, nodes);
    }
    std::size_t count = 128;
    ComplexMatrix prev = contour_fixed(pencil, center, rho, j, count);
    while (count < 4096) {
        count *= 2;
        ComplexMatrix next = contour_fixed(pencil, center, rho, j, count);
        if (max_abs_diff(next, prev) < 1e-11) return next;
        prev = std::move(next);
    }
    return prev;
}

}  // namespace pencilkit
