#include <doctest.h>

#include "golden.hpp"
#include "pencilkit/laurent.hpp"
#include "pencilkit/poly.hpp"

using namespace pencilkit;

namespace {

// (z - 1)(z - 2) as a 1x1 polynomial pencil
PolynomialPencil scalar_quadratic() {
    return PolynomialPencil({ComplexMatrix{{2.0}}, ComplexMatrix{{-3.0}}, ComplexMatrix{{1.0}}});
}

}  // namespace

TEST_CASE("construction rejects a vanishing leading coefficient") {
    CHECK_THROWS_AS(
        PolynomialPencil({ComplexMatrix{{1.0}}, ComplexMatrix{{0.0}}}), Error);
}

TEST_CASE("augment: degree 1 is the identity embedding") {
    const LinearPencil lin = golden::pole2_pencil();
    const AugmentedPencil aug = augment(PolynomialPencil({lin.a0, lin.a1}));
    CHECK(max_abs_diff(aug.inner.a0, lin.a0) == 0.0);
    CHECK(max_abs_diff(aug.inner.a1, lin.a1) == 0.0);
}

TEST_CASE("augment: degree-2 block layout") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<ComplexMatrix> coeffs(3, ComplexMatrix(2, 2));
    for (auto& c : coeffs)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) c(i, j) = cplx(unit(rng), unit(rng));
    const AugmentedPencil aug = augment(PolynomialPencil(coeffs));
    REQUIRE(aug.inner.dim() == 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            // script-A0 = [[A0, 0], [A1, A0]]
            CHECK(aug.inner.a0(i, j) == coeffs[0](i, j));
            CHECK(aug.inner.a0(i, j + 2) == cplx(0.0));
            CHECK(aug.inner.a0(i + 2, j) == coeffs[1](i, j));
            CHECK(aug.inner.a0(i + 2, j + 2) == coeffs[0](i, j));
            // script-A1 = [[A2, A1], [0, A2]]
            CHECK(aug.inner.a1(i, j) == coeffs[2](i, j));
            CHECK(aug.inner.a1(i, j + 2) == coeffs[1](i, j));
            CHECK(aug.inner.a1(i + 2, j) == cplx(0.0));
            CHECK(aug.inner.a1(i + 2, j + 2) == coeffs[2](i, j));
        }
}

TEST_CASE("augment: scalar quadratic is singular at the squares of its roots") {
    // base roots 1 and 2 of z^2 - 3z + 2 map to 1^2 and 2^2 in the
    // augmented variable: det [[2 + z, -3z], [-3, 2 + z]] = (z - 1)(z - 4)
    const AugmentedPencil aug = augment(scalar_quadratic());
    CHECK(std::abs(LuFactorization(evaluate(aug.inner, 1.0)).determinant()) < 1e-12);
    CHECK(std::abs(LuFactorization(evaluate(aug.inner, 4.0)).determinant()) < 1e-12);
    CHECK(std::abs(LuFactorization(evaluate(aug.inner, 2.0)).determinant()) > 1e-3);
    CHECK(std::abs(LuFactorization(evaluate(aug.inner, 0.5)).determinant()) > 1e-3);
}

TEST_CASE("extract_block_series: degree-2 positions are read back and averaged") {
    // pack a known scalar series R_t = t + 1 for t in [-3, 3]
    const std::size_t n = 2, m = 1;
    LaurentSeries aug_series;
    aug_series.center = 0.0;
    auto script = [&](long j) {
        ComplexMatrix big(n * m, n * m);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const long t = 2 * j + static_cast<long>(a) - static_cast<long>(b);
                big(a, b) = static_cast<double>(t + 1);
            }
        return big;
    };
    aug_series.neg = {script(-1)};
    aug_series.nonneg = {script(0), script(1)};
    double spread = 1.0;
    const LaurentSeries base = extract_block_series(aug_series, n, m, &spread);
    CHECK(spread < 1e-15);
    for (long t = -3; t <= 3; ++t) CHECK(base.coeff(t)(0, 0) == cplx(t + 1));
}

TEST_CASE("extract_block_series flags disagreeing duplicates") {
    const std::size_t n = 2, m = 1;
    LaurentSeries aug_series;
    aug_series.center = 0.0;
    ComplexMatrix r0(2, 2);  // diagonal entries both carry R_0 but differ
    r0(0, 0) = 1.0;
    r0(1, 1) = 2.0;
    aug_series.neg = {};
    aug_series.nonneg = {r0};
    CHECK_THROWS_AS(extract_block_series(aug_series, n, m), BlockInconsistency);
}

TEST_CASE("poly_basic_solution: degree-1 path is identical to the linear path") {
    const LinearPencil lin = golden::pole2_pencil();
    const auto basic = poly_basic_solution(PolynomialPencil({lin.a0, lin.a1}), 0.0);
    const BasicSolution direct = basic_solution(solve_determining(lin, 0.0), lin);
    REQUIRE(basic.size() == 2);
    CHECK(max_abs_diff(basic[0], direct.r_m1) == 0.0);
    CHECK(max_abs_diff(basic[1], direct.r_0) == 0.0);
}

TEST_CASE("poly_basic_solution: scalar quadratic at its lower root") {
    // 1/((z-1)(z-2)) = -1/(z-1) - 1 - (z-1) - ... about z = 1
    const auto basic = poly_basic_solution(scalar_quadratic(), 1.0);
    REQUIRE(basic.size() == 4);
    CHECK(std::abs(basic[1](0, 0) - cplx(-1.0)) < 1e-10);  // R_-1
    CHECK(std::abs(basic[2](0, 0) - cplx(-1.0)) < 1e-10);  // R_0
    CHECK(std::abs(basic[0](0, 0)) < 1e-10);               // R_-2
    CHECK(std::abs(basic[3](0, 0) - cplx(-1.0)) < 1e-10);  // R_1
}

TEST_CASE("poly_basic_solution: decoupled 2x2 quadratic") {
    // diag((z-1)(z-2), z+1): the second diagonal entry is regular at 1
    std::vector<ComplexMatrix> coeffs = {ComplexMatrix{{2, 0}, {0, 1}},
                                         ComplexMatrix{{-3, 0}, {0, 1}},
                                         ComplexMatrix{{1, 0}, {0, 0}}};
    const auto basic = poly_basic_solution(PolynomialPencil(coeffs), 1.0);
    REQUIRE(basic.size() == 4);
    CHECK(max_abs_diff(basic[1], ComplexMatrix{{-1, 0}, {0, 0}}) < 1e-10);  // R_-1
}

TEST_CASE("poly_fundamental_residuals: scalar quadratic window") {
    const PolynomialPencil pp = scalar_quadratic();
    // series of 1/((z-1)(z-2)) about 0: sum (1 - 2^-(t+1)) z^t / 2... use direct values
    LaurentSeries series;
    series.center = 0.0;
    series.neg = {ComplexMatrix(1, 1), ComplexMatrix(1, 1)};
    for (long t = 0; t <= 5; ++t) {
        // 1/((z-1)(z-2)) = 1/(z-2) - 1/(z-1) = sum (1 - 2^-(t+1)) z^t... verify numerically
        const double c = -std::pow(2.0, -(t + 1)) + 1.0;
        series.nonneg.push_back(ComplexMatrix{{c}});
    }
    for (const auto& [l, r] : poly_fundamental_residuals(series, pp, 0, 3)) {
        CHECK(l < 1e-10);
        CHECK(r < 1e-10);
    }
}

TEST_CASE("poly path equals direct inversion pointwise") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<ComplexMatrix> coeffs(3, ComplexMatrix(2, 2));
    for (auto& c : coeffs)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) c(i, j) = cplx(unit(rng), unit(rng));
    coeffs[0] += 3.0 * ComplexMatrix::identity(2);  // keep 0 a regular point
    const PolynomialPencil pp(coeffs);
    const auto basic = poly_basic_solution(pp, 0.0);
    const AugmentedPencil aug = augment(pp);
    const BasicSolution abs_ = basic_solution(solve_determining(aug.inner, 0.0), aug.inner);
    const LaurentSeries aug_series = coefficients_from_basic(abs_, 4, 12);
    const LaurentSeries base = extract_block_series(aug_series, 2, 2);
    const cplx z{0.05, 0.08};
    CHECK(max_abs_diff(evaluate_partial_sum(base, z), inverse(evaluate(pp, z))) < 1e-8);
}

TEST_CASE("taylor_shift re-expands the pencil exactly") {
    const PolynomialPencil pp = scalar_quadratic();
    const PolynomialPencil shifted_pp = taylor_shift(pp, cplx(0.7, -0.2));
    for (cplx w : {cplx(0.3), cplx(0.0, 1.0), cplx(-1.2, 0.4)}) {
        CHECK(std::abs(evaluate(shifted_pp, w)(0, 0) -
                       evaluate(pp, w + cplx(0.7, -0.2))(0, 0)) < 1e-12);
    }
}

TEST_CASE("analytic_truncated_inverse: exact for a finite polynomial") {
    const PolynomialPencil pp = scalar_quadratic();
    const AnalyticCoefficients src = AnalyticCoefficients::from_polynomial(pp);
    const TruncatedInverse ti = analytic_truncated_inverse(src, 0.5, 2, 1);
    CHECK(ti.contraction == 0.0);
    CHECK(std::abs(ti.value(0, 0) - 1.0 / ((0.5 - 1.0) * (0.5 - 2.0))) < 1e-12);
}

TEST_CASE("analytic_truncated_inverse: geometric coefficients") {
    AnalyticCoefficients src;
    src.coeff = [](std::size_t) { return ComplexMatrix::identity(2); };
    const TruncatedInverse ti = analytic_truncated_inverse(src, 0.3, 6, 20);
    CHECK(max_abs_diff(ti.value, 0.7 * ComplexMatrix::identity(2)) < 1e-6);
    CHECK(ti.contraction < 1.0);
}

TEST_CASE("analytic_truncated_inverse: refuses a non-contractive truncation") {
    AnalyticCoefficients src;
    src.coeff = [](std::size_t) { return ComplexMatrix::identity(2); };
    CHECK_THROWS_AS(analytic_truncated_inverse(src, 0.9, 2, 20), TruncationNotContractive);
}
