#include <doctest.h>

#include "golden.hpp"
#include "pencilkit/laurent.hpp"

using namespace pencilkit;

TEST_CASE("evaluate: identity pencil ignores z") {
    const LinearPencil p{ComplexMatrix::identity(2), ComplexMatrix(2, 2)};
    CHECK(approx_equal(evaluate(p, 5.0), ComplexMatrix::identity(2)));
}

TEST_CASE("evaluate: z = 0 returns a0") {
    const LinearPencil p = golden::pole2_pencil();
    CHECK(approx_equal(evaluate(p, 0.0), p.a0));
}

TEST_CASE("evaluate: determinant vanishes at a singular point") {
    const LinearPencil p = golden::threepole_pencil();
    const ComplexMatrix at = evaluate(p, -1.0);
    CHECK(approx_equal(at, p.a0 - p.a1));
    CHECK(std::abs(LuFactorization(at).determinant()) < 1e-12);
}

TEST_CASE("evaluate is affine in z") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ComplexMatrix a0(3, 3), a1(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            a0(i, j) = cplx(unit(rng), unit(rng));
            a1(i, j) = cplx(unit(rng), unit(rng));
        }
    const LinearPencil p{a0, a1};
    const cplx z1{0.3, -0.7}, z2{-1.1, 0.2};
    const ComplexMatrix lhs = evaluate(p, z1) + evaluate(p, z2) - p.a0;
    CHECK(max_abs_diff(lhs, evaluate(p, z1 + z2)) < 1e-14);
}

TEST_CASE("construction rejects non-finite entries") {
    std::vector<cplx> bad{1.0, 2.0, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0), 4.0};
    CHECK_THROWS_AS(ComplexMatrix(2, 2, bad), Error);
}

TEST_CASE("frobenius norm is submultiplicative on powers") {
    std::mt19937 rng(11);
    const auto sp = golden::make_structured(rng, 4, 2);
    const PoleSolution ps = solve_determining(sp.pencil, 0.0);
    const BasicSolution bs = basic_solution(ps, sp.pencil);
    const ComplexMatrix step = bs.r_m1 * sp.pencil.a0;
    for (unsigned j = 1; j <= 3; ++j)
        for (unsigned k = 1; k <= 3; ++k) {
            const double lhs = matrix_power(step, j + k).frobenius_norm();
            const double rhs =
                matrix_power(step, j).frobenius_norm() * matrix_power(step, k).frobenius_norm();
            CHECK(lhs <= rhs + 1e-12);
        }
}

TEST_CASE("fundamental_residuals: pole-2 window with zero padding") {
    const LinearPencil p = golden::pole2_pencil();
    LaurentSeries series;
    series.center = 0.0;
    series.neg = {golden::pole2_rm1(), golden::pole2_rm2()};
    series.nonneg = {golden::pole2_r0(), ComplexMatrix(3, 3), ComplexMatrix(3, 3)};
    // R1 = -(R0 A1) R0 and R2 follow from the recurrences
    series.nonneg[1] = cplx(-1.0) * (series.nonneg[0] * p.a1 * series.nonneg[0]);
    series.nonneg[2] = cplx(-1.0) * (series.nonneg[0] * p.a1 * series.nonneg[1]);
    for (const auto& [l, r] : fundamental_residuals(series, p, -2, 2)) {
        CHECK(l < 1e-12);
        CHECK(r < 1e-12);
    }
}

TEST_CASE("fundamental_residuals: all-zero series leaves the identity at j = 0") {
    const LinearPencil p = golden::pole2_pencil();
    LaurentSeries series;
    series.neg = {ComplexMatrix(3, 3)};
    series.nonneg = {ComplexMatrix(3, 3)};
    const auto res = fundamental_residuals(series, p, 0, 0);
    CHECK(res[0].first == doctest::Approx(std::sqrt(3.0)));
    CHECK(res[0].second == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("fundamental_residuals: window from solver vs contour coefficients") {
    std::mt19937 rng(23);
    const auto sp = golden::make_structured(rng, 4, 1);
    const PoleSolution ps = solve_determining(sp.pencil, 0.0);
    const BasicSolution bs = basic_solution(ps, sp.pencil);
    const LaurentSeries series = coefficients_from_basic(bs, 4, 6);
    for (const auto& [l, r] : fundamental_residuals(series, sp.pencil, -3, 5)) {
        CHECK(l < 1e-10);
        CHECK(r < 1e-10);
    }
    const double rho = 0.5 * std::min(1.0, sp.nearest_other);
    for (long j = -2; j <= 2; ++j) {
        const ComplexMatrix oracle = contour_coefficient_oracle(sp.pencil, 0.0, rho, j, 512);
        CHECK(max_abs_diff(oracle, series.coeff(j)) < 1e-10);
    }
}

TEST_CASE("fundamental_residuals requires the window to cover the range") {
    LaurentSeries series;
    series.neg = {ComplexMatrix(2, 2)};
    series.nonneg = {ComplexMatrix(2, 2)};
    const LinearPencil p{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
    CHECK_THROWS_AS(fundamental_residuals(series, p, 0, 3), WindowTooSmall);
}

TEST_CASE("geometric_bound_estimate: inner region of the threepole pencil") {
    const LinearPencil p = golden::threepole_pencil();
    const PoleSolution ps = solve_determining(p, 0.0);
    const BasicSolution bs = basic_solution(ps, p, 1.0);
    const LaurentSeries series = coefficients_from_basic(bs, 3, 3);
    const GeometricBoundEstimate est = geometric_bound_estimate(series, p);
    CHECK(est.s_est < 1e-9);          // R_-1 A0 nilpotent for a simple pole
    CHECK(est.r_est == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(!est.norm_used.empty());
}

TEST_CASE("geometric_bound_estimate: outer region radius 3") {
    const LinearPencil p = golden::threepole_pencil();
    const BasicSolution bs = make_basic_solution(
        p, 0.0, golden::threepole_outer_rm1(), ComplexMatrix(3, 3),
        Annulus{3.0, std::numeric_limits<double>::infinity()});
    const LaurentSeries series = coefficients_from_basic(bs, 5, 2);
    const GeometricBoundEstimate est = geometric_bound_estimate(series, p);
    CHECK(est.s_est == doctest::Approx(3.0).epsilon(1e-6));
    for (unsigned j = 1; j <= 5; ++j) {
        const double g = gelfand_radius(matrix_power(bs.r_m1 * p.a0, j));
        CHECK(g == doctest::Approx(std::pow(3.0, j)).epsilon(1e-9));
    }
}

TEST_CASE("geometric_bound_estimate: nilpotent inner part gives s_est 0") {
    const LinearPencil p = golden::pole2_pencil();
    const PoleSolution ps = solve_determining(p, 0.0);
    const BasicSolution bs = basic_solution(ps, p);
    const LaurentSeries series = coefficients_from_basic(bs, 4, 4);
    CHECK(geometric_bound_estimate(series, p).s_est < 1e-12);
}
