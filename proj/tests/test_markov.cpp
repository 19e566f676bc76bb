#include <doctest.h>

#include "golden.hpp"
#include "pencilkit/laurent.hpp"
#include "pencilkit/markov.hpp"

using namespace pencilkit;

TEST_CASE("staircase_chain instantiations") {
    CHECK(max_abs_diff(staircase_chain(1).p, ComplexMatrix{{1, 0}, {0.5, 0.5}}) == 0.0);
    const double t = 1.0 / 3.0;
    CHECK(max_abs_diff(staircase_chain(2).p,
                       ComplexMatrix{{1, 0, 0}, {0.5, 0.5, 0}, {t, t, t}}) < 1e-15);
}

TEST_CASE("staircase rows sum to one") {
    for (std::size_t r = 1; r <= 8; ++r) {
        const ComplexMatrix p = staircase_chain(r).p;
        for (std::size_t i = 0; i < p.rows(); ++i) {
            cplx sum = 0.0;
            for (std::size_t j = 0; j < p.cols(); ++j) sum += p(i, j);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("stochastic validation names the offending row") {
    ComplexMatrix bad{{1.0, 0.0}, {0.6, 0.6}};
    try {
        StochasticMatrix sm(bad);
        FAIL("expected a validation error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("perturbed_pencil builds the transposed construction") {
    const auto pc = perturbed_pencil(staircase_chain(2));
    const double t = 1.0 / 3.0;
    CHECK(max_abs_diff(pc.pencil.a1,
                       ComplexMatrix{{0, -0.5, -t}, {0, 0.5, -t}, {0, 0, 2 * t}}) < 1e-15);
    // A0: first row all ones, rank 1
    CHECK(max_abs_diff(pc.pencil.a0, ComplexMatrix{{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}) == 0.0);
    CHECK(pc.limit_residual < 1e-8);
}

TEST_CASE("perturbed_pencil rejects a chain that does not absorb at state 1") {
    // two absorbing states
    ComplexMatrix p{{1, 0}, {0, 1}};
    CHECK_THROWS_AS(perturbed_pencil(StochasticMatrix(p)), NotAbsorbingAtFirstState);
}

TEST_CASE("staircase pole order is one for every r") {
    for (std::size_t r = 1; r <= 6; ++r) {
        const auto pc = perturbed_pencil(staircase_chain(r));
        const PoleSolution ps = solve_determining(pc.pencil, 0.0);
        CHECK(ps.order == 1);
    }
}

TEST_CASE("closed_form_staircase instantiations") {
    const auto [rm1_1, r0_1] = closed_form_staircase(1);
    CHECK(max_abs_diff(rm1_1, ComplexMatrix{{0, -2}, {0, 2}}) == 0.0);
    const auto [rm1_2, r0_2] = closed_form_staircase(2);
    CHECK(max_abs_diff(rm1_2, ComplexMatrix{{0, -2, -2.5}, {0, 2, 1}, {0, 0, 1.5}}) == 0.0);
    CHECK(max_abs_diff(r0_2, ComplexMatrix{{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}) == 0.0);
}

TEST_CASE("solver matches the closed form for every r") {
    for (std::size_t r = 1; r <= 6; ++r) {
        const auto pc = perturbed_pencil(staircase_chain(r));
        const PoleSolution ps = solve_determining(pc.pencil, 0.0);
        const auto [rm1, r0] = closed_form_staircase(r);
        CHECK(max_abs_diff(ps.r(-1), rm1) < 1e-10);
        CHECK(max_abs_diff(ps.r(0), r0) < 1e-10);
        // harmonic first row
        double harmonic = 0.0;
        for (std::size_t k = 1; k <= r; ++k) {
            harmonic += 1.0 / static_cast<double>(k);
            CHECK(std::abs(ps.r(-1)(0, k) + harmonic + 1.0) < 1e-12);
        }
    }
}

TEST_CASE("fundamental_inverse equals direct inversion") {
    const ComplexMatrix inv = fundamental_inverse(staircase_chain(2), 1.0);
    const auto pc = perturbed_pencil(staircase_chain(2));
    CHECK(max_abs_diff(inv, inverse(evaluate(pc.pencil, 1.0))) < 1e-10);
}

TEST_CASE("fundamental_inverse is linear in 1/epsilon") {
    const auto chain = staircase_chain(4);
    const auto [rm1, r0] = closed_form_staircase(4);
    const ComplexMatrix at_quarter = fundamental_inverse(chain, 0.25);
    CHECK(max_abs_diff(at_quarter, 4.0 * rm1 + r0) < 1e-10);
    const ComplexMatrix at_half = fundamental_inverse(chain, 0.5);
    CHECK(max_abs_diff(at_quarter - at_half, 2.0 * rm1) < 1e-10);
}

TEST_CASE("perturbed inverse identity across r and epsilon") {
    for (std::size_t r = 1; r <= 8; ++r) {
        const auto chain = staircase_chain(r);
        const auto pc = perturbed_pencil(chain);
        const ComplexMatrix eye = ComplexMatrix::identity(r + 1);
        for (double eps : {1.0, 0.5, 0.25, 0.125}) {
            const ComplexMatrix inv = fundamental_inverse(chain, eps);
            CHECK((evaluate(pc.pencil, eps) * inv - eye).frobenius_norm() < 1e-9);
        }
    }
}

TEST_CASE("staircase higher Laurent coefficients vanish") {
    for (std::size_t r = 1; r <= 8; ++r) {
        const auto pc = perturbed_pencil(staircase_chain(r));
        const BasicSolution bs = basic_solution(solve_determining(pc.pencil, 0.0), pc.pencil);
        const LaurentSeries series = coefficients_from_basic(bs, 2, 1);
        CHECK(series.coeff(-2).frobenius_norm() < 1e-12);
        CHECK(series.coeff(1).frobenius_norm() < 1e-12);
    }
}
