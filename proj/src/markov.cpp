#include "pencilkit/markov.hpp"

#include <cmath>
#include <sstream>

namespace pencilkit {

StochasticMatrix::StochasticMatrix(ComplexMatrix p_) : p(std::move(p_)) {
    if (!p.square() || p.rows() == 0) {
        throw ParseError("StochasticMatrix: matrix must be square and nonempty");
    }
    for (std::size_t i = 0; i < p.rows(); ++i) {
        cplx row_sum = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) {
            const cplx v = p(i, j);
            if (v.imag() != 0.0 || v.real() < -1e-12) {
                std::ostringstream msg;
                msg << "StochasticMatrix: row " << i + 1 << " has an entry that is not a "
                    << "nonnegative real probability";
                throw ParseError(msg.str());
            }
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > 1e-10) {
            std::ostringstream msg;
            msg << "StochasticMatrix: row " << i + 1 << " sums to " << row_sum.real()
                << ", expected 1";
            throw ParseError(msg.str());
        }
    }
}

StochasticMatrix staircase_chain(std::size_t r) {
    if (r < 1) throw Error("staircase_chain: r must be >= 1");
    ComplexMatrix p(r + 1, r + 1);
    for (std::size_t k = 1; k <= r + 1; ++k)
        for (std::size_t j = 1; j <= k; ++j) p(k - 1, j - 1) = 1.0 / static_cast<double>(k);
    return StochasticMatrix(std::move(p));
}

PerturbedChainPencil perturbed_pencil(const StochasticMatrix& chain) {
    const std::size_t n = chain.states();
    // T^inf by repeated squaring; converges for absorbing chains
    ComplexMatrix limit = chain.p;
    for (int k = 0; k < 40; ++k) limit = limit * limit;
    const double limit_residual = (chain.p * limit - limit).frobenius_norm();
    double structure_defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        structure_defect = std::max(structure_defect, std::abs(limit(i, 0) - 1.0));
        for (std::size_t j = 1; j < n; ++j)
            structure_defect = std::max(structure_defect, std::abs(limit(i, j)));
    }
    if (limit_residual > 1e-8 || structure_defect > 1e-8) {
        std::ostringstream msg;
        msg << "perturbed_pencil: chain does not absorb at state 1 (limit residual "
            << limit_residual << ", structure defect " << structure_defect << ")";
        throw NotAbsorbingAtFirstState(msg.str());
    }
    ComplexMatrix a0(n, n);
    for (std::size_t j = 0; j < n; ++j) a0(0, j) = 1.0;
    const ComplexMatrix a1 = (ComplexMatrix::identity(n) - chain.p).transpose();
    return PerturbedChainPencil{LinearPencil(std::move(a0), a1), chain, limit_residual};
}

ComplexMatrix fundamental_inverse(const StochasticMatrix& chain, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw Error("fundamental_inverse: epsilon must lie in (0, 1]");
    }
    const PerturbedChainPencil pc = perturbed_pencil(chain);
    const PoleSolution ps = solve_determining(pc.pencil, 0.0);
    const BasicSolution bs = basic_solution(ps, pc.pencil);
    const ComplexMatrix out = (1.0 / epsilon) * bs.r_m1 + bs.r_0;
    LuFactorization lu(evaluate(pc.pencil, epsilon));
    if (!lu.is_singular()) {
        const double gap = max_abs_diff(out, lu.inverse());
        if (gap > 1e-8) {
            std::ostringstream msg;
            msg << "fundamental_inverse: pencil series disagrees with direct inversion by "
                << gap;
            throw Error(msg.str());
        }
    }
    return out;
}

std::pair<ComplexMatrix, ComplexMatrix> closed_form_staircase(std::size_t r) {
    if (r < 1) throw Error("closed_form_staircase: r must be >= 1");
    const std::size_t n = r + 1;
    ComplexMatrix r_m1(n, n), r_0(n, n);
    double harmonic = 0.0;
    for (std::size_t k = 1; k <= r; ++k) {
        harmonic += 1.0 / static_cast<double>(k);
        r_m1(0, k) = -(harmonic + 1.0);
    }
    for (std::size_t i = 2; i <= n; ++i) {
        r_m1(i - 1, i - 1) = 1.0 + 1.0 / static_cast<double>(i - 1);
        for (std::size_t j = i + 1; j <= n; ++j)
            r_m1(i - 1, j - 1) = 1.0 / static_cast<double>(i - 1);
    }
    for (std::size_t j = 0; j < n; ++j) r_0(0, j) = 1.0;
    return {std::move(r_m1), std::move(r_0)};
}

}  // namespace pencilkit
