#ifndef PENCILKIT_TESTS_GOLDEN_HPP
#define PENCILKIT_TESTS_GOLDEN_HPP

#include <random>

#include <Eigen/Eigenvalues>

#include "pencilkit/pencil.hpp"

// Frozen reference data used across the test suite: two hand-checked
// 3x3 pencils (one with a second-order pole at 0, one with three simple
// poles), plus a generator for random pencils with a known pole
// structure.
namespace golden {

namespace pk = pencilkit;

// det(A0 + A1 z) vanishes only at z = 0, where the resolvent has a
// second-order pole.
inline pk::LinearPencil pole2_pencil() {
    return {pk::ComplexMatrix{{1, 0, 1}, {1, 0, 0}, {1, 0, 0}},
            pk::ComplexMatrix{{1, 0, -1}, {0, 1, 0}, {0, 1, 1}}};
}
inline pk::ComplexMatrix pole2_rm2() {
    return {{0, 0, 0}, {0, -1, 1}, {0, 0, 0}};
}
inline pk::ComplexMatrix pole2_rm1() {
    return {{0, 1, -1}, {-1, 3, -2}, {0, -1, 1}};
}
inline pk::ComplexMatrix pole2_r0() {
    return {{1, -2, 2}, {1, -2, 2}, {0, 0, 0}};
}

// Simple poles at 0, -1 and -3.
inline pk::LinearPencil threepole_pencil() {
    return {pk::ComplexMatrix{{1, 1, 1}, {1, 2, 1}, {2, 1, 2}},
            pk::ComplexMatrix{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}};
}
inline pk::ComplexMatrix threepole_residue0() {
    const double t = 1.0 / 3.0;
    return {{1, -t, -t}, {0, 0, 0}, {-1, t, t}};
}
inline pk::ComplexMatrix threepole_residue1() {
    return {{0, 0, 0}, {0, 0.5, -0.5}, {0, -0.5, 0.5}};
}
inline pk::ComplexMatrix threepole_residue3() {
    const double t = 1.0 / 3.0, s = 1.0 / 6.0;
    return {{0, t, t}, {0, 0.5, 0.5}, {0, s, s}};
}

// Laurent windows of the threepole resolvent about 0, per annulus.
inline pk::ComplexMatrix threepole_inner_r0() {
    const double n = 1.0 / 9.0;
    return {{0, n, n}, {0, 2.0 / 3.0, -1.0 / 3.0}, {0, -4.0 / 9.0, 5.0 / 9.0}};
}
inline pk::ComplexMatrix threepole_middle_rm1() {
    const double t = 1.0 / 3.0, s = 1.0 / 6.0;
    return {{1, -t, -t}, {0, 0.5, -0.5}, {-1, -s, 5.0 / 6.0}};
}
inline pk::ComplexMatrix threepole_middle_r0() {
    const double n = 1.0 / 9.0, s = 1.0 / 6.0, e = 1.0 / 18.0;
    return {{0, n, n}, {0, s, s}, {0, e, e}};
}
inline pk::ComplexMatrix threepole_outer_rm1() {
    return {{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}};
}

inline double spectral_radius_oracle(const pk::ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
    double radius = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
        radius = std::max(radius, std::abs(solver.eigenvalues()[k]));
    return radius;
}

struct StructuredPencil {
    pk::LinearPencil pencil;
    int order = 0;              // pole order at z = 0
    double nearest_other = 0.0; // modulus of the closest nonzero singularity
};

// A0 = S diag(J_p(0), D) T and A1 = S T with D invertible, so the
// resolvent T^-1 (diag(J_p, D) + zI)^-1 S^-1 has a pole of order
// exactly p at 0 and simple poles at -d_i.
inline StructuredPencil make_structured(std::mt19937& rng, std::size_t n, int p) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> modulus(0.5, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    pk::ComplexMatrix core(n, n);
    for (int i = 0; i + 1 < p; ++i) core(i, i + 1) = 1.0;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = static_cast<std::size_t>(p); i < n; ++i) {
        const double m = modulus(rng);
        core(i, i) = std::polar(m, angle(rng));
        nearest = std::min(nearest, m);
    }
    auto well_conditioned = [&] {
        pk::ComplexMatrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s(i, j) = pk::cplx(unit(rng), unit(rng)) * 0.3 + (i == j ? 1.0 : 0.0);
        return s;
    };
    const pk::ComplexMatrix s = well_conditioned();
    const pk::ComplexMatrix t = well_conditioned();
    return {pk::LinearPencil(s * core * t, s * t), p, nearest};
}

}  // namespace golden

#endif
