#include "pencilkit/determining.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pencilkit {

const ComplexMatrix& PoleSolution::r(long j) const {
    if (j < -order || j > 0) throw Error("PoleSolution: coefficient index out of range");
    return coeffs[static_cast<std::size_t>(j + order)];
}

namespace {

// Gauss-Jordan reduction of [M | RHS] where M is the N-block-deep
// truncation of the determining operator (A0 on the block diagonal,
// A1 below) and RHS is the (p+1)-th identity block column.  Partial
// pivoting by maximum modulus, ties to the lowest row.
DeterminingProbe reduce(const LinearPencil& local, int p, int depth, double tau_res) {
    const std::size_t n = local.dim();
    const std::size_t m = static_cast<std::size_t>(depth) * n;
    // dense augmented matrix, columns [0, m) unknowns, [m, m+n) RHS
    std::vector<cplx> aug(m * (m + n), cplx{});
    auto at = [&](std::size_t r, std::size_t c) -> cplx& { return aug[r * (m + n) + c]; };
    for (int blk = 0; blk < depth; ++blk) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                at(blk * n + i, blk * n + j) = local.a0(i, j);
                if (blk > 0) at(blk * n + i, (blk - 1) * n + j) = local.a1(i, j);
            }
        }
        if (blk == p)
            for (std::size_t i = 0; i < n; ++i) at(blk * n + i, m + i) = 1.0;
    }

    const double eps = std::numeric_limits<double>::epsilon();
    const double tau_pivot =
        static_cast<double>(n) * eps *
        std::max({local.a0.frobenius_norm(), local.a1.frobenius_norm(), 1e-30});

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < m; ++col) {
        std::size_t piv = row;
        double best = std::abs(at(row, col));
        for (std::size_t r = row + 1; r < m; ++r) {
            const double v = std::abs(at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < tau_pivot) continue;  // free column
        if (piv != row)
            for (std::size_t c = 0; c < m + n; ++c) std::swap(at(row, c), at(piv, c));
        const cplx d = at(row, col);
        for (std::size_t c = 0; c < m + n; ++c) at(row, c) /= d;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row) continue;
            const cplx f = at(r, col);
            if (f == cplx{}) continue;
            for (std::size_t c = col; c < m + n; ++c) at(r, c) -= f * at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }

    DeterminingProbe probe;
    probe.depth = depth;
    probe.pivot_count = static_cast<int>(row);
    double res2 = 0.0;  // RHS mass stranded in the zero rows
    for (std::size_t r = row; r < m; ++r)
        for (std::size_t c = m; c < m + n; ++c) res2 += std::norm(at(r, c));
    probe.residual = std::sqrt(res2);
    probe.consistent = probe.residual < tau_res;
    if (!probe.consistent) return probe;

    // particular solution: free unknowns zero, pivot unknowns from RHS
    std::vector<cplx> x(m * n, cplx{});
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) x[pivot_col[r] * n + j] = at(r, m + j);
    probe.coeffs.reserve(static_cast<std::size_t>(p) + 1);
    for (int blk = 0; blk <= p; ++blk) {
        ComplexMatrix c(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c(i, j) = x[(blk * n + i) * n + j];
        probe.coeffs.push_back(std::move(c));
    }
    return probe;
}

}  // namespace

DeterminingProbe probe_determining_column(const LinearPencil& pencil, cplx center, int p,
                                          int depth, double tol_base) {
    if (!pencil.square()) throw Error("probe_determining_column: pencil not square");
    if (p < 0) throw Error("probe_determining_column: negative pole order");
    const LinearPencil local = shifted(pencil, center);
    const int n = static_cast<int>(local.dim());
    if (depth <= 0) depth = p + n + 2;
    if (depth < p + 1) depth = p + 1;
    return reduce(local, p, depth, residual_tolerance(local, tol_base));
}

PoleSolution solve_determining(const LinearPencil& pencil, cplx center, int max_order,
                               int depth_override, double tol_base) {
    if (!pencil.square()) throw Error("solve_determining: pencil not square");
    const LinearPencil local = shifted(pencil, center);
    const int n = static_cast<int>(local.dim());
    if (max_order < 0) max_order = n;  // matrix pencils pole order <= n
    const double tau_res = residual_tolerance(local, tol_base);

    bool ambiguous = false;
    for (int p = 0; p <= max_order; ++p) {
        int depth = depth_override > 0 ? depth_override : p + n + 2;
        DeterminingProbe probe = probe_determining_column(pencil, center, p, depth, tol_base);
        if (!probe.consistent && depth_override == 0) {
            // one adaptive retry at double depth before giving up on p
            probe = probe_determining_column(pencil, center, p, 2 * depth, tol_base);
        }
        if (probe.consistent) {
            PoleSolution ps;
            ps.order = p;
            ps.coeffs = std::move(probe.coeffs);
            ps.center = center;
            ps.diagnostics = {probe.pivot_count, probe.depth, probe.residual};
            return ps;
        }
        if (probe.residual < 1e3 * tau_res) ambiguous = true;
    }
    if (ambiguous) {
        throw IllConditioned("solve_determining: consistency decision ambiguous near the "
                             "residual threshold; tighten tolerances or rescale the pencil");
    }
    std::ostringstream msg;
    msg << "solve_determining: no consistent pole order p <= " << max_order
        << " at the requested center; the resolvent may have a higher-order pole or an "
           "isolated essential singularity, for which no general solution procedure is known";
    throw NoPoleWithinBound(msg.str());
}

namespace {

void require_identity(const ComplexMatrix& got, const ComplexMatrix& want, double tol,
                      const char* name) {
    const double res = (got - want).frobenius_norm();
    if (res > tol) {
        std::ostringstream msg;
        msg << "basic solution violates " << name << " (residual " << res << " > " << tol << ")";
        throw BasicConditionViolated(msg.str());
    }
}

}  // namespace

BasicSolution make_basic_solution(const LinearPencil& pencil, cplx center, ComplexMatrix r_m1,
                                  ComplexMatrix r_0, Annulus annulus, double tol_base) {
    BasicSolution bs;
    bs.center = center;
    bs.local = shifted(pencil, center);
    bs.r_m1 = std::move(r_m1);
    bs.r_0 = std::move(r_0);
    bs.annulus = annulus;
    const double tol = residual_tolerance(bs.local, tol_base) *
                       std::max(1.0, bs.r_m1.frobenius_norm() + bs.r_0.frobenius_norm());
    const ComplexMatrix eye = ComplexMatrix::identity(bs.local.dim());
    require_identity(bs.r_m1 * bs.local.a1 + bs.r_0 * bs.local.a0, eye,
                     tol, "R_-1 A1 + R_0 A0 = I");
    require_identity(bs.local.a1 * bs.r_m1 + bs.local.a0 * bs.r_0, eye,
                     tol, "A1 R_-1 + A0 R_0 = I");
    const ComplexMatrix zero(bs.local.dim(), bs.local.dim());
    require_identity(bs.r_m1 * bs.local.a0 * bs.r_0, zero, tol, "R_-1 A0 R_0 = 0");
    require_identity(bs.r_m1 * bs.local.a1 * bs.r_0, zero, tol, "R_-1 A1 R_0 = 0");
    require_identity(bs.r_0 * bs.local.a0 * bs.r_m1, zero, tol, "R_0 A0 R_-1 = 0");
    require_identity(bs.r_0 * bs.local.a1 * bs.r_m1, zero, tol, "R_0 A1 R_-1 = 0");
    return bs;
}

BasicSolution basic_solution(const PoleSolution& ps, const LinearPencil& pencil,
                             std::optional<double> known_outer_radius, double tol_base) {
    const std::size_t n = pencil.dim();
    ComplexMatrix r_m1 = ps.order >= 1 ? ps.r(-1) : ComplexMatrix(n, n);
    ComplexMatrix r_0 = ps.r(0);
    Annulus annulus;
    annulus.inner = 0.0;  // isolated singularity
    if (known_outer_radius) {
        annulus.outer = *known_outer_radius;
    } else {
        const LinearPencil local = shifted(pencil, ps.center);
        const double rho = gelfand_radius(r_0 * local.a1);
        annulus.outer = rho == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / rho;
    }
    return make_basic_solution(pencil, ps.center, std::move(r_m1), std::move(r_0), annulus,
                               tol_base);
}

}  // namespace pencilkit
