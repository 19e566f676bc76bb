#ifndef PENCILKIT_DETERMINING_HPP
#define PENCILKIT_DETERMINING_HPP

#include <optional>

#include "pencilkit/pencil.hpp"

namespace pencilkit {

struct SolveDiagnostics {
    int pivot_count = 0;      // rank of the reduced truncation
    int truncation_depth = 0; // block rows/columns used
    double residual = 0.0;    // trailing residual of the accepted column
};

/// Coefficients {R_-p, ..., R_0} of the resolvent of A(z) about an
/// isolated singularity (or regular point, order 0) at `center`.
/// coeffs[i] = R_{i-p}.
struct PoleSolution {
    int order = 0;
    std::vector<ComplexMatrix> coeffs;
    cplx center = 0.0;
    SolveDiagnostics diagnostics;

    const ComplexMatrix& r(long j) const;  // j in [-order, 0]
};

/// The pair {R_-1, R_0} generating the full Laurent window, together
/// with its annulus and the re-centred pencil it solves.
struct BasicSolution {
    ComplexMatrix r_m1;
    ComplexMatrix r_0;
    cplx center = 0.0;
    Annulus annulus;
    LinearPencil local;  // pencil shifted to `center`
};

/// Consistency probe for one right-hand-side block column of the
/// determining system: candidate pole order `p`, truncated to `depth`
/// blocks (0 picks the default p + n + 2).  Returns the coefficients
/// when consistent.
struct DeterminingProbe {
    bool consistent = false;
    double residual = 0.0;
    int pivot_count = 0;
    int depth = 0;
    std::vector<ComplexMatrix> coeffs;
};

DeterminingProbe probe_determining_column(const LinearPencil& pencil, cplx center, int p,
                                          int depth = 0, double tol_base = 1e-10);

/// Block Gaussian reduction of the determining system: probes pole
/// orders p = 0, 1, ... and returns the smallest consistent one with
/// its coefficients.  max_order < 0 picks the matrix dimension n.
/// Throws NoPoleWithinBound when no p <= max_order is consistent
/// (possible essential singularity) and IllConditioned when the
/// consistency decision is ambiguous.
PoleSolution solve_determining(const LinearPencil& pencil, cplx center, int max_order = -1,
                               int depth_override = 0, double tol_base = 1e-10);

/// Extract and verify the basic solution {R_-1, R_0} (Corollary-style
/// identities); annulus inner radius 0, outer radius from
/// `known_outer_radius` when given, else a Gelfand estimate.
BasicSolution basic_solution(const PoleSolution& ps, const LinearPencil& pencil,
                             std::optional<double> known_outer_radius = std::nullopt,
                             double tol_base = 1e-10);

/// Assemble a BasicSolution from given matrices, verifying the same
/// identities.  Used when the pair comes from re-expansion or golden
/// data rather than the solver.
BasicSolution make_basic_solution(const LinearPencil& pencil, cplx center, ComplexMatrix r_m1,
                                  ComplexMatrix r_0, Annulus annulus, double tol_base = 1e-10);

}  // namespace pencilkit

#endif
