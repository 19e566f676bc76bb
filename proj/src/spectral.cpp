#include "pencilkit/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pencilkit {

ProjectionPair projections(const BasicSolution& basic, const LinearPencil& pencil,
                           double tol_base) {
    const LinearPencil local = shifted(pencil, basic.center);
    ProjectionPair pair{basic.r_m1 * local.a1, local.a1 * basic.r_m1};
    const double tol = residual_tolerance(local, tol_base) *
                       std::max(1.0, basic.r_m1.frobenius_norm() + basic.r_0.frobenius_norm());
    const ComplexMatrix eye = ComplexMatrix::identity(local.dim());
    const double defects[4] = {
        (pair.p * pair.p - pair.p).frobenius_norm(),
        (pair.q * pair.q - pair.q).frobenius_norm(),
        ((eye - pair.p) - basic.r_0 * local.a0).frobenius_norm(),
        ((eye - pair.q) - local.a0 * basic.r_0).frobenius_norm(),
    };
    static const char* names[4] = {"P^2 = P", "Q^2 = Q", "I - P = R_0 A0", "I - Q = A0 R_0"};
    for (int i = 0; i < 4; ++i) {
        if (defects[i] > tol) {
            std::ostringstream msg;
            msg << "projection identity " << names[i] << " violated (residual " << defects[i]
                << ")";
            throw ProjectionDefect(msg.str());
        }
    }
    return pair;
}

std::array<double, 4> block_decomposition_residual(const LinearPencil& pencil,
                                                   const ProjectionPair& pair) {
    const ComplexMatrix eye = ComplexMatrix::identity(pencil.dim());
    const ComplexMatrix ip = eye - pair.p;
    const ComplexMatrix iq = eye - pair.q;
    return {
        (pair.q * pencil.a0 * ip).frobenius_norm(),
        (iq * pencil.a0 * pair.p).frobenius_norm(),
        (pair.q * pencil.a1 * ip).frobenius_norm(),
        (iq * pencil.a1 * pair.p).frobenius_norm(),
    };
}

namespace {

cplx det_at(const LinearPencil& pencil, cplx z) {
    return LuFactorization(evaluate(pencil, z)).determinant();
}

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

}  // namespace

std::vector<cplx> find_singularities(const LinearPencil& pencil) {
    if (!pencil.square()) throw Error("find_singularities: pencil not square");
    const std::size_t n = pencil.dim();
    const double a0n = pencil.a0.frobenius_norm();
    const double a1n = pencil.a1.frobenius_norm();
    const double sigma = std::max(1.0, a0n / std::max(a1n, 1e-30));

    // det(A0 + A1 z) sampled at n+1 Chebyshev points of z/sigma, so the
    // Vandermonde below stays well conditioned for any magnitude of sigma
    std::vector<cplx> pts(n + 1), vals(n + 1);
    double val_scale = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        pts[k] = n == 0 ? 0.0
                        : std::cos(std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(n));
        vals[k] = det_at(pencil, sigma * pts[k]);
        val_scale = std::max(val_scale, std::abs(vals[k]));
    }
    const double degenerate = std::pow(a0n + sigma * a1n + 1.0, static_cast<double>(n)) * 1e-13;
    if (val_scale < degenerate) {
        throw SingularPencilEverywhere(
            "find_singularities: det(A0 + A1 z) vanishes at all sample points");
    }

    // monomial coefficients via Vandermonde solve
    ComplexMatrix vand(n + 1, n + 1), rhs(n + 1, 1);
    for (std::size_t k = 0; k <= n; ++k) {
        cplx pw = 1.0;
        for (std::size_t j = 0; j <= n; ++j) {
            vand(k, j) = pw;
            pw *= pts[k];
        }
        rhs(k, 0) = vals[k];
    }
    const ComplexMatrix csol = LuFactorization(vand).solve(rhs);
    std::vector<cplx> coeffs(n + 1);
    double cmax = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        coeffs[j] = csol(j, 0);
        cmax = std::max(cmax, std::abs(coeffs[j]));
    }
    std::size_t deg = n;
    while (deg > 0 && std::abs(coeffs[deg]) <= 1e-9 * cmax) --deg;
    coeffs.resize(deg + 1);
    if (deg == 0) return {};

    // companion matrix eigenvalues
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<long>(deg), static_cast<long>(deg));
    for (std::size_t i = 1; i < deg; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        comp(static_cast<long>(i), static_cast<long>(deg - 1)) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<cplx> roots;
    roots.reserve(deg);
    for (long i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);

    // Newton polish against the interpolated polynomial
    std::vector<cplx> dcoeffs(deg);
    for (std::size_t j = 1; j <= deg; ++j) dcoeffs[j - 1] = coeffs[j] * static_cast<double>(j);
    for (cplx& z : roots) {
        for (int it = 0; it < 3; ++it) {
            const cplx dp = poly_eval(dcoeffs, z);
            if (std::abs(dp) < 1e-12 * cmax) break;  // near-multiple root, leave to merging
            const cplx step = poly_eval(coeffs, z) / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
        }
    }

    // merge clusters within 1e-7, keeping the centroid
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
    std::vector<cplx> merged;
    std::vector<int> counts;
    for (const cplx& z : roots) {
        bool joined = false;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            if (std::abs(z - merged[i]) < 1e-7) {
                merged[i] = (merged[i] * static_cast<double>(counts[i]) + z) /
                            static_cast<double>(counts[i] + 1);
                ++counts[i];
                joined = true;
                break;
            }
        }
        if (!joined) {
            merged.push_back(z);
            counts.push_back(1);
        }
    }
    for (cplx& z : merged) z *= sigma;  // undo the sampling normalization
    std::sort(merged.begin(), merged.end(), [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
    return merged;
}

SingularitySet global_decomposition(const LinearPencil& pencil, double tol_base) {
    const std::size_t n = pencil.dim();
    const std::vector<cplx> sings = find_singularities(pencil);
    SingularitySet ss;
    ss.p_inf = ComplexMatrix::identity(n);
    ss.q_inf = ComplexMatrix::identity(n);

    for (const cplx& zk : sings) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const cplx& zl : sings)
            if (zl != zk) nearest = std::min(nearest, std::abs(zl - zk));
        try {
            PoleSolution ps = solve_determining(pencil, zk, -1, 0, tol_base);
            SingularPoint pt;
            pt.z = zk;
            pt.order = ps.order;
            for (int j = 1; j <= ps.order; ++j) pt.principal.push_back(ps.r(-j));
            pt.basic = basic_solution(ps, pencil, nearest, tol_base);
            pt.p = pt.basic.r_m1 * pt.basic.local.a1;
            pt.q = pt.basic.local.a1 * pt.basic.r_m1;
            ss.p_inf -= pt.p;
            ss.q_inf -= pt.q;
            ss.points.push_back(std::move(pt));
        } catch (const Error& err) {
            std::ostringstream msg;
            msg << "global_decomposition: local solve failed at singularity z = (" << zk.real()
                << ", " << zk.imag() << "): " << err.what();
            throw Error(msg.str());
        }
    }

    for (std::size_t k = 0; k < ss.points.size(); ++k) {
        for (std::size_t l = 0; l < ss.points.size(); ++l) {
            if (k == l) continue;
            ss.max_annihilation_residual =
                std::max({ss.max_annihilation_residual,
                          (ss.points[k].p * ss.points[l].p).frobenius_norm(),
                          (ss.points[k].q * ss.points[l].q).frobenius_norm()});
        }
    }

    // entire part by exact DFT on an enclosing circle; the integrand is
    // a polynomial of degree < sample count, so the quadrature is exact
    double rmax = 0.0;
    for (const SingularPoint& pt : ss.points) rmax = std::max(rmax, std::abs(pt.z));
    const double rho = 2.0 * rmax + 1.0;
    const std::size_t samples = std::max<std::size_t>(4 * n, 8);
    const std::size_t max_deg = 2 * n;
    std::vector<ComplexMatrix> evals;
    evals.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        const cplx z = rho * cplx(std::cos(theta), std::sin(theta));
        ComplexMatrix e = LuFactorization(evaluate(pencil, z)).inverse();
        for (const SingularPoint& pt : ss.points) {
            cplx winv = 1.0 / (z - pt.z);
            cplx pw = winv;
            for (const ComplexMatrix& coeff : pt.principal) {
                e -= pw * coeff;
                pw *= winv;
            }
        }
        evals.push_back(std::move(e));
    }
    std::vector<ComplexMatrix> fit;
    double fit_scale = 0.0;
    for (std::size_t t = 0; t <= max_deg; ++t) {
        ComplexMatrix ct(n, n);
        for (std::size_t k = 0; k < samples; ++k) {
            const double theta = -2.0 * std::numbers::pi * static_cast<double>(t) *
                                 static_cast<double>(k) / static_cast<double>(samples);
            ct += cplx(std::cos(theta), std::sin(theta)) * evals[k];
        }
        ct *= cplx(1.0 / (static_cast<double>(samples) * std::pow(rho, static_cast<double>(t))));
        fit_scale = std::max(fit_scale, ct.frobenius_norm());
        fit.push_back(std::move(ct));
    }
    std::size_t keep = fit.size();
    while (keep > 0 && fit[keep - 1].frobenius_norm() <= 1e-8 * std::max(1.0, fit_scale)) --keep;
    fit.resize(keep);
    if (!fit.empty() && !LuFactorization(pencil.a1).is_singular()) {
        // resolvent of a pencil with invertible A1 decays at infinity
        double resid = 0.0;
        for (const ComplexMatrix& c : fit) resid = std::max(resid, c.frobenius_norm());
        if (resid > 1e-6) {
            throw Error("global_decomposition: nonzero entire part fitted for a pencil with "
                        "invertible A1");
        }
        fit.clear();
    }
    ss.entire_part = std::move(fit);
    return ss;
}

namespace {

double binomial(std::size_t top, std::size_t bottom) {
    double acc = 1.0;
    for (std::size_t i = 1; i <= bottom; ++i)
        acc *= static_cast<double>(top - bottom + i) / static_cast<double>(i);
    return acc;
}

// integer power; std::pow on a complex zero base with exponent 0 is NaN
cplx ipow(cplx base, std::size_t e) {
    cplx acc = 1.0;
    for (std::size_t i = 0; i < e; ++i) acc *= base;
    return acc;
}

}  // namespace

LaurentSeries expand_in_annulus(const SingularitySet& ss, double s, double r, std::size_t k_neg,
                                std::size_t k_pos) {
    if (!(s >= 0.0) || !(r > s)) throw Error("expand_in_annulus: need 0 <= s < r");
    std::size_t n = ss.p_inf.rows();
    LaurentSeries series;
    series.center = 0.0;
    series.annulus = {s, r};
    series.neg.assign(k_neg, ComplexMatrix(n, n));
    series.nonneg.assign(k_pos + 1, ComplexMatrix(n, n));

    for (const SingularPoint& pt : ss.points) {
        const double mod = std::abs(pt.z);
        const bool inner = mod <= s + 1e-7;
        const bool outer = mod >= r - 1e-7;
        if (!inner && !outer) {
            std::ostringstream msg;
            msg << "expand_in_annulus: singularity at |z| = " << mod << " lies inside the annulus ("
                << s << ", " << r << ")";
            throw SingularityInAnnulus(msg.str());
        }
        for (std::size_t j = 1; j <= pt.principal.size(); ++j) {
            const ComplexMatrix& coeff = pt.principal[j - 1];
            if (inner) {
                // 1/(z - a)^j = sum_{t >= j} C(t-1, j-1) a^(t-j) z^-t for |z| > |a|
                for (std::size_t t = j; t <= k_neg; ++t)
                    series.neg[t - 1] +=
                        (binomial(t - 1, j - 1) * ipow(pt.z, t - j)) *
                        coeff;
            } else {
                // 1/(z - a)^j = (-1)^j sum_m C(m+j-1, j-1) z^m / a^(m+j) for |z| < |a|
                const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                for (std::size_t m = 0; m <= k_pos; ++m)
                    series.nonneg[m] +=
                        (sign * binomial(m + j - 1, j - 1) / ipow(pt.z, m + j)) * coeff;
            }
        }
    }
    for (std::size_t t = 0; t < ss.entire_part.size() && t <= k_pos; ++t)
        series.nonneg[t] += ss.entire_part[t];
    return series;
}

JordanChain jordan_chain(const PoleSolution& ps, const LinearPencil& pencil,
                         const ComplexMatrix& phi) {
    if (ps.order < 1) throw Error("jordan_chain: need a pole of order >= 1");
    const LinearPencil local = shifted(pencil, ps.center);
    const std::size_t n = local.dim();
    if (phi.rows() != n || phi.cols() != 1) throw Error("jordan_chain: seed must be an n-vector");
    const ComplexMatrix& r_m1 = ps.r(-1);
    const ComplexMatrix step = r_m1 * local.a0;

    const double phi_norm = phi.frobenius_norm();
    std::vector<ComplexMatrix> powers;  // (R_-1 A0)^t R_-1 phi, t = 0, 1, ...
    powers.push_back(r_m1 * phi);
    if (powers[0].frobenius_norm() <= 1e-12 * phi_norm) {
        throw DegenerateSeed("jordan_chain: R_-1 phi vanishes for this seed");
    }
    std::size_t q = 1;
    for (int t = 1; t < ps.order; ++t) {
        powers.push_back(step * powers.back());
        if (powers.back().frobenius_norm() > 1e-12 * phi_norm) q = static_cast<std::size_t>(t) + 1;
    }

    JordanChain chain;
    chain.seed = phi;
    chain.vectors.reserve(q);
    for (std::size_t j = 0; j < q; ++j) {
        const double sign = ((q - j - 1) % 2 == 0) ? 1.0 : -1.0;
        chain.vectors.push_back(sign * powers[q - 1 - j]);
    }
    // chain identities: A0 x_0 = 0, A1 x_{j-1} + A0 x_j = 0
    const double tol = residual_tolerance(local) *
                       std::max(1.0, r_m1.frobenius_norm()) * std::max(1.0, phi_norm);
    if ((local.a0 * chain.vectors.front()).frobenius_norm() > tol) {
        throw Error("jordan_chain: A0 x_0 != 0; coefficients inconsistent");
    }
    for (std::size_t j = 1; j < q; ++j) {
        if ((local.a1 * chain.vectors[j - 1] + local.a0 * chain.vectors[j]).frobenius_norm() >
            tol) {
            throw Error("jordan_chain: chain link identity violated");
        }
    }
    return chain;
}

JordanChain jordan_chain_search(const PoleSolution& ps, const LinearPencil& pencil) {
    const std::size_t n = pencil.dim();
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix e(n, 1);
        e(i, 0) = 1.0;
        try {
            JordanChain chain = jordan_chain(ps, pencil, e);
            if (chain.length() == static_cast<std::size_t>(ps.order)) return chain;
        } catch (const DegenerateSeed&) {
            continue;
        }
    }
    throw DegenerateSeed("jordan_chain_search: no canonical seed reaches the full pole order");
}

ComplexMatrix weighted_shift(double delta, std::size_t dim) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error("weighted_shift: delta must be in (0, 1)");
    if (dim < 2) throw Error("weighted_shift: dim must be >= 2");
    ComplexMatrix w(dim, dim);
    for (std::size_t i = 0; i + 1 < dim; ++i)
        w(i, i + 1) = std::pow(delta, std::pow(2.0, static_cast<double>(i)));
    return w;
}

}  // namespace pencilkit
