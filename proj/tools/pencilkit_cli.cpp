#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pencilkit/io.hpp"
#include "pencilkit/laurent.hpp"

namespace pk = pencilkit;
using pk::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCompute = 3;
constexpr int kExitVerify = 4;

pk::cplx parse_complex(const std::string& text) {
    std::size_t used = 0;
    const double re = std::stod(text, &used);
    if (used == text.size()) return {re, 0.0};
    if (text[used] != ',') throw pk::ParseError("expected 're' or 're,im': " + text);
    const double im = std::stod(text.substr(used + 1));
    return {re, im};
}

std::pair<double, double> parse_annulus(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw pk::ParseError("expected 's:r': " + text);
    const double s = std::stod(text.substr(0, colon));
    const std::string rtext = text.substr(colon + 1);
    const double r = (rtext == "inf") ? std::numeric_limits<double>::infinity()
                                      : std::stod(rtext);
    return {s, r};
}

double resolve_tol(double flag_tol) {
    if (flag_tol > 0.0) return flag_tol;
    if (const char* env = std::getenv("PENCILKIT_TOL")) {
        const double v = std::atof(env);
        if (v > 0.0) return v;
    }
    return 1e-10;
}

struct Report {
    json inputs = json::object();
    json outputs = json::object();
    json residuals = json::object();
    json tolerances = json::object();
    bool pass = true;

    void check(const std::string& name, double residual, double tol) {
        residuals[name] = residual;
        tolerances[name] = tol;
        if (!(residual < tol)) pass = false;
    }

    json finish(const std::string& command) const {
        return json{{"command", command},
                    {"inputs", inputs},
                    {"outputs", outputs},
                    {"verification",
                     json{{"residuals", residuals}, {"tolerances", tolerances}, {"pass", pass}}}};
    }
};

struct Options {
    std::string pencil_path, poly_path, solution_path, csv_path, out_path;
    std::string center_text = "0", annulus_text;
    int max_order = -1;
    int terms = 6;
    double rho = 0.5;
    long coeff_index = -1;
    std::size_t nodes = 0;
    std::size_t chain_r = 0;
    double epsilon = 1.0;
    double tol = 0.0;
    bool quiet = false;
};

void print_matrix(std::ostream& os, const pk::ComplexMatrix& m) {
    os << std::setprecision(12);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const pk::cplx v = m(i, j);
            if (j) os << ", ";
            os << v.real();
            if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
        }
        os << "]\n";
    }
}

// Residuals of the fundamental equations over the coefficient window of
// a pole solution, with coefficients below the window taken as zero.
void pole_residuals(Report& rep, const pk::PoleSolution& ps, const pk::LinearPencil& pencil,
                    double tol) {
    const pk::LinearPencil local = pk::shifted(pencil, ps.center);
    const std::size_t n = local.dim();
    const pk::ComplexMatrix eye = pk::ComplexMatrix::identity(n);
    double worst_left = 0.0, worst_right = 0.0;
    for (long j = -ps.order; j <= 0; ++j) {
        const pk::ComplexMatrix rj = ps.r(j);
        const pk::ComplexMatrix rjm1 =
            (j - 1 >= -ps.order) ? ps.r(j - 1) : pk::ComplexMatrix(n, n);
        pk::ComplexMatrix left = rjm1 * local.a1 + rj * local.a0;
        pk::ComplexMatrix right = local.a1 * rjm1 + local.a0 * rj;
        if (j == 0) {
            left -= eye;
            right -= eye;
        }
        worst_left = std::max(worst_left, left.frobenius_norm());
        worst_right = std::max(worst_right, right.frobenius_norm());
    }
    const double scaled = pk::residual_tolerance(pencil, tol);
    rep.check("fundamental_left", worst_left, scaled);
    rep.check("fundamental_right", worst_right, scaled);
}

int run_solve(const Options& opt) {
    Report rep;
    const pk::LinearPencil pencil = pk::pencil_from_json(pk::load_json_file(opt.pencil_path));
    const pk::cplx center = parse_complex(opt.center_text);
    const double tol = resolve_tol(opt.tol);
    rep.inputs = {{"pencil", opt.pencil_path},
                  {"center", pk::to_json(center)},
                  {"max_order", opt.max_order},
                  {"tol_base", tol}};
    const pk::PoleSolution ps = pk::solve_determining(pencil, center, opt.max_order, 0, tol);
    rep.check("determining", ps.diagnostics.residual, pk::residual_tolerance(pencil, tol));
    pole_residuals(rep, ps, pencil, tol);
    rep.outputs["order"] = ps.order;
    json norms = json::array();
    for (const pk::ComplexMatrix& c : ps.coeffs) norms.push_back(c.frobenius_norm());
    rep.outputs["coeff_norms"] = norms;
    if (!opt.out_path.empty()) pk::save_json_file(opt.out_path, pk::to_json(ps));
    if (!opt.quiet) {
        std::cout << "pole order: " << ps.order << "\n";
        for (long j = -ps.order; j <= 0; ++j) {
            std::cout << "||R_" << j << "||_F = " << ps.r(j).frobenius_norm() << "\n";
        }
    }
    std::cout << rep.finish("solve").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

int run_spectrum(const Options& opt) {
    Report rep;
    const pk::LinearPencil pencil = pk::pencil_from_json(pk::load_json_file(opt.pencil_path));
    const double tol = resolve_tol(opt.tol);
    rep.inputs = {{"pencil", opt.pencil_path}, {"tol_base", tol}};
    const pk::SingularitySet ss = pk::global_decomposition(pencil, tol);
    rep.check("annihilation", ss.max_annihilation_residual,
              pk::residual_tolerance(pencil, tol) * 10.0);
    json table = json::array();
    for (const pk::SingularPoint& pt : ss.points) {
        table.push_back(json{{"z", pk::to_json(pt.z)},
                             {"order", pt.order},
                             {"residue_norm", pt.residue().frobenius_norm()}});
    }
    rep.outputs["singularities"] = table;
    rep.outputs["entire_degree"] =
        ss.entire_part.empty() ? -1 : static_cast<int>(ss.entire_part.size()) - 1;
    if (!opt.out_path.empty()) pk::save_json_file(opt.out_path, pk::to_json(ss));
    if (!opt.quiet) {
        std::cout << "z          order  ||residue||\n";
        for (const pk::SingularPoint& pt : ss.points) {
            std::cout << "(" << pt.z.real() << ", " << pt.z.imag() << ")  " << pt.order << "  "
                      << pt.residue().frobenius_norm() << "\n";
        }
        std::cout << "max annihilation residual: " << ss.max_annihilation_residual << "\n";
    }
    std::cout << rep.finish("spectrum").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

int run_expand(const Options& opt) {
    Report rep;
    const pk::LinearPencil pencil = pk::pencil_from_json(pk::load_json_file(opt.pencil_path));
    const double tol = resolve_tol(opt.tol);
    const auto [s, r] = parse_annulus(opt.annulus_text);
    const std::size_t terms = static_cast<std::size_t>(std::max(opt.terms, 1));
    rep.inputs = {{"pencil", opt.pencil_path},
                  {"annulus", json{{"s", s}, {"r", std::isfinite(r) ? json(r) : json("inf")}}},
                  {"terms", terms},
                  {"tol_base", tol}};
    const pk::SingularitySet ss = pk::global_decomposition(pencil, tol);
    const pk::LaurentSeries series = pk::expand_in_annulus(ss, s, r, terms, terms);
    // skip the window edges: coefficients just outside are unavailable
    const auto res = pk::fundamental_residuals(series, pencil,
                                               -static_cast<long>(series.neg.size()) + 1,
                                               static_cast<long>(series.nonneg.size()) - 1);
    double worst_left = 0.0, worst_right = 0.0;
    for (const auto& [l, rr] : res) {
        worst_left = std::max(worst_left, l);
        worst_right = std::max(worst_right, rr);
    }
    const double scaled = pk::residual_tolerance(pencil, tol);
    rep.check("fundamental_left", worst_left, scaled);
    rep.check("fundamental_right", worst_right, scaled);
    rep.outputs["neg_norms"] = json::array();
    for (const pk::ComplexMatrix& c : series.neg) rep.outputs["neg_norms"].push_back(c.frobenius_norm());
    rep.outputs["nonneg_norms"] = json::array();
    for (const pk::ComplexMatrix& c : series.nonneg)
        rep.outputs["nonneg_norms"].push_back(c.frobenius_norm());
    if (!opt.out_path.empty()) pk::save_json_file(opt.out_path, pk::to_json(series));
    if (!opt.quiet) {
        std::cout << "R_-1 on (" << s << ", " << r << "):\n";
        print_matrix(std::cout, series.coeff(-1));
        std::cout << "R_0:\n";
        print_matrix(std::cout, series.coeff(0));
    }
    std::cout << rep.finish("expand").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

int run_verify(const Options& opt) {
    Report rep;
    const pk::LinearPencil pencil = pk::pencil_from_json(pk::load_json_file(opt.pencil_path));
    const pk::PoleSolution ps = pk::pole_solution_from_json(pk::load_json_file(opt.solution_path));
    const double tol = resolve_tol(opt.tol);
    rep.inputs = {{"pencil", opt.pencil_path},
                  {"solution", opt.solution_path},
                  {"terms", opt.terms},
                  {"tol_base", tol}};
    pole_residuals(rep, ps, pencil, tol);
    if (ps.order >= 1) {
        // extend the window through the recurrences and re-check
        const pk::BasicSolution bs = pk::basic_solution(ps, pencil, std::nullopt, tol);
        const std::size_t terms = static_cast<std::size_t>(std::max(opt.terms, 1));
        const pk::LaurentSeries series = pk::coefficients_from_basic(bs, terms, terms);
        double worst = 0.0;
        for (const auto& [l, r] :
             pk::fundamental_residuals(series, pencil, -static_cast<long>(terms) + 1,
                                       static_cast<long>(terms))) {
            worst = std::max(worst, std::max(l, r));
        }
        rep.check("window_extension", worst, pk::residual_tolerance(pencil, tol));
    }
    rep.outputs["order"] = ps.order;
    if (!opt.quiet) {
        std::cout << (rep.pass ? "solution verifies" : "solution FAILS verification") << "\n";
    }
    std::cout << rep.finish("verify").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

int run_markov(const Options& opt) {
    Report rep;
    const double tol = resolve_tol(opt.tol);
    pk::StochasticMatrix chain = opt.csv_path.empty() ? pk::staircase_chain(opt.chain_r)
                                                      : pk::chain_from_csv(opt.csv_path);
    rep.inputs = {{"source", opt.csv_path.empty() ? "staircase" : opt.csv_path},
                  {"states", chain.states()},
                  {"epsilon", opt.epsilon},
                  {"tol_base", tol}};
    const pk::ComplexMatrix inv = pk::fundamental_inverse(chain, opt.epsilon);
    const pk::PerturbedChainPencil pc = pk::perturbed_pencil(chain);
    const pk::ComplexMatrix eye = pk::ComplexMatrix::identity(chain.states());
    const double residual =
        (pk::evaluate(pc.pencil, opt.epsilon) * inv - eye).frobenius_norm();
    rep.check("inverse", residual, pk::residual_tolerance(pc.pencil, tol) * 10.0);
    rep.outputs["inverse"] = pk::to_json(inv);
    if (!opt.out_path.empty()) pk::save_json_file(opt.out_path, pk::to_json(inv));
    if (!opt.quiet) {
        std::cout << "[I - T_eps + T_eps_inf]^-1 at eps = " << opt.epsilon << ":\n";
        print_matrix(std::cout, inv);
    }
    std::cout << rep.finish("markov").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

int run_poly(const Options& opt) {
    Report rep;
    const pk::PolynomialPencil pp = pk::poly_from_json(pk::load_json_file(opt.poly_path));
    const pk::cplx center = parse_complex(opt.center_text);
    const double tol = resolve_tol(opt.tol);
    rep.inputs = {{"poly", opt.poly_path}, {"center", pk::to_json(center)}, {"tol_base", tol}};
    const std::vector<pk::ComplexMatrix> basic = pk::poly_basic_solution(pp, center, tol);
    const long n = static_cast<long>(pp.degree());
    pk::LaurentSeries series;
    series.center = center;
    for (long j = -1; j >= -n; --j) series.neg.push_back(basic[static_cast<std::size_t>(j + n)]);
    for (long j = 0; j <= n - 1; ++j) series.nonneg.push_back(basic[static_cast<std::size_t>(j + n)]);
    double worst = 0.0;
    for (const auto& [l, r] : pk::poly_fundamental_residuals(series, pp, 0, n - 1)) {
        worst = std::max(worst, std::max(l, r));
    }
    double scale = 0.0;
    for (const pk::ComplexMatrix& c : pp.coeffs) scale += c.frobenius_norm();
    rep.check("fundamental", worst, tol * std::max(1.0, scale));
    json norms = json::array();
    for (const pk::ComplexMatrix& c : basic) norms.push_back(c.frobenius_norm());
    rep.outputs["basic_norms"] = norms;
    if (!opt.out_path.empty()) pk::save_json_file(opt.out_path, pk::to_json(series));
    if (!opt.quiet) {
        std::cout << "basic solution R_" << -n << " .. R_" << n - 1 << ", norms:";
        for (const pk::ComplexMatrix& c : basic) std::cout << " " << c.frobenius_norm();
        std::cout << "\n";
    }
    std::cout << rep.finish("poly").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

int run_oracle(const Options& opt) {
    Report rep;
    const pk::LinearPencil pencil = pk::pencil_from_json(pk::load_json_file(opt.pencil_path));
    const pk::cplx center = parse_complex(opt.center_text);
    rep.inputs = {{"pencil", opt.pencil_path},
                  {"center", pk::to_json(center)},
                  {"rho", opt.rho},
                  {"j", opt.coeff_index},
                  {"nodes", opt.nodes}};
    const pk::ComplexMatrix coeff =
        pk::contour_coefficient_oracle(pencil, center, opt.rho, opt.coeff_index, opt.nodes);
    // refinement gap: the same integral at twice the node count
    const std::size_t fine = (opt.nodes == 0) ? 8192 : 2 * opt.nodes;
    const pk::ComplexMatrix refined =
        pk::contour_coefficient_oracle(pencil, center, opt.rho, opt.coeff_index, fine);
    rep.check("refinement_gap", pk::max_abs_diff(coeff, refined), 1e-8);
    rep.outputs["coefficient"] = pk::to_json(coeff);
    if (!opt.out_path.empty()) pk::save_json_file(opt.out_path, pk::to_json(coeff));
    if (!opt.quiet) {
        std::cout << "R_" << opt.coeff_index << " by contour quadrature:\n";
        print_matrix(std::cout, coeff);
    }
    std::cout << rep.finish("oracle").dump(2) << "\n";
    return rep.pass ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pencilkit: Laurent-series resolvents of matrix pencils"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "write the primary artifact as JSON");
        cmd->add_option("--tol", opt.tol, "residual tolerance base (default 1e-10)");
        cmd->add_flag("--quiet", opt.quiet, "suppress the human-readable table");
    };

    CLI::App* solve = app.add_subcommand("solve", "pole order and Laurent coefficients at a point");
    solve->add_option("--pencil", opt.pencil_path, "pencil JSON file")->required();
    solve->add_option("--center", opt.center_text, "expansion point re[,im]");
    solve->add_option("--max-order", opt.max_order, "largest pole order to probe");
    add_common(solve);

    CLI::App* spectrum = app.add_subcommand("spectrum", "all singularities and residues");
    spectrum->add_option("--pencil", opt.pencil_path, "pencil JSON file")->required();
    add_common(spectrum);

    CLI::App* expand = app.add_subcommand("expand", "Laurent window on an annulus about 0");
    expand->add_option("--pencil", opt.pencil_path, "pencil JSON file")->required();
    expand->add_option("--annulus", opt.annulus_text, "s:r with r possibly inf")->required();
    expand->add_option("--terms", opt.terms, "coefficients per side");
    add_common(expand);

    CLI::App* verify = app.add_subcommand("verify", "re-check a stored pole solution");
    verify->add_option("--solution", opt.solution_path, "pole solution JSON file")->required();
    verify->add_option("--pencil", opt.pencil_path, "pencil JSON file")->required();
    verify->add_option("--terms", opt.terms, "window half-width for the extension check");
    add_common(verify);

    CLI::App* markov = app.add_subcommand("markov", "perturbed-chain fundamental inverse");
    markov->add_option("--r", opt.chain_r, "staircase size");
    markov->add_option("--csv", opt.csv_path, "row-stochastic matrix CSV");
    markov->add_option("--epsilon", opt.epsilon, "perturbation in (0, 1]");
    add_common(markov);

    CLI::App* poly = app.add_subcommand("poly", "polynomial pencil basic solution");
    poly->add_option("--poly", opt.poly_path, "polynomial pencil JSON file")->required();
    poly->add_option("--center", opt.center_text, "expansion point re[,im]");
    add_common(poly);

    CLI::App* oracle = app.add_subcommand("oracle", "contour-integral Laurent coefficient");
    oracle->add_option("--pencil", opt.pencil_path, "pencil JSON file")->required();
    oracle->add_option("--center", opt.center_text, "expansion point re[,im]");
    oracle->add_option("--rho", opt.rho, "contour radius")->required();
    oracle->add_option("--j", opt.coeff_index, "coefficient index")->required();
    oracle->add_option("--nodes", opt.nodes, "quadrature nodes (0 = adaptive)");
    add_common(oracle);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(opt);
        if (spectrum->parsed()) return run_spectrum(opt);
        if (expand->parsed()) return run_expand(opt);
        if (verify->parsed()) return run_verify(opt);
        if (markov->parsed()) {
            if (opt.csv_path.empty() && opt.chain_r == 0) {
                throw pk::ParseError("markov: need --r or --csv");
            }
            return run_markov(opt);
        }
        if (poly->parsed()) return run_poly(opt);
        if (oracle->parsed()) return run_oracle(opt);
    } catch (const pk::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const pk::Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitParse;
}
