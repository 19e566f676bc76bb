#include "pencilkit/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace pencilkit {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return cplx(j[0].get<double>(), j[1].get<double>());
    }
    throw ParseError("expected a number or an [re, im] pair");
}

json to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) data.push_back(to_json(m(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    try {
        const std::size_t rows = j.at("rows").get<std::size_t>();
        const std::size_t cols = j.at("cols").get<std::size_t>();
        const json& data = j.at("data");
        if (!data.is_array() || data.size() != rows * cols) {
            throw ParseError("matrix data length does not match rows*cols");
        }
        ComplexMatrix m(rows, cols);
        std::size_t k = 0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t c = 0; c < cols; ++c) m(i, c) = cplx_from_json(data[k++]);
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed matrix JSON: ") + e.what());
    }
}

json to_json(const LinearPencil& p) {
    return json{{"a0", to_json(p.a0)}, {"a1", to_json(p.a1)}};
}

LinearPencil pencil_from_json(const json& j) {
    try {
        return LinearPencil(matrix_from_json(j.at("a0")), matrix_from_json(j.at("a1")));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed pencil JSON: ") + e.what());
    }
}

json to_json(const PolynomialPencil& p) {
    json coeffs = json::array();
    for (const ComplexMatrix& c : p.coeffs) coeffs.push_back(to_json(c));
    return json{{"coeffs", std::move(coeffs)}};
}

PolynomialPencil poly_from_json(const json& j) {
    try {
        const json& arr = j.at("coeffs");
        if (!arr.is_array() || arr.size() < 2) {
            throw ParseError("polynomial pencil needs at least two coefficients");
        }
        std::vector<ComplexMatrix> coeffs;
        coeffs.reserve(arr.size());
        for (const json& c : arr) coeffs.push_back(matrix_from_json(c));
        return PolynomialPencil(std::move(coeffs));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed polynomial pencil JSON: ") + e.what());
    }
}

json to_json(const PoleSolution& ps) {
    json coeffs = json::array();
    for (const ComplexMatrix& c : ps.coeffs) coeffs.push_back(to_json(c));
    return json{{"center", to_json(ps.center)},
                {"order", ps.order},
                {"coeffs", std::move(coeffs)},
                {"diagnostics",
                 json{{"pivot_count", ps.diagnostics.pivot_count},
                      {"truncation_depth", ps.diagnostics.truncation_depth},
                      {"residual", ps.diagnostics.residual}}}};
}

PoleSolution pole_solution_from_json(const json& j) {
    try {
        PoleSolution ps;
        ps.center = cplx_from_json(j.at("center"));
        ps.order = j.at("order").get<int>();
        for (const json& c : j.at("coeffs")) ps.coeffs.push_back(matrix_from_json(c));
        if (ps.order < 0 || ps.coeffs.size() != static_cast<std::size_t>(ps.order) + 1) {
            throw ParseError("pole solution coefficient count does not match order + 1");
        }
        if (j.contains("diagnostics")) {
            const json& d = j.at("diagnostics");
            ps.diagnostics.pivot_count = d.value("pivot_count", 0);
            ps.diagnostics.truncation_depth = d.value("truncation_depth", 0);
            ps.diagnostics.residual = d.value("residual", 0.0);
        }
        return ps;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed pole solution JSON: ") + e.what());
    }
}

json to_json(const LaurentSeries& s) {
    json neg = json::array(), nonneg = json::array();
    for (const ComplexMatrix& c : s.neg) neg.push_back(to_json(c));
    for (const ComplexMatrix& c : s.nonneg) nonneg.push_back(to_json(c));
    json annulus{{"s", s.annulus.inner}};
    if (std::isfinite(s.annulus.outer)) {
        annulus["r"] = s.annulus.outer;
    } else {
        annulus["r"] = "inf";
    }
    return json{{"center", to_json(s.center)},
                {"annulus", std::move(annulus)},
                {"neg", std::move(neg)},
                {"nonneg", std::move(nonneg)}};
}

LaurentSeries series_from_json(const json& j) {
    try {
        LaurentSeries s;
        s.center = cplx_from_json(j.at("center"));
        const json& ann = j.at("annulus");
        s.annulus.inner = ann.at("s").get<double>();
        const json& r = ann.at("r");
        s.annulus.outer = r.is_string() ? std::numeric_limits<double>::infinity()
                                        : r.get<double>();
        for (const json& c : j.at("neg")) s.neg.push_back(matrix_from_json(c));
        for (const json& c : j.at("nonneg")) s.nonneg.push_back(matrix_from_json(c));
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed series JSON: ") + e.what());
    }
}

json to_json(const SingularitySet& ss) {
    json points = json::array();
    for (const SingularPoint& pt : ss.points) {
        json principal = json::array();
        for (const ComplexMatrix& c : pt.principal) principal.push_back(to_json(c));
        points.push_back(json{{"z", to_json(pt.z)},
                              {"order", pt.order},
                              {"principal", std::move(principal)},
                              {"p", to_json(pt.p)},
                              {"q", to_json(pt.q)}});
    }
    json entire = json::array();
    for (const ComplexMatrix& c : ss.entire_part) entire.push_back(to_json(c));
    return json{{"points", std::move(points)},
                {"p_inf", to_json(ss.p_inf)},
                {"q_inf", to_json(ss.q_inf)},
                {"entire_part", std::move(entire)},
                {"max_annihilation_residual", ss.max_annihilation_residual}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

StochasticMatrix chain_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
                    throw std::invalid_argument(cell);
                }
                row.push_back(v);
            } catch (const std::exception&) {
                std::ostringstream msg;
                msg << path << ": row " << lineno << ": cannot parse entry '" << cell << "'";
                throw ParseError(msg.str());
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            std::ostringstream msg;
            msg << path << ": row " << lineno << " has " << row.size()
                << " entries, expected " << rows.front().size();
            throw ParseError(msg.str());
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.size() != rows.front().size()) {
        throw ParseError(path + ": chain matrix must be square and nonempty");
    }
    ComplexMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return StochasticMatrix(std::move(m));
}

}  // namespace pencilkit
