#ifndef PENCILKIT_IO_HPP
#define PENCILKIT_IO_HPP

#include <string>

#include <json.hpp>

#include "pencilkit/markov.hpp"
#include "pencilkit/poly.hpp"
#include "pencilkit/spectral.hpp"

namespace pencilkit {

using json = nlohmann::ordered_json;

// Matrix schema: {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major
// order.  The reader also accepts plain numbers for real entries.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json to_json(const LinearPencil& p);           // {"a0": Matrix, "a1": Matrix}
LinearPencil pencil_from_json(const json& j);

json to_json(const PolynomialPencil& p);       // {"coeffs": [Matrix, ...]}, A0 first
PolynomialPencil poly_from_json(const json& j);

json to_json(const PoleSolution& ps);
PoleSolution pole_solution_from_json(const json& j);

json to_json(const LaurentSeries& s);          // annulus {"s": s, "r": r | "inf"}
LaurentSeries series_from_json(const json& j);

json to_json(const SingularitySet& ss);

json to_json(cplx z);                          // [re, im]
cplx cplx_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

/// Row-stochastic matrix from CSV, one row per line.  Validation
/// failures name the offending row.
StochasticMatrix chain_from_csv(const std::string& path);

}  // namespace pencilkit

#endif
