#pragma once

// JSON and CSV encodings of the library's value types.
//
// Complex numbers are [re, im] pairs in JSON. CSV numbers use 17 significant
// digits in lowercase scientific notation.

#include <string>

#include <nlohmann/json.hpp>

#include "weyl/core.hpp"
#include "weyl/limits.hpp"
#include "weyl/locality.hpp"
#include "weyl/operators.hpp"

namespace weyl {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"n": n, "coeffs": [[re, im], ...]} in row-major (a, b) order.
Json to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const Json& j);

/// {"n": n, "basis": "position"|"momentum", "amps": [[re, im], ...]}
Json to_json(const StateVector& psi);
StateVector state_from_json(const Json& j);

/// Row-major list of rows of [re, im].
Json to_json(const Matrix& m);

/// {"rows": [{"n", "expectation", "error"}...], "monotone_flag"}
Json to_json(const ConvergenceReport& r);
/// Header n,re,im,error then one row per n.
std::string to_csv(const ConvergenceReport& r);

/// {"band_energy", "delocalization_index", "spectrum": [[re, im], ...]}
Json to_json(const LocalityReport& r);

/// Header step,site,re,im then one row per sampled step and site.
std::string trajectory_to_csv(const Trajectory& t);

/// %.16e
std::string format_number(double x);

}  // namespace weyl
