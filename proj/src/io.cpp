#include "weyl/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace weyl {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const AlgebraElement& x) {
  Json coeffs = Json::array();
  for (const Complex c : x.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"n", x.n()}, {"coeffs", std::move(coeffs)}};
}

AlgebraElement element_from_json(const Json& j) {
  const AlgebraParams params(j.at("n").get<int>());
  const Json& coeffs = j.at("coeffs");
  std::vector<Complex> values;
  values.reserve(coeffs.size());
  for (const auto& c : coeffs) values.push_back(complex_from_json(c));
  return AlgebraElement(params, std::move(values));
}

Json to_json(const StateVector& psi) {
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < psi.amps.size(); ++k) amps.push_back(to_json(psi.amps(k)));
  return Json{{"n", psi.n()}, {"basis", std::string(to_string(psi.basis))}, {"amps", std::move(amps)}};
}

StateVector state_from_json(const Json& j) {
  const AlgebraParams params(j.at("n").get<int>());
  const Json& amps = j.at("amps");
  if (static_cast<int>(amps.size()) != params.n()) {
    throw std::invalid_argument("state JSON: expected " + std::to_string(params.n()) + " amplitudes");
  }
  Vector v(params.n());
  for (int k = 0; k < params.n(); ++k) v(k) = complex_from_json(amps[static_cast<std::size_t>(k)]);
  return {params, std::move(v), basis_from_string(j.at("basis").get<std::string>())};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"n", row.n}, {"expectation", to_json(row.expectation)}, {"error", row.error}});
  }
  return Json{{"rows", std::move(rows)}, {"monotone_flag", r.monotone_flag}};
}

std::string to_csv(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "n,re,im,error\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << format_number(row.expectation.real()) << ','
        << format_number(row.expectation.imag()) << ',' << format_number(row.error) << '\n';
  }
  return out.str();
}

Json to_json(const LocalityReport& r) {
  Json spectrum = Json::array();
  for (const Complex z : r.spectrum) spectrum.push_back(to_json(z));
  return Json{{"band_energy", r.band_energy},
              {"delocalization_index", r.delocalization_index},
              {"spectrum", std::move(spectrum)}};
}

std::string trajectory_to_csv(const Trajectory& t) {
  std::ostringstream out;
  out << "step,site,re,im\n";
  for (const auto& s : t.samples) {
    for (Eigen::Index j = 0; j < s.values.size(); ++j) {
      out << s.step << ',' << j << ',' << format_number(s.values(j).real()) << ','
          << format_number(s.values(j).imag()) << '\n';
    }
  }
  return out.str();
}

}  // namespace weyl
