#pragma once

// JSON encodings of the library types.
//
// Rationals are strings "[-]n[/d]" in lowest terms; polynomials are arrays of
// rational strings in ascending degree with no trailing zeros; complex
// numbers are {"re": f, "im": f}. Keys come out sorted, so identical values
// always serialize to identical bytes.

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "pellab/gjm.hpp"
#include "pellab/monodromy.hpp"
#include "pellab/pellabel.hpp"
#include "pellab/spectral.hpp"

namespace pellab::io {

using json = nlohmann::json;

/// Malformed input document; `location` is a JSON pointer into it.
class InputError : public Error {
 public:
  InputError(ErrorKind kind, const std::string& message, std::string location)
      : Error(kind, message), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

[[noreturn]] inline void bad_input(const std::string& where, const std::string& message) {
  throw InputError(ErrorKind::InvalidInput, message, where.empty() ? "/" : where);
}

inline const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad_input(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_input(where, "missing field \"" + key + "\"");
  return *it;
}

// ---- encoding ----

inline json to_json(const Rat& r) { return to_string(r); }

inline json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

inline json to_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const std::vector<std::complex<double>>& zs) {
  json a = json::array();
  for (auto z : zs) a.push_back(to_json(z));
  return a;
}

inline json to_json(const PStep& s) {
  return json{{"p", to_json(s.p)}, {"epsilon", s.epsilon}, {"beta", to_json(s.beta)}};
}

inline json to_json(const std::vector<PStep>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back(to_json(s));
  return a;
}

inline json to_json(const PFraction& pf) {
  json term{{"kind", terminal_name(pf.terminal)}};
  if (pf.terminal == Terminal::Periodic) term["period"] = pf.period;
  if (pf.terminal == Terminal::PrePeriodic) {
    term["pre_start"] = pf.pre_start;
    term["cycle_length"] = pf.cycle_len;
  }
  return json{{"steps", to_json(pf.steps)}, {"terminal", term}};
}

inline json to_json(const PeriodData& p) { return json{{"blocks", to_json(p.blocks)}}; }

inline json to_json(const ScaledMatrixPoly& t) {
  return json{{"M", json::array({json::array({to_json(t.t(0, 0)), to_json(t.t(0, 1))}),
                                 json::array({to_json(t.t(1, 0)), to_json(t.t(1, 1))})})},
              {"D", to_json(t.D)}};
}

inline json to_json(const AdmissibilityReport& r) {
  return json{{"det_one", r.det_one},
              {"j_unitary", r.j_unitary},
              {"degrees_ok", r.degrees_ok},
              {"lead_t22_positive", r.lead_t22_positive},
              {"strict_leading_equality", r.strict_leading_equality},
              {"expandable", r.expandable},
              {"verdict", r.verdict()}};
}

inline json to_json(const Spectrum& sp) {
  json arcs = json::array();
  for (const auto& a : sp.arcs) arcs.push_back(to_json(a));
  return json{{"band_endpoints", to_json(sp.band_endpoints)}, {"arcs", arcs}, {"eigenvalues", to_json(sp.eigenvalues)}};
}

inline json to_json(const AlgebraicForm& f) { return json{{"R", to_json(f.R)}, {"U", to_json(f.U)}, {"V", to_json(f.V)}}; }

inline json to_json(const PellCertificate& c) {
  return json{{"X", to_json(c.X)}, {"Y", to_json(c.Y)}, {"Z", to_json(c.Z)}, {"sqrt_scale", to_json(c.sqrt_scale)}};
}

inline json to_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const RealizeReport& r) {
  json out{{"status", status_name(r.status)}, {"form", to_json(r.form)}, {"cross_check", r.cross_check},
           {"m_verified", r.m_verified}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  out["period"] = r.period ? to_json(*r.period) : json(nullptr);
  out["monodromy"] = r.T ? to_json(*r.T) : json(nullptr);
  out["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
  json a{{"pell_found", r.route_a.pell_found}, {"succeeded", r.route_a.succeeded}};
  if (!r.route_a.note.empty()) a["note"] = r.route_a.note;
  if (r.route_a.succeeded) {
    a["power"] = r.route_a.power;
    a["sign"] = r.route_a.sign;
    a["orientation"] = orientation_name(r.route_a.orientation);
    a["period"] = to_json(*r.route_a.period);
  }
  json b{{"periodic", r.route_b.periodic}, {"structural_failure", r.route_b.structural_failure}, {"note", r.route_b.note}};
  out["route_a"] = a;
  out["route_b"] = b;
  return out;
}

// ---- decoding ----

inline Rat rat_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) bad_input(where, "expected a rational string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const Error& e) {
    bad_input(where, e.what());
  }
}

inline Poly poly_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad_input(where, "expected a polynomial (array of rational strings)");
  std::vector<Rat> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(rat_from_json(j[k], where + "/" + std::to_string(k)));
  return Poly(std::move(c));
}

inline PStep step_from_json(const json& j, const std::string& where) {
  PStep s;
  s.p = poly_from_json(field(j, "p", where), where + "/p");
  const json& e = field(j, "epsilon", where);
  if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1))
    bad_input(where + "/epsilon", "epsilon must be 1 or -1");
  s.epsilon = e.get<int>();
  s.beta = rat_from_json(field(j, "beta", where), where + "/beta");
  try {
    validate(s);
  } catch (const Error& err) {
    throw InputError(err.kind(), err.what(), where);
  }
  return s;
}

inline std::vector<PStep> steps_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad_input(where, "expected a nonempty array of steps");
  std::vector<PStep> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(step_from_json(j[k], where + "/" + std::to_string(k)));
  return out;
}

inline PeriodData period_from_json(const json& j) { return PeriodData{steps_from_json(field(j, "blocks", ""), "/blocks")}; }

inline ScaledMatrixPoly monodromy_from_json(const json& j) {
  const json& m = field(j, "M", "");
  if (!m.is_array() || m.size() != 2) bad_input("/M", "expected a 2x2 array of polynomials");
  ScaledMatrixPoly t;
  for (std::size_t r = 0; r < 2; ++r) {
    const std::string wr = "/M/" + std::to_string(r);
    if (!m[r].is_array() || m[r].size() != 2) bad_input(wr, "expected a row of two polynomials");
    for (std::size_t c = 0; c < 2; ++c) t.M[r][c] = poly_from_json(m[r][c], wr + "/" + std::to_string(c));
  }
  t.D = j.contains("D") ? rat_from_json(j["D"], "/D") : Rat(1);
  if (sgn(t.D) <= 0) bad_input("/D", "scale D must be positive");
  return t;
}

inline AlgebraicForm form_from_json(const json& j) {
  return {poly_from_json(field(j, "R", ""), "/R"), poly_from_json(field(j, "U", ""), "/U"),
          poly_from_json(field(j, "V", ""), "/V")};
}

inline std::complex<double> complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  const json& re = field(j, "re", where);
  const json& im = field(j, "im", where);
  if (!re.is_number() || !im.is_number()) bad_input(where, "re and im must be numbers");
  return {re.get<double>(), im.get<double>()};
}

/// Tail documents: {"num","den"}, {"a","b","d","R"} or {"moments": [...]}.
inline Tail tail_from_json(const json& j) {
  if (!j.is_object()) bad_input("", "expected an object");
  if (j.contains("moments")) {
    const json& m = j["moments"];
    if (!m.is_array()) bad_input("/moments", "expected an array of rationals");
    std::vector<Rat> s;
    for (std::size_t k = 0; k < m.size(); ++k) s.push_back(rat_from_json(m[k], "/moments/" + std::to_string(k)));
    return SeriesTail{SeriesAtInfinity::from_moments(s)};
  }
  if (j.contains("num")) {
    Poly den = poly_from_json(field(j, "den", ""), "/den");
    if (den.is_zero()) throw InputError(ErrorKind::DivisionByZeroPoly, "denominator is zero", "/den");
    return RationalTail{poly_from_json(j["num"], "/num"), den};
  }
  SurdTail t{poly_from_json(field(j, "a", ""), "/a"), poly_from_json(field(j, "b", ""), "/b"),
             poly_from_json(field(j, "d", ""), "/d"), poly_from_json(field(j, "R", ""), "/R")};
  if (t.d.is_zero()) throw InputError(ErrorKind::DivisionByZeroPoly, "denominator is zero", "/d");
  return t;
}

}  // namespace pellab::io
