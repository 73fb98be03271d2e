// pellab: command-line front end. Each command reads one JSON document and
// writes one JSON document.
//
// Exit codes: 0 success, 1 not realizable, 2 inconclusive (bound hit),
// 3 malformed input or failed precondition.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pellab/json_io.hpp"
#include "pellab/pellab.hpp"

using namespace pellab;
using pellab::io::json;
using pellab::io::to_json;

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string period;
  std::string points;
  double tol = 1e-10;
  int max_steps = 64;
  int max_power = 16;
  int grid = 512;
  int blocks = 3;
  int n_moments = -1;
};

json read_document(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw io::InputError(ErrorKind::InvalidInput, "cannot open " + path, "/");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io::InputError(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what(), "/");
  }
}

/// ε_j(Q̂_{j+1}P̂_j − Q̂_jP̂_{j+1}) = β_0⋯β_{j−1} for every j.
bool wronskian_holds(const std::vector<PStep>& steps) {
  RecurrencePair rp = recurrence(steps);
  Rat prod(1);
  for (std::size_t j = 0; j < steps.size(); ++j) {
    Poly w = (rp.Qhat[j + 1] * rp.Phat[j] - rp.Qhat[j] * rp.Phat[j + 1]) * Rat(steps[j].epsilon);
    if (w != Poly::constant(prod)) return false;
    prod *= steps[j].beta;
  }
  return true;
}

bool det_scale_holds(const ScaledMatrixPoly& t) { return det(t.M) == Poly::constant(t.D); }

int cmd_expand(const Options& o, json& out) {
  json in = read_document(o.input);
  Tail tail = io::tail_from_json(in);
  PFraction pf = expand(tail, o.max_steps);
  out = to_json(pf);
  out["input"] = in;
  bool valid = true;
  for (const auto& s : pf.steps) valid = valid && s.p.is_monic() && sgn(s.beta) > 0;
  out["checks"] = json{{"steps_normalized", valid}};
  return 0;
}

int cmd_series(const Options& o, json& out) {
  json in = read_document(o.input);
  std::vector<PStep> steps = io::steps_from_json(io::field(in, "steps", ""), "/steps");
  int n = o.n_moments;
  if (in.contains("n_moments")) {
    if (!in["n_moments"].is_number_integer() || in["n_moments"].get<int>() < 0)
      throw io::InputError(ErrorKind::InvalidInput, "n_moments must be a nonnegative integer", "/n_moments");
    n = in["n_moments"].get<int>();
  }
  if (n < 0) throw io::InputError(ErrorKind::InvalidInput, "missing n_moments", "/n_moments");
  const bool periodic = in.value("periodic", true);
  std::vector<Rat> s = to_series(steps, n, periodic);
  json moments = json::array();
  for (const auto& m : s) moments.push_back(to_json(m));
  out = json{{"moments", moments}};
  out["input"] = json{{"steps", to_json(steps)}, {"n_moments", n}, {"periodic", periodic}};
  // Re-expanding the series recovers as many leading steps as it pins down.
  std::size_t recovered = 0;
  try {
    PFraction pf = expand(SeriesTail{SeriesAtInfinity::from_moments(s)}, static_cast<int>(steps.size()));
    while (recovered < pf.steps.size() && recovered < steps.size()) {
      const PStep& a = pf.steps[recovered];
      const PStep& b = steps[recovered];
      const bool last_of_finite = !periodic && recovered + 1 == steps.size();
      if (a.p != b.p || a.epsilon != b.epsilon || (!last_of_finite && a.beta != b.beta)) break;
      ++recovered;
    }
  } catch (const Error&) {
  }
  out["checks"] = json{{"recovered_steps", recovered}};
  return 0;
}

int cmd_monodromy(const Options& o, json& out) {
  json in = read_document(o.period.empty() ? o.input : o.period);
  PeriodData p = io::period_from_json(in);
  ScaledMatrixPoly t = monodromy(p);
  out = to_json(t);
  out["input"] = to_json(p);
  out["checks"] = json{{"det_scale", det_scale_holds(t)},
                       {"wronskian", wronskian_holds(p.blocks)},
                       {"recurrence_agrees", monodromy_from_recurrence(p) == t}};
  return 0;
}

int cmd_reconstruct(const Options& o, json& out) {
  json in = read_document(o.input);
  ScaledMatrixPoly t = io::monodromy_from_json(in);
  PeriodData p = reconstruct(t);
  out = to_json(p);
  out["input"] = to_json(t);
  out["checks"] = json{{"det_scale", det_scale_holds(t)}, {"round_trip", monodromy(p) == t}};
  return 0;
}

int cmd_admissible(const Options& o, json& out) {
  json in = read_document(o.input);
  ScaledMatrixPoly t = io::monodromy_from_json(in);
  out = to_json(check_admissible(t));
  out["input"] = to_json(t);
  out["checks"] = json{{"det_scale", det_scale_holds(t)}};
  return 0;
}

int cmd_spectrum(const Options& o, json& out) {
  json in = read_document(o.period.empty() ? o.input : o.period);
  PeriodData p = io::period_from_json(in);
  Spectrum sp = bands(p, o.grid, o.tol);
  ScaledMatrixPoly t = monodromy(p);
  const Poly tr = t.t(0, 0) + t.t(1, 1);
  const Poly disc = tr * tr - Poly::constant(4 * t.D);
  double worst = 0;
  for (auto z : sp.band_endpoints) {
    const double scale = std::max(1.0, std::pow(std::abs(z), disc.degree()));
    worst = std::max(worst, std::abs(disc.eval(z)) / scale);
  }
  out = to_json(sp);
  out["input"] = to_json(p);
  out["checks"] = json{{"endpoint_residual", worst}, {"endpoint_residual_ok", worst <= 1e-8}};
  return 0;
}

int cmd_mfunc(const Options& o, json& out) {
  json in = read_document(o.period.empty() ? o.input : o.period);
  PeriodData p = io::period_from_json(in);
  json pts_doc = o.points.empty() ? io::field(in, "points", "") : read_document(o.points);
  const json& pts = pts_doc.is_object() ? io::field(pts_doc, "points", "") : pts_doc;
  if (!pts.is_array()) throw io::InputError(ErrorKind::InvalidInput, "expected an array of points", "/points");
  ScaledMatrixPoly t = monodromy(p);
  json values = json::array();
  bool residuals_ok = true;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    cplx lambda = io::complex_from_json(pts[k], "/points/" + std::to_string(k));
    json v{{"lambda", to_json(lambda)}};
    try {
      MValue mv = m_eval_detail(t, lambda, o.tol);
      v["m"] = to_json(mv.m);
      v["multiplier"] = to_json(mv.multiplier);
      v["residual"] = mv.residual;
      v["linear"] = mv.linear;
      residuals_ok = residuals_ok && mv.residual <= 1e-10;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OnSpectrum) throw;
      v["error"] = json{{"kind", std::string(e.kind_name())}, {"message", e.what()}};
    }
    values.push_back(v);
  }
  out = json{{"values", values}};
  out["input"] = json{{"period", to_json(p)}, {"points", pts}};
  out["checks"] = json{{"residuals", residuals_ok}};
  return 0;
}

int cmd_pell(const Options& o, json& out) {
  json in = read_document(o.input);
  Poly R = io::poly_from_json(io::field(in, "R", ""), "/R");
  auto sol = pell_fundamental(R, o.max_steps);
  out = json{{"input", json{{"R", to_json(R)}}}, {"found", sol.has_value()}};
  if (!sol) {
    out["X"] = nullptr;
    out["Y"] = nullptr;
    out["checks"] = json::object();
    return 2;
  }
  out["X"] = to_json(sol->X);
  out["Y"] = to_json(sol->Y);
  out["checks"] = json{{"pell_identity", sol->X * sol->X - R * sol->Y * sol->Y == Poly::constant(1)}};
  return 0;
}

int cmd_realize(const Options& o, json& out) {
  json in = read_document(o.input);
  AlgebraicForm f = io::form_from_json(in);
  RealizeOptions ro;
  ro.max_cf_steps = o.max_steps;
  ro.max_power = o.max_power;
  ro.tol = o.tol;
  RealizeReport r = realize(f, ro);
  out = to_json(r);
  out["input"] = to_json(f);
  json checks = json::object();
  if (r.period) {
    checks["det_scale"] = det_scale_holds(*r.T);
    checks["wronskian"] = wronskian_holds(r.period->blocks);
    bool rt = false;
    try {
      rt = reconstruct(*r.T) == *r.period;
    } catch (const Error&) {
    }
    checks["round_trip"] = rt;
    checks["certificate"] = r.certificate && verify_certificate(r.form, *r.certificate);
    checks["m_function"] = r.m_verified;
  }
  out["checks"] = checks;
  switch (r.status) {
    case RealizeStatus::Realized: return 0;
    case RealizeStatus::NotRealizable: return 1;
    case RealizeStatus::Inconclusive: return 2;
  }
  return 2;
}

int cmd_dump(const Options& o, json& out) {
  json in = read_document(o.period.empty() ? o.input : o.period);
  PeriodData p = io::period_from_json(in);
  DenseKreinPair kp = truncate(p, o.blocks);
  RatMatrix gh = kp.G * kp.H;
  out = json{{"H", to_json(kp.H)}, {"G", to_json(kp.G)}, {"blocks", o.blocks}};
  out["input"] = to_json(p);
  out["checks"] = json{{"krein_symmetric", gh.transpose() == gh}};
  return 0;
}

void write_document(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(path);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic generalized Jacobi matrices, P-fractions and Pell–Abel equations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "input JSON document (default stdin)");
    sub->add_option("-o,--output", o.output, "output file (default stdout)");
    sub->add_option("--tol", o.tol, "numeric tolerance");
    sub->add_option("--max-steps", o.max_steps, "step bound for expansions");
    sub->add_option("--max-power", o.max_power, "bound on Pell powers");
    sub->add_option("--grid", o.grid, "theta grid size for arcs");
  };

  using Handler = int (*)(const Options&, json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, h);
    return sub;
  };
  add("expand", "P-fraction expansion of a rational, surd or series tail", cmd_expand);
  add("series", "moments of a P-fraction", cmd_series)->add_option("--moments", o.n_moments, "number of moments");
  add("monodromy", "monodromy matrix of a period", cmd_monodromy)->add_option("--period", o.period, "period file");
  add("reconstruct", "period data from an admissible monodromy", cmd_reconstruct);
  add("admissible", "admissibility report for a matrix polynomial", cmd_admissible);
  add("spectrum", "band endpoints, arcs and eigenvalues", cmd_spectrum)->add_option("--period", o.period, "period file");
  {
    CLI::App* sub = add("mfunc", "m-function at points", cmd_mfunc);
    sub->add_option("--period", o.period, "period file");
    sub->add_option("--points", o.points, "points file");
  }
  add("pell", "fundamental solution of X^2 - R Y^2 = 1", cmd_pell);
  add("realize", "realize (sqrt(R) - U)/V as an m-function", cmd_realize);
  {
    CLI::App* sub = add("dump", "dense truncation (H, G)", cmd_dump);
    sub->add_option("--period", o.period, "period file");
    sub->add_option("--blocks", o.blocks, "number of blocks")->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);

  json out;
  int code = 0;
  try {
    for (auto& [sub, handler] : commands)
      if (sub->parsed()) code = handler(o, out);
  } catch (const io::InputError& e) {
    out = json{{"error", {{"kind", std::string(e.kind_name())}, {"message", e.what()}, {"location", e.location()}}}};
    code = 3;
  } catch (const Error& e) {
    out = json{{"error", {{"kind", std::string(e.kind_name())}, {"message", e.what()}, {"location", "/"}}}};
    code = 3;
  }
  write_document(out, o.output);
  return code;
}
