#include "sharpyoung/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "sharpyoung/error.hpp"
#include "sharpyoung/json_io.hpp"
#include "sharpyoung/pipeline.hpp"
#include "sharpyoung/sampled_triple.hpp"
#include "sharpyoung/symplectic_factor.hpp"
#include "sharpyoung/trilinear.hpp"

namespace sharpyoung::cli {

namespace {

using io::json;

constexpr const char* kSchemas = R"(File schemas (JSON; matrices are arrays of rows, complex numbers [re, im]):
  triple      {"gaussians": [G1, G2, G3]},  G = {"c": [re, im], "Q": [[..]], "a": [..], "b": [..]}
              G(z) = c exp(-(z-a)^T Q (z-a) + i b.z); on the Heisenberg group z = (x, t), t last.
  spec        {"scheme": "hermite"|"trapezoid", "xi_nodes", "multiplier", "oracle_nodes",
               "rel_tol", "max_refinements"}; pipeline specs may add "kappa", "C", "mass_threshold"
              and nest the quadrature fields under "quadrature".
  matrix      [[..]] or {"L": [[..]]}, square of even size 2d.
  fe data     additive:   {"d", "ball": {"center", "radius"}, "A", "delta", "phi", "psi", "xi"}
              phase:      {"d", "ball", "eta", "delta", "f1", "f2", "f3"}   (complex values)
              difference: {"d", "degree", "ball", "A", "delta", "points" (N x d),
                           "offsets" (K x d), "differences" (K x N)}
              heisenberg: {"d", "ball" (in R^{2d}), "A", "delta", "L", "a1", "a2", "a3"}
              bilinear:   {"values": n x n complex on [0,1]^2, "delta"}
              sampled functions are {"points": N x d, "values": [..]}; A and eta are absolute
              units of the sampled values, delta the tolerated exceptional fraction.
  grid        {"x_nodes": 33, "t_nodes": 65} for an automatic box, or
              {"nodes": [..], "center": [..], "half_widths": [..]} per axis (t last).
  sampled     the make-triple output; see README.
Exit codes: 0 success, 2 validation error, 3 certificate failure.
Threads: OMP_NUM_THREADS.)";

struct Output {
  std::ostream& out;
  std::string path;
  void write(const std::string& text) const {
    if (path.empty()) out << text;
    else io::write_file(path, text);
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json(const std::string& path, const std::string& what) {
  return io::parse_text(io::read_file(path), what + " '" + path + "'");
}

QuadratureSpec load_spec(const std::string& path) {
  if (path.empty()) return {};
  const json j = load_json(path, "spec");
  return io::quadrature_from_json(j.contains("quadrature") ? j["quadrature"] : j);
}

json exponents_json(const std::array<Exponent, 3>& p) { return {p[0].str(), p[1].str(), p[2].str()}; }

int cmd_constants(const std::string& p_text, int dim, const Output& o) {
  require(dim >= 1, "--dim must be positive", "/dim");
  const auto prof = make_profile(parse_exponent_triple(p_text));
  json j = {{"p", exponents_json(prof.p)},
            {"q", exponents_json(prof.q)},
            {"dim", dim},
            {"A_p", prof.A_p},
            {"A_p_power", prof.A_power(dim)}};
  j["gamma"] = prof.gamma ? json(*prof.gamma) : json(nullptr);
  o.write(dump(j));
  return exit_ok;
}

Setting make_setting(const std::string& name, double lambda) { return Setting{parse_setting(name), lambda}; }

int cmd_eval(const std::string& setting_name, double lambda, const std::string& p_text, const std::string& triple_path,
             const std::string& spec_path, const std::string& exec_name, const Output& o) {
  const Setting setting = make_setting(setting_name, lambda);
  const auto prof = make_profile(parse_exponent_triple(p_text));
  const Triple g = io::triple_from_json(load_json(triple_path, "triple"));
  const QuadratureSpec spec = load_spec(spec_path);
  require(exec_name == "serial" || exec_name == "parallel", "--exec must be serial or parallel", "/exec");
  const Exec exec = exec_name == "serial" ? Exec::serial : Exec::parallel;

  cdouble log_value;
  json extra = json::object();
  switch (setting.kind) {
    case SettingKind::euclid:
      log_value = log_trilinear_euclid(g);
      break;
    case SettingKind::twisted:
      log_value = log_trilinear_twisted(g, setting.lambda);
      break;
    case SettingKind::heis: {
      const HeisValue h = trilinear_heis(g, spec, exec);
      log_value = h.log_value;
      extra = {{"xi_nodes", h.nodes}, {"refinement_change", h.refinement_change}};
      break;
    }
  }
  const cdouble value = std::exp(log_value);
  json norms = json::array();
  double log_norms = 0.0;
  for (int j = 0; j < 3; ++j) {
    norms.push_back(lp_norm(g[j], prof.p[j]));
    log_norms += log_lp_norm(g[j], prof.p[j]);
  }
  const double phi = std::exp(log_value.real() - log_norms);
  const double power = prof.A_power(sharp_power(g, setting));
  json j = {{"setting", setting_name},
            {"value_re", value.real()},
            {"value_im", value.imag()},
            {"log_abs_value", log_value.real()},
            {"norms", norms},
            {"phi", phi},
            {"A_p_power", power},
            {"gap", power - phi}};
  if (!extra.empty()) j["quadrature"] = extra;
  o.write(dump(j));
  return exit_ok;
}

int cmd_ratio_sweep(const std::string& p_text, const std::string& grid_text, int d, const std::string& spec_path,
                    const Output& o) {
  require(d >= 1, "--d must be positive", "/d");
  const auto p = parse_exponent_triple(p_text);
  const auto prof = make_profile(p);
  const QuadratureSpec spec = load_spec(spec_path);
  const double power = prof.A_power(2 * d + 1);
  std::ostringstream csv;
  csv << "eps,phi,gap\n";
  for (double eps : parse_eps_grid(grid_text)) {
    const DiffuseTriple t = make_diffuse_triple(p, eps, d);
    const double phi = phi_ratio(t.triple, prof, Setting{SettingKind::heis, 0.0}, spec);
    csv << json(eps).dump() << "," << json(phi).dump() << "," << json(power - phi).dump() << "\n";
  }
  o.write(csv.str());
  return exit_ok;
}

int cmd_factorize(const std::string& path, const Output& o) {
  const json j = load_json(path, "matrix");
  const Mat L = j.is_object() ? io::mat_from_json(j.contains("L") ? j["L"] : json(), "/L") : io::mat_from_json(j, "");
  o.write(dump(io::to_json(symplectic_factor(L))));
  return exit_ok;
}

int cmd_fe_solve(const std::string& kind, const std::string& path, double C, const Output& o) {
  const json j = load_json(path, "dataset");
  FEConfig cfg;
  cfg.C = C;
  require(C > 0, "--C must be positive", "/C");
  bool ok = true;
  json result;
  if (kind == "additive") {
    const auto s = solve_additive_fe(io::additive_from_json(j), cfg);
    result = io::to_json(s);
    ok = s.residual <= s.bound;
  } else if (kind == "phase") {
    const auto s = recover_linear_phase(io::phase_from_json(j), cfg);
    result = io::to_json(s);
    ok = s.residual <= s.bound;
  } else if (kind == "difference") {
    const auto s = integrate_difference(io::difference_from_json(j), cfg);
    result = io::to_json(s);
    ok = s.residual <= s.bound;
  } else if (kind == "heisenberg") {
    const auto s = solve_heis_fe(io::heis_fe_from_json(j), cfg);
    result = io::to_json(s);
    ok = s.certified;
  } else if (kind == "bilinear") {
    const auto s = estimate_bilinear_phase(io::bilinear_from_json(j), cfg);
    result = io::to_json(s);
    ok = s.consistent;
  } else {
    raise(ErrorCode::validation, "unknown --kind '" + kind + "'", "/kind");
  }
  result["kind"] = kind;
  o.write(dump(result));
  return ok ? exit_ok : exit_certificate;
}

GridSpec load_grid(const std::string& path, const Triple& g, const std::array<Exponent, 3>& p) {
  if (path.empty()) return auto_grid(g, p, 33, 65);
  const json j = load_json(path, "grid");
  if (j.contains("nodes")) {
    GridSpec grid;
    if (!j["nodes"].is_array()) raise(ErrorCode::validation, "nodes must be an array", "/nodes");
    for (const auto& n : j["nodes"]) {
      if (!n.is_number_integer()) raise(ErrorCode::validation, "node counts must be integers", "/nodes");
      grid.nodes.push_back(n.get<int>());
    }
    grid.center = io::vec_from_json(j.at("center"), "/center");
    grid.half_widths = io::vec_from_json(j.at("half_widths"), "/half_widths");
    grid.validate();
    return grid;
  }
  const int xn = j.value("x_nodes", 33);
  const int tn = j.value("t_nodes", 65);
  return auto_grid(g, p, xn, tn);
}

int cmd_make_triple(double eps, const std::string& p_text, int d, const std::string& grid_path, double noise,
                    std::uint64_t seed, const Output& o) {
  require(eps > 0, "--eps must be positive", "/eps");
  require(noise >= 0, "--noise must be non-negative", "/noise");
  const auto p = parse_exponent_triple(p_text);
  make_profile(p);
  const DiffuseTriple t = make_diffuse_triple(p, eps, d);
  SampledTriple s = sample_triple(t.triple, p, load_grid(grid_path, t.triple, p));
  if (noise > 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    for (auto& v : s.values) {
      const double scale = noise * v.cwiseAbs().maxCoeff();
      for (long i = 0; i < v.size(); ++i) {
        const double re = n01(rng);
        const double im = n01(rng);
        v(i) += scale * cdouble(re, im);
      }
    }
  }
  o.write(serialize(s));
  return exit_ok;
}

int cmd_pipeline(const std::string& input, const std::string& p_text, const std::string& spec_path, const Output& o) {
  SampledTriple s = deserialize_sampled_triple(io::read_file(input));
  if (!p_text.empty()) {
    const auto p = parse_exponent_triple(p_text);
    for (int j = 0; j < 3; ++j)
      require(p[j].infinite == s.p[j].infinite && (p[j].infinite || std::abs(p[j].value - s.p[j].value) < 1e-12),
              "--p disagrees with the exponents stored in the input", "/p");
  }
  PipelineConfig cfg;
  if (!spec_path.empty()) {
    const json j = load_json(spec_path, "spec");
    cfg.quad = io::quadrature_from_json(j.contains("quadrature") ? j["quadrature"] : json::object());
    if (j.contains("kappa")) cfg.kappa = j["kappa"].get<double>();
    if (j.contains("C")) cfg.fe.C = j["C"].get<double>();
    if (j.contains("mass_threshold")) cfg.mass_threshold = j["mass_threshold"].get<double>();
    require(cfg.kappa > 0 && cfg.fe.C > 0 && cfg.mass_threshold > 0 && cfg.mass_threshold < 1,
            "pipeline parameters out of range");
  }
  const PipelineReport r = analyze_near_extremizer(s, cfg);
  o.write(dump(io::to_json(r)));
  return r.fe.certified ? exit_ok : exit_certificate;
}

void report_error(std::ostream& err, std::string_view code, const std::string& message, const std::string& path) {
  json j = {{"error", {{"code", code}, {"message", message}}}};
  if (!path.empty()) j["error"]["path"] = path;
  err << j.dump() << "\n";
}

}  // namespace

std::vector<double> parse_eps_grid(const std::string& text) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !(v > 0) || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      raise(ErrorCode::validation, "invalid eps value '" + s + "'", "/eps-grid");
    }
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const double a = num(text.substr(0, dots));
    const double b = num(text.substr(dots + 2));
    const double steps = std::log10(a / b);
    const long n = std::lround(std::abs(steps));
    require(std::abs(std::abs(steps) - static_cast<double>(n)) < 1e-9 && n <= 64,
            "range endpoints must differ by whole decades", "/eps-grid");
    const double dir = b < a ? -1.0 : 1.0;
    // Round to 15 digits so 1e-1..1e-3 yields the literals 1e-3, not 0.0010000000000000002.
    for (long k = 0; k <= n; ++k) {
      std::ostringstream v;
      v << std::setprecision(15) << a * std::pow(10.0, dir * static_cast<double>(k));
      out.push_back(std::stod(v.str()));
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(num(item));
  require(!out.empty(), "empty eps grid", "/eps-grid");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp Young-convolution functionals, near-extremizer analysis and functional-equation solvers",
               "sharpyoung"};
  app.footer(kSchemas);
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  app.add_option("--out", out_path, "Write the artifact to this file instead of stdout");

  std::string p_text = "3/2,3/2,3/2";
  int dim = 1;
  auto* constants = app.add_subcommand("constants", "A_p, A_p^dim and the Gaussian scalings gamma as JSON");
  constants->add_option("--p", p_text, "Exponents p1,p2,p3 (rationals, decimals or inf), sum of 1/p_j = 2");
  constants->add_option("--dim", dim, "Power m of A_p");

  std::string setting = "heis", triple_path, spec_path, exec_name = "parallel";
  double lambda = 0.0;
  auto* eval = app.add_subcommand("eval", "Evaluate T(G) and Phi(G) for a Gaussian triple");
  eval->add_option("--setting", setting, "euclid | twisted | heis");
  eval->add_option("--lambda", lambda, "Twist parameter (twisted setting)");
  eval->add_option("--p", p_text, "Exponents p1,p2,p3");
  eval->add_option("--triple", triple_path, "Triple JSON")->required();
  eval->add_option("--spec", spec_path, "Quadrature spec JSON");
  eval->add_option("--exec", exec_name, "serial | parallel");

  std::string grid_text = "1e-1..1e-4";
  int d = 1;
  auto* sweep = app.add_subcommand("ratio-sweep", "CSV eps,phi,gap for canonical eps-diffuse Heisenberg triples");
  sweep->add_option("--p", p_text, "Exponents p1,p2,p3");
  sweep->add_option("--eps-grid", grid_text, "a..b by decades, or a comma-separated list");
  sweep->add_option("--d", d, "Heisenberg dimension d");
  sweep->add_option("--spec", spec_path, "Quadrature spec JSON");

  std::string matrix_path;
  auto* factorize = app.add_subcommand("factorize", "Factor L = S M with S symplectic and M of least norm");
  factorize->add_option("--matrix", matrix_path, "Matrix JSON")->required();

  std::string kind, data_path;
  double C = 5.0;
  auto* fe = app.add_subcommand("fe-solve", "Robust solvers for approximate functional equations");
  fe->add_option("--kind", kind, "additive | phase | difference | heisenberg | bilinear")->required();
  fe->add_option("--data", data_path, "Dataset JSON")->required();
  fe->add_option("--C", C, "Constant in the acceptance bounds");

  double eps = 1e-2, noise = 0.0;
  std::uint64_t seed = 0;
  std::string grid_path;
  auto* make = app.add_subcommand("make-triple", "Sample a canonical eps-diffuse triple to a SampledTriple file");
  make->add_option("--eps", eps, "Diffuseness");
  make->add_option("--p", p_text, "Exponents p1,p2,p3");
  make->add_option("--d", d, "Heisenberg dimension d");
  make->add_option("--sample", grid_path, "Grid JSON");
  make->add_option("--noise", noise, "Complex Gaussian noise, relative to max |f_j|");
  make->add_option("--seed", seed, "Noise seed");

  std::string input_path, pipe_p;
  auto* pipeline = app.add_subcommand("pipeline", "Recover the nearest Gaussian extremizer of a sampled triple");
  pipeline->add_option("--input", input_path, "SampledTriple file")->required();
  pipeline->add_option("--p", pipe_p, "Expected exponents (checked against the input)");
  pipeline->add_option("--spec", spec_path, "Pipeline/quadrature spec JSON");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, to_string(ErrorCode::validation), e.what(), "");
    return exit_validation;
  }

  const Output o{out, out_path};
  try {
    if (constants->parsed()) return cmd_constants(p_text, dim, o);
    if (eval->parsed()) return cmd_eval(setting, lambda, p_text, triple_path, spec_path, exec_name, o);
    if (sweep->parsed()) return cmd_ratio_sweep(p_text, grid_text, d, spec_path, o);
    if (factorize->parsed()) return cmd_factorize(matrix_path, o);
    if (fe->parsed()) return cmd_fe_solve(kind, data_path, C, o);
    if (make->parsed()) return cmd_make_triple(eps, p_text, d, grid_path, noise, seed, o);
    if (pipeline->parsed()) return cmd_pipeline(input_path, pipe_p, spec_path, o);
  } catch (const Error& e) {
    report_error(err, to_string(e.code()), e.what(), e.path());
    return e.code() == ErrorCode::validation || e.code() == ErrorCode::budget ? exit_validation : exit_certificate;
  } catch (const json::exception& e) {
    report_error(err, to_string(ErrorCode::validation), e.what(), "");
    return exit_validation;
  }
  return exit_validation;
}

}  // namespace sharpyoung::cli
