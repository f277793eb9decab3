#include "sharpyoung/json_io.hpp"

#include <fstream>
#include <sstream>

#include "sharpyoung/error.hpp"

namespace sharpyoung::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& at(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) raise(ErrorCode::validation, std::string("missing field '") + key + "'", path + "/" + key);
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) raise(ErrorCode::validation, "expected a number", path);
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) raise(ErrorCode::validation, "expected an integer", path);
  return j.get<int>();
}

json affine_json(const AffineForm& f) { return {{"grad", to_json(f.g)}, {"const", f.c}}; }

AffineForm affine_from_json(const json& j, const std::string& path) {
  return AffineForm{vec_from_json(at(j, "grad", path), path + "/grad"), number(at(j, "const", path), path + "/const")};
}

HeisPoint heis_point_from_json(const json& j, const std::string& path) {
  return HeisPoint{vec_from_json(at(j, "x", path), path + "/x"), number(at(j, "t", path), path + "/t")};
}

SampledFunction sampled_from_json(const json& j, const std::string& path) {
  SampledFunction f;
  f.points = mat_from_json(at(j, "points", path), path + "/points");
  f.values = vec_from_json(at(j, "values", path), path + "/values");
  require(f.points.rows() == f.values.size(), "points and values differ in count", path);
  return f;
}

ComplexSampledFunction complex_sampled_from_json(const json& j, const std::string& path) {
  ComplexSampledFunction f;
  f.points = mat_from_json(at(j, "points", path), path + "/points");
  const json& vals = at(j, "values", path);
  require(vals.is_array(), "values must be an array", path + "/values");
  f.values.resize(static_cast<long>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    f.values(static_cast<long>(i)) = complex_from_json(vals[i], path + "/values/" + std::to_string(i));
  require(f.points.rows() == f.values.size(), "points and values differ in count", path);
  return f;
}

Ball ball_from_json(const json& j, int d) {
  Ball b;
  b.center = j.contains("ball") && j["ball"].contains("center") ? vec_from_json(j["ball"]["center"], "/ball/center")
                                                                 : Vec::Zero(d);
  b.radius = j.contains("ball") && j["ball"].contains("radius") ? number(j["ball"]["radius"], "/ball/radius") : 1.0;
  return b;
}

double optional_number(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j[key], std::string("/") + key) : fallback;
}

}  // namespace

json to_json(const Mat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(row);
  }
  return out;
}

json to_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

json to_json(const Gaussian& g) {
  return {{"c", to_json(g.c)}, {"Q", to_json(g.Q)}, {"a", to_json(g.a)}, {"b", to_json(g.b)}};
}

json to_json(const Triple& t) { return {{"gaussians", {to_json(t[0]), to_json(t[1]), to_json(t[2])}}}; }

json to_json(const SymmetryElement& e) {
  return std::visit(overloaded{
                        [](const Dilation& s) -> json { return {{"kind", "dilation"}, {"r", s.r}}; },
                        [](const BiTranslation& b) -> json {
                          json j = {{"kind", "bitranslation"}};
                          for (int k = 0; k < 3; ++k)
                            j["u" + std::to_string(k + 1)] = {{"x", to_json(b.u[k].x)}, {"t", b.u[k].t}};
                          return j;
                        },
                        [](const Symplectic& s) -> json { return {{"kind", "symplectic"}, {"S", to_json(s.S)}}; },
                        [](const VerticalShear& s) -> json {
                          return {{"kind", "shear"},
                                  {"phi", {affine_json(s.phi[0]), affine_json(s.phi[1]), affine_json(s.phi[2])}}};
                        },
                        [](const Modulation& m) -> json { return {{"kind", "modulation"}, {"u", to_json(m.u)}}; },
                    },
                    e);
}

json to_json(const SymmetryWord& w) {
  json out = json::array();
  for (const auto& e : w) out.push_back(to_json(e));
  return out;
}

json to_json(const CompatibleTripleSpec& s) {
  return {{"p", {s.p[0].str(), s.p[1].str(), s.p[2].str()}},
          {"L", to_json(s.L)},
          {"a", s.a},
          {"b", s.b},
          {"c", {to_json(s.c[0]), to_json(s.c[1]), to_json(s.c[2])}}};
}

json to_json(const SymplecticFactorization& f) {
  return {{"S", to_json(f.S)},   {"M", to_json(f.M)}, {"O1", to_json(f.O1)},           {"T", to_json(f.T)},
          {"O2", to_json(f.O2)}, {"t", to_json(f.t)}, {"residual", f.residual},
          {"reconstruction", f.reconstruction}};
}

json to_json(const AffineFESolution& s) {
  return {{"h", {affine_json(s.h[0]), affine_json(s.h[1]), affine_json(s.h[2])}},
          {"residual", s.residual},
          {"bound", s.bound},
          {"inlier_fraction", s.inlier_fraction}};
}

json to_json(const LinearPhaseSolution& s) {
  return {{"v", {to_json(s.v[0]), to_json(s.v[1]), to_json(s.v[2])}},
          {"theta", s.theta},
          {"relation_constant", s.relation_constant},
          {"residual", s.residual},
          {"bound", s.bound},
          {"inlier_fraction", s.inlier_fraction}};
}

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [a, c] : p.coef) terms.push_back({{"exponents", a}, {"coef", c}});
  return {{"d", p.d}, {"terms", terms}};
}

json to_json(const DifferenceSolution& s) {
  return {{"Q", to_json(s.Q)},
          {"curl_distances", s.curl_distances},
          {"residual", s.residual},
          {"bound", s.bound},
          {"inlier_fraction", s.inlier_fraction}};
}

json to_json(const HeisFESolution& s) {
  return {{"psi", {affine_json(s.psi[0]), affine_json(s.psi[1]), affine_json(s.psi[2])}},
          {"S", to_json(s.S)},
          {"norm_S_Linv", s.norm_SLinv},
          {"S_bound", s.S_bound},
          {"sigma_sup", s.sigma_sup},
          {"certificate_bound", s.certificate_bound},
          {"certified", s.certified},
          {"residual", s.residual},
          {"bound", s.bound},
          {"inlier_fraction", s.inlier_fraction}};
}

json to_json(const BilinearPhaseSolution& s) {
  return {{"v1", s.v1},         {"v2", s.v2}, {"eta_hat", s.eta_hat}, {"residual", s.residual},
          {"C", s.C}, {"consistent", s.consistent}};
}

json to_json(const PipelineReport& r) {
  json marg = json::array();
  for (int j = 0; j < 3; ++j) marg.push_back({{"Q", to_json(r.marginal_Q[j])}, {"center", to_json(r.marginal_centers[j])}});
  return {{"recovered", to_json(r.recovered)},
          {"modulation", to_json(r.modulation)},
          {"word", to_json(r.word)},
          {"distances", r.distances},
          {"phi", r.phi},
          {"A_p_power", r.A_power},
          {"gap", r.gap},
          {"diffuseness", r.diffuseness},
          {"lambda", r.lambda},
          {"marginals", marg},
          {"max_slice_residual", r.max_slice_residual},
          {"fe", to_json(r.fe)},
          {"phase_check", to_json(r.phase_check)}};
}

Mat mat_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) raise(ErrorCode::validation, "expected a matrix (array of rows)", path);
  const long rows = static_cast<long>(j.size());
  long cols = -1;
  Mat m;
  for (long i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    const std::string rp = path + "/" + std::to_string(i);
    if (!row.is_array()) raise(ErrorCode::validation, "matrix rows must be arrays", rp);
    if (cols < 0) {
      cols = static_cast<long>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<long>(row.size()) != cols) raise(ErrorCode::validation, "ragged matrix", rp);
    for (long k = 0; k < cols; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], rp + "/" + std::to_string(k));
  }
  if (rows == 0) m.resize(0, 0);
  return m;
}

Vec vec_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) raise(ErrorCode::validation, "expected an array of numbers", path);
  Vec v(static_cast<long>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = number(j[i], path + "/" + std::to_string(i));
  return v;
}

cdouble complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], path + "/0"), number(j[1], path + "/1")};
  raise(ErrorCode::validation, "expected a complex number [re, im]", path);
}

Gaussian gaussian_from_json(const json& j, const std::string& path) {
  Gaussian g;
  g.Q = mat_from_json(at(j, "Q", path), path + "/Q");
  const int n = static_cast<int>(g.Q.rows());
  g.c = j.contains("c") ? complex_from_json(j["c"], path + "/c") : cdouble(1.0);
  g.a = j.contains("a") ? vec_from_json(j["a"], path + "/a") : Vec::Zero(n);
  g.b = j.contains("b") ? vec_from_json(j["b"], path + "/b") : Vec::Zero(n);
  try {
    g.validate();
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + e.path());
  }
  return g;
}

Triple triple_from_json(const json& j, const std::string& path) {
  const json& arr = j.is_object() ? at(j, "gaussians", path) : j;
  const std::string base = j.is_object() ? path + "/gaussians" : path;
  if (!arr.is_array() || arr.size() != 3) raise(ErrorCode::validation, "a triple needs exactly three Gaussians", base);
  Triple t;
  for (int k = 0; k < 3; ++k) t[k] = gaussian_from_json(arr[k], base + "/" + std::to_string(k));
  require(t[0].dim() == t[1].dim() && t[1].dim() == t[2].dim(), "triple members must share a dimension", base);
  return t;
}

SymmetryElement element_from_json(const json& j, const std::string& path) {
  const json& kind_j = at(j, "kind", path);
  if (!kind_j.is_string()) raise(ErrorCode::validation, "kind must be a string", path + "/kind");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "dilation") return Dilation{number(at(j, "r", path), path + "/r")};
  if (kind == "bitranslation") {
    BiTranslation b;
    for (int k = 0; k < 3; ++k) {
      const std::string key = "u" + std::to_string(k + 1);
      b.u[k] = heis_point_from_json(at(j, key.c_str(), path), path + "/" + key);
    }
    return b;
  }
  if (kind == "symplectic") return Symplectic{mat_from_json(at(j, "S", path), path + "/S")};
  if (kind == "shear") {
    const json& phi = at(j, "phi", path);
    if (!phi.is_array() || phi.size() != 3) raise(ErrorCode::validation, "shear needs three affine forms", path + "/phi");
    VerticalShear s;
    for (int k = 0; k < 3; ++k) s.phi[k] = affine_from_json(phi[k], path + "/phi/" + std::to_string(k));
    return s;
  }
  if (kind == "modulation") return Modulation{vec_from_json(at(j, "u", path), path + "/u")};
  raise(ErrorCode::validation, "unknown symmetry kind '" + kind + "'", path + "/kind");
}

SymmetryWord word_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) raise(ErrorCode::validation, "a symmetry word is an array of elements", path);
  SymmetryWord w;
  for (std::size_t i = 0; i < j.size(); ++i) w.push_back(element_from_json(j[i], path + "/" + std::to_string(i)));
  return w;
}

CompatibleTripleSpec compatible_spec_from_json(const json& j, const std::string& path) {
  CompatibleTripleSpec s;
  const json& p = at(j, "p", path);
  if (!p.is_array() || p.size() != 3) raise(ErrorCode::validation, "p must list three exponents", path + "/p");
  for (int k = 0; k < 3; ++k)
    s.p[k] = p[k].is_string() ? Exponent::parse(p[k].get<std::string>())
                              : Exponent::finite(number(p[k], path + "/p/" + std::to_string(k)));
  s.L = mat_from_json(at(j, "L", path), path + "/L");
  s.a = number(at(j, "a", path), path + "/a");
  s.b = j.contains("b") ? number(j["b"], path + "/b") : 0.0;
  if (j.contains("c")) {
    const json& c = j["c"];
    if (!c.is_array() || c.size() != 3) raise(ErrorCode::validation, "c must hold three amplitudes", path + "/c");
    for (int k = 0; k < 3; ++k) s.c[k] = complex_from_json(c[k], path + "/c/" + std::to_string(k));
  }
  return s;
}

QuadratureSpec quadrature_from_json(const json& j, QuadratureSpec base) {
  if (!j.is_object()) raise(ErrorCode::validation, "quadrature spec must be an object", "");
  if (j.contains("scheme")) {
    const std::string s = j["scheme"].get<std::string>();
    if (s == "hermite") base.scheme = Scheme::hermite;
    else if (s == "trapezoid") base.scheme = Scheme::trapezoid;
    else raise(ErrorCode::validation, "unknown scheme '" + s + "'", "/scheme");
  }
  if (j.contains("xi_nodes")) base.xi_nodes = integer(j["xi_nodes"], "/xi_nodes");
  if (j.contains("multiplier")) base.multiplier = number(j["multiplier"], "/multiplier");
  if (j.contains("oracle_nodes")) base.oracle_nodes = integer(j["oracle_nodes"], "/oracle_nodes");
  if (j.contains("rel_tol")) base.rel_tol = number(j["rel_tol"], "/rel_tol");
  if (j.contains("max_refinements")) base.max_refinements = integer(j["max_refinements"], "/max_refinements");
  validate(base);
  return base;
}

AdditiveFEData additive_from_json(const json& j) {
  AdditiveFEData d;
  d.d = integer(at(j, "d", ""), "/d");
  d.ball = ball_from_json(j, d.d);
  d.A = optional_number(j, "A", 0.0);
  d.delta = optional_number(j, "delta", 0.1);
  const char* keys[3] = {"phi", "psi", "xi"};
  for (int k = 0; k < 3; ++k) d.f[k] = sampled_from_json(at(j, keys[k], ""), std::string("/") + keys[k]);
  return d;
}

PhaseFEData phase_from_json(const json& j) {
  PhaseFEData d;
  d.d = integer(at(j, "d", ""), "/d");
  d.ball = ball_from_json(j, d.d);
  d.eta = optional_number(j, "eta", 0.0);
  d.delta = optional_number(j, "delta", 0.1);
  const char* keys[3] = {"f1", "f2", "f3"};
  for (int k = 0; k < 3; ++k) d.f[k] = complex_sampled_from_json(at(j, keys[k], ""), std::string("/") + keys[k]);
  return d;
}

DifferenceDataset difference_from_json(const json& j) {
  DifferenceDataset d;
  d.d = integer(at(j, "d", ""), "/d");
  d.degree = integer(at(j, "degree", ""), "/degree");
  d.ball = ball_from_json(j, d.d);
  d.A = optional_number(j, "A", 0.0);
  d.delta = optional_number(j, "delta", 0.1);
  d.points = mat_from_json(at(j, "points", ""), "/points");
  d.offsets = mat_from_json(at(j, "offsets", ""), "/offsets");
  d.differences = mat_from_json(at(j, "differences", ""), "/differences");
  return d;
}

HeisFEData heis_fe_from_json(const json& j) {
  HeisFEData d;
  d.d = integer(at(j, "d", ""), "/d");
  d.ball = ball_from_json(j, 2 * d.d);
  d.A = optional_number(j, "A", 0.0);
  d.delta = optional_number(j, "delta", 0.1);
  d.L = mat_from_json(at(j, "L", ""), "/L");
  const char* keys[3] = {"a1", "a2", "a3"};
  for (int k = 0; k < 3; ++k) d.a[k] = sampled_from_json(at(j, keys[k], ""), std::string("/") + keys[k]);
  return d;
}

BilinearPhaseData bilinear_from_json(const json& j) {
  BilinearPhaseData d;
  const json& vals = at(j, "values", "");
  if (!vals.is_array() || vals.empty()) raise(ErrorCode::validation, "values must be an n × n array", "/values");
  const long n = static_cast<long>(vals.size());
  d.values.resize(n, n);
  for (long i = 0; i < n; ++i) {
    const json& row = vals[static_cast<std::size_t>(i)];
    const std::string rp = "/values/" + std::to_string(i);
    if (!row.is_array() || static_cast<long>(row.size()) != n) raise(ErrorCode::validation, "values must be square", rp);
    for (long k = 0; k < n; ++k) d.values(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], rp + "/" + std::to_string(k));
  }
  d.delta = optional_number(j, "delta", 0.1);
  return d;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::validation, what + " is not valid JSON: " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::validation, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::validation, "cannot write file '" + path + "'");
  out << text;
}

}  // namespace sharpyoung::io
