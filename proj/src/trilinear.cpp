#include "sharpyoung/trilinear.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "sharpyoung/error.hpp"
#include "sharpyoung/heisenberg.hpp"

namespace sharpyoung {

namespace {

void check_triple(const Triple& g) {
  for (int j = 0; j < 3; ++j) {
    try {
      g[j].validate();
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), "/" + std::to_string(j) + e.path());
    }
  }
  require(g[0].dim() == g[1].dim() && g[1].dim() == g[2].dim(), "triple members must share a dimension");
}

// Quadratic data of Σ_j log G_j(P_j v): exponent −vᵀAv + wᵀv + k.
struct Assembled {
  Mat A;
  CVec w;
  cdouble k;
};

// v = (z₁, z₂), z₃ = −z₁ − z₂.
Assembled assemble_product(const Triple& g) {
  const int m = g[0].dim();
  Mat P[3];
  P[0] = Mat::Zero(m, 2 * m);
  P[0].leftCols(m).setIdentity();
  P[1] = Mat::Zero(m, 2 * m);
  P[1].rightCols(m).setIdentity();
  P[2] = -(P[0] + P[1]);
  Assembled out{Mat::Zero(2 * m, 2 * m), CVec::Zero(2 * m), 0.0};
  for (int j = 0; j < 3; ++j) {
    out.A += P[j].transpose() * g[j].Q * P[j];
    out.w += P[j].transpose().cast<cdouble>() * g[j].beta();
    out.k += g[j].kappa();
  }
  out.A = sym(out.A);
  return out;
}

// B with vᵀBv = x₁ᵀJx₂ where x₁ = v[o1 .. o1+2d), x₂ = v[o2 .. o2+2d).
Mat sigma_form(int n, int d, int o1, int o2, double scale) {
  Mat B = Mat::Zero(n, n);
  const Mat J = symplectic_J(d);
  B.block(o1, o2, 2 * d, 2 * d) = 0.5 * scale * J;
  B.block(o2, o1, 2 * d, 2 * d) = 0.5 * scale * J.transpose();
  return B;
}

}  // namespace

SettingKind parse_setting(const std::string& name) {
  if (name == "euclid") return SettingKind::euclid;
  if (name == "twisted") return SettingKind::twisted;
  if (name == "heis") return SettingKind::heis;
  raise(ErrorCode::validation, "unknown setting '" + name + "' (expected euclid, twisted or heis)", "/setting");
}

cdouble log_trilinear_euclid(const Triple& g) {
  check_triple(g);
  const Assembled as = assemble_product(g);
  return log_gaussian_integral(as.A.cast<cdouble>(), as.w) + as.k;
}

cdouble trilinear_euclid(const Triple& g) { return std::exp(log_trilinear_euclid(g)); }

cdouble log_trilinear_twisted(const Triple& g, double lambda) {
  check_triple(g);
  const int m = g[0].dim();
  require(m % 2 == 0, "twisted form needs even-dimensional Gaussians");
  const Assembled as = assemble_product(g);
  // e^{iλσ} contributes −iλB to the quadratic form.
  GaussianPencil pencil(as.A, sigma_form(2 * m, m / 2, 0, m, 1.0));
  return pencil.log_integral(-lambda, as.w) + as.k;
}

cdouble trilinear_twisted(const Triple& g, double lambda) { return std::exp(log_trilinear_twisted(g, lambda)); }

namespace {

// Everything the ξ-integrand needs, independent of ξ.
struct XiReduction {
  double C = 0.0;    // coefficient of t₃² in G₃
  double beta_r = 0, beta_i = 0;
  Vec r;             // exponent gains s·(rᵀv)
  CVec w0;
  cdouble k0;
  std::unique_ptr<GaussianPencil> pencil;

  // log of the ξ-integrand, including the e^{−ξ²/4C} weight only through the rule.
  cdouble log_integrand(double xi) const {
    const CVec w = w0 - (beta_r / (2.0 * C)) * r.cast<cdouble>() - cdouble(0.0, xi / (2.0 * C)) * r.cast<cdouble>();
    const cdouble k = k0 + beta_r * beta_r / (4.0 * C) + cdouble(0.0, xi * beta_r / (2.0 * C));
    return pencil->log_integral(beta_i - xi, w) + k;
  }
};

// Variables v = (x₁, t₁, x₂, t₂); z₃ = (−x₁−x₂, −t₁−t₂) − s e with s = κ·x₁ᵀJx₂.
// The exponent is E₀(v) + s·(rᵀv − β₃ₜ) − C s². Completing the square in s and
// writing e^{−CW²} = (4πC)^{−1/2} ∫ e^{−ξ²/4C + iξW} dξ leaves, for each ξ, a
// Gaussian in v with real part R = Σ P_jᵀQ_jP_j − rrᵀ/4C (Q₃ replaced by its
// Schur complement in the t-direction, hence SPD) and imaginary part (β_i − ξ)B.
XiReduction reduce(const Triple& g, double coupling) {
  const int m = g[0].dim();
  const int d = (m - 1) / 2;
  const int n = 2 * m;
  Mat P[3];
  P[0] = Mat::Zero(m, n);
  P[0].leftCols(m).setIdentity();
  P[1] = Mat::Zero(m, n);
  P[1].rightCols(m).setIdentity();
  P[2] = -(P[0] + P[1]);

  XiReduction red;
  const Mat& Q3 = g[2].Q;
  red.C = Q3(m - 1, m - 1);
  const Vec Q3e = Q3.col(m - 1);
  const Mat S3 = sym(Q3 - Q3e * Q3e.transpose() / red.C);
  Mat R = P[0].transpose() * g[0].Q * P[0] + P[1].transpose() * g[1].Q * P[1] + P[2].transpose() * S3 * P[2];
  red.r = 2.0 * P[2].transpose() * Q3e;
  red.w0 = CVec::Zero(n);
  red.k0 = 0.0;
  for (int j = 0; j < 3; ++j) {
    red.w0 += P[j].transpose().cast<cdouble>() * g[j].beta();
    red.k0 += g[j].kappa();
  }
  const cdouble beta3t = g[2].beta()(m - 1);
  red.beta_r = beta3t.real();
  red.beta_i = beta3t.imag();
  red.pencil = std::make_unique<GaussianPencil>(sym(R), sigma_form(n, d, 0, m, coupling));
  return red;
}

// (4πC)^{−1/2} ∫ e^{−ξ²/4C} F(ξ) dξ. Hermite: ξ = 2√C η against e^{−η²}. Trapezoid:
// nodes + 1 equispaced points on ±multiplier·√(2C); |F| is bounded on the real line
// (ξ enters the real part of nothing), so the Gaussian envelope controls truncation,
// and F is analytic in a strip, which the trapezoid rule resolves geometrically.
cdouble xi_level(const XiReduction& red, int nodes, const QuadratureSpec& spec, Exec exec) {
  if (spec.scheme == Scheme::hermite) {
    const Rule& rule = gauss_hermite(nodes);
    const double scale = 2.0 * std::sqrt(red.C);
    const auto logs = map_indexed<cdouble>(
        rule.size(),
        [&](long k) -> cdouble {
          if (rule.weights[k] == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
          return std::log(rule.weights[k]) + red.log_integrand(scale * rule.nodes[k]);
        },
        exec);
    return log_sum_exp(logs) - 0.5 * std::log(std::numbers::pi);
  }
  const Rule rule = trapezoid(nodes + 1, spec.multiplier * std::sqrt(2.0 * red.C));
  const auto logs = map_indexed<cdouble>(
      rule.size(),
      [&](long k) -> cdouble {
        const double xi = rule.nodes[k];
        return std::log(rule.weights[k]) - xi * xi / (4.0 * red.C) + red.log_integrand(xi);
      },
      exec);
  return log_sum_exp(logs) - 0.5 * std::log(4.0 * std::numbers::pi * red.C);
}

double relative_change(cdouble log_a, cdouble log_b) {
  // |e^a − e^b| / |e^b|
  return std::abs(std::exp(log_a - log_b) - 1.0);
}

}  // namespace

HeisValue trilinear_heis(const Triple& g, const QuadratureSpec& spec, Exec exec, double coupling) {
  check_triple(g);
  heis_d(g[0]);
  validate(spec);
  const XiReduction red = reduce(g, coupling);
  const int cap = spec.scheme == Scheme::hermite ? 4096 : 1 << 20;
  int nodes = spec.xi_nodes;
  cdouble prev = xi_level(red, nodes, spec, exec);
  for (int level = 0; level < spec.max_refinements; ++level) {
    const int next_nodes = 2 * nodes;
    if (next_nodes > cap) break;
    const cdouble next = xi_level(red, next_nodes, spec, exec);
    const double change = relative_change(prev, next);
    nodes = next_nodes;
    prev = next;
    if (change <= spec.rel_tol) return {next, nodes, change};
  }
  raise(ErrorCode::convergence, "xi-quadrature did not reach the requested relative tolerance");
}

namespace {

struct OracleSetup {
  int d = 0;
  Vec mu;   // center of the x₁ grid
  Mat W;    // whitening: x₁ = μ + W y
  double log_det_W = 0.0;
};

OracleSetup oracle_setup(const Triple& g) {
  const int m = g[0].dim();
  const int d = (m - 1) / 2;
  // Grid frame from the σ-free product: the x₁-marginal of exp(−vᵀAv + Re wᵀv).
  // The coupling only shifts the t-convolution, so the envelope keeps this scale;
  // the 2n−1 refinement reports how well the box and spacing resolve it.
  const Assembled as = assemble_product(g);
  const Vec center = as.A.ldlt().solve(as.w.real()) * 0.5;
  std::vector<int> keep, rest;
  for (int i = 0; i < 2 * m; ++i) (i < 2 * d ? keep : rest).push_back(i);
  const Mat Akk = as.A(keep, keep), Akr = as.A(keep, rest), Arr = as.A(rest, rest);
  const Mat P = sym(Akk - Akr * Arr.ldlt().solve(Akr.transpose()));
  OracleSetup s;
  s.d = d;
  s.mu = center.head(2 * d);
  Eigen::SelfAdjointEigenSolver<Mat> es(P);
  s.W = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal();
  s.log_det_W = -0.5 * es.eigenvalues().array().log().sum();
  return s;
}

// log ∫ G₁(x₁,t₁)G₂(x₂,t₂)G₃(−x₁−x₂, −t₁−t₂−κσ(x₁,x₂)) d(x₂,t₁,t₂) for fixed x₁.
cdouble conditional_log(const Triple& g, const Vec& x1, double coupling) {
  const int m = g[0].dim();
  const int d2 = m - 1;
  const int n = m + 1;  // w = (x₂, t₁, t₂)
  const Mat J = symplectic_J(d2 / 2);
  Mat M[3];
  Vec off[3];
  for (auto& Mj : M) Mj = Mat::Zero(m, n);
  M[0](d2, d2) = 1.0;
  off[0] = Vec::Zero(m);
  off[0].head(d2) = x1;
  M[1].topLeftCorner(d2, d2).setIdentity();
  M[1](d2, d2 + 1) = 1.0;
  off[1] = Vec::Zero(m);
  M[2].topLeftCorner(d2, d2) = -Mat::Identity(d2, d2);
  M[2](d2, d2) = -1.0;
  M[2](d2, d2 + 1) = -1.0;
  M[2].block(d2, 0, 1, d2) = -coupling * (J.transpose() * x1).transpose();
  off[2] = Vec::Zero(m);
  off[2].head(d2) = -x1;

  Mat A = Mat::Zero(n, n);
  CVec w = CVec::Zero(n);
  cdouble k = 0.0;
  for (int j = 0; j < 3; ++j) {
    const CVec beta = g[j].beta();
    A += M[j].transpose() * g[j].Q * M[j];
    w += M[j].transpose().cast<cdouble>() * (beta - 2.0 * (g[j].Q * off[j]).cast<cdouble>());
    k += -off[j].dot(g[j].Q * off[j]) + off[j].cast<cdouble>().dot(beta) + g[j].kappa();
  }
  GaussianPencil pencil(sym(A), Mat::Zero(n, n));
  return pencil.log_integral(0.0, w) + k;
}

cdouble oracle_level(const Triple& g, const OracleSetup& s, int nodes, double half_width, double coupling,
                     Exec exec) {
  const Rule rule = trapezoid(nodes, half_width);
  const int dims = 2 * s.d;
  long total = 1;
  for (int i = 0; i < dims; ++i) total *= nodes;
  const auto logs = map_indexed<cdouble>(
      total,
      [&](long idx) -> cdouble {
        Vec y(dims);
        double log_w = 0.0;
        long rem = idx;
        for (int i = 0; i < dims; ++i) {
          const int k = static_cast<int>(rem % nodes);
          rem /= nodes;
          y(i) = rule.nodes[k];
          log_w += std::log(rule.weights[k]);
        }
        return log_w + conditional_log(g, s.mu + s.W * y, coupling);
      },
      exec);
  return log_sum_exp(logs) + s.log_det_W;
}

}  // namespace

HeisValue trilinear_oracle(const Triple& g, const QuadratureSpec& spec, Exec exec, double coupling) {
  check_triple(g);
  heis_d(g[0]);
  validate(spec);
  const OracleSetup s = oracle_setup(g);
  const double budget = 2e8;
  auto points = [&](int nodes) { return std::pow(static_cast<double>(nodes), 2 * s.d); };
  int nodes = spec.oracle_nodes;
  double spent = points(nodes);
  if (spent > budget) raise(ErrorCode::budget, "oracle grid exceeds the evaluation budget");
  cdouble prev = oracle_level(g, s, nodes, spec.multiplier, coupling, exec);
  for (int level = 0; level < spec.max_refinements; ++level) {
    const int next_nodes = 2 * nodes - 1;
    spent += points(next_nodes);
    if (spent > budget) raise(ErrorCode::budget, "oracle refinement exceeds the evaluation budget");
    const cdouble next = oracle_level(g, s, next_nodes, spec.multiplier, coupling, exec);
    const double change = relative_change(prev, next);
    nodes = next_nodes;
    prev = next;
    if (change <= spec.rel_tol) return {next, nodes, change};
  }
  raise(ErrorCode::convergence, "oracle quadrature did not reach the requested relative tolerance");
}

int sharp_power(const Triple& g, const Setting&) {
  // R^m, R^{2d} and the group on R^{2d+1} all saturate at A_p^{dimension}.
  return g[0].dim();
}

double phi_ratio(const Triple& g, const ExponentProfile& prof, const Setting& setting, const QuadratureSpec& spec,
                 Exec exec) {
  cdouble log_t;
  switch (setting.kind) {
    case SettingKind::euclid: log_t = log_trilinear_euclid(g); break;
    case SettingKind::twisted: log_t = log_trilinear_twisted(g, setting.lambda); break;
    case SettingKind::heis: log_t = trilinear_heis(g, spec, exec).log_value; break;
  }
  double log_norms = 0.0;
  for (int j = 0; j < 3; ++j) log_norms += log_lp_norm(g[j], prof.p[j]);
  return std::exp(log_t.real() - log_norms);
}

}  // namespace sharpyoung
