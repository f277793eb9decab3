#include "sharpyoung/functional_equations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sharpyoung/error.hpp"
#include "sharpyoung/heisenberg.hpp"
#include "sharpyoung/kernels.hpp"
#include "sharpyoung/symplectic_factor.hpp"

namespace sharpyoung {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

void check_function(const SampledFunction& f, int d, const std::string& path) {
  require(f.points.cols() == d, "sample points have the wrong dimension", path + "/points");
  require(f.points.rows() == f.values.size(), "sample points and values differ in count", path);
  require(f.points.allFinite() && f.values.allFinite(), "non-finite samples", path);
}

void check_common(int d, const Ball& ball, double level, double delta) {
  require(d >= 1, "dimension must be positive", "/d");
  require(ball.center.size() == d && ball.radius > 0.0, "ball must have a center in R^d and positive radius", "/ball");
  require(level >= 0.0 && std::isfinite(level), "noise level must be non-negative", "/A");
  require(delta >= 0.0 && delta < 0.5, "exceptional fraction must lie in [0, 1/2)", "/delta");
}

// Samples within the bound, allowing round-off so that exact data with A = 0 counts fully.
double fraction_within(const std::vector<double>& r, double bound) {
  if (r.empty()) return 1.0;
  const double cut = bound + 1e-10;
  const auto n = std::count_if(r.begin(), r.end(), [&](double x) { return x <= cut; });
  return static_cast<double>(n) / static_cast<double>(r.size());
}

std::vector<double> additive_residuals(const std::array<SampledFunction, 3>& f, const std::array<AffineForm, 3>& h) {
  std::vector<double> r;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < f[j].size(); ++i) {
      r.push_back(std::abs(f[j].values(i) - h[j](f[j].points.row(i).transpose())));
    }
  }
  return r;
}

// Structured affine fit shared by the additive and Heisenberg solvers:
// h₁ = g·x + c₁, h₂ = g·y + c₂, h₃ = −g·z − c₁ − c₂.
std::array<AffineForm, 3> fit_structured_affine(const std::array<SampledFunction, 3>& f, int d,
                                                const RobustOptions& opt) {
  const int rows = f[0].size() + f[1].size() + f[2].size();
  Mat X = Mat::Zero(rows, d + 2);
  Vec y(rows);
  int r = 0;
  const double sign[3] = {1.0, 1.0, -1.0};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < f[j].size(); ++i, ++r) {
      X.row(r).head(d) = sign[j] * f[j].points.row(i);
      if (j == 0) X(r, d) = 1.0;
      if (j == 1) X(r, d + 1) = 1.0;
      if (j == 2) X(r, d) = X(r, d + 1) = -1.0;
      y(r) = f[j].values(i);
    }
  }
  const RobustFit fit = lad_fit(X, y, opt);
  const Vec g = fit.beta.head(d);
  const double c1 = fit.beta(d), c2 = fit.beta(d + 1);
  return {AffineForm{g, c1}, AffineForm{g, c2}, AffineForm{-g, -c1 - c2}};
}

}  // namespace

double Ball::volume() const {
  const int d = static_cast<int>(center.size());
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(radius, d);
}

double quantile_sup(std::vector<double> r, double delta) {
  if (r.empty()) return 0.0;
  std::sort(r.begin(), r.end());
  const auto n = static_cast<double>(r.size());
  long idx = static_cast<long>(std::ceil((1.0 - delta) * n - 1e-9)) - 1;
  idx = std::clamp(idx, 0L, static_cast<long>(r.size()) - 1);
  return r[static_cast<std::size_t>(idx)];
}

// ---------------------------------------------------------------- additive

double audit_residual(const AdditiveFEData& data, const AffineFESolution& sol) {
  return quantile_sup(additive_residuals(data.f, sol.h), data.delta);
}

AffineFESolution solve_additive_fe(const AdditiveFEData& data, const FEConfig& cfg) {
  check_common(data.d, data.ball, data.A, data.delta);
  const char* names[3] = {"/phi", "/psi", "/xi"};
  for (int j = 0; j < 3; ++j) check_function(data.f[j], data.d, names[j]);
  AffineFESolution sol;
  sol.h = fit_structured_affine(data.f, data.d, cfg.robust);
  sol.residual = audit_residual(data, sol);
  sol.bound = cfg.C * data.A;
  sol.inlier_fraction = fraction_within(additive_residuals(data.f, sol.h), sol.bound);
  return sol;
}

// ---------------------------------------------------------------- phases

namespace {

std::vector<double> phase_residuals(const PhaseFEData& data, const LinearPhaseSolution& sol) {
  std::vector<double> r;
  for (int j = 0; j < 3; ++j) {
    const auto& f = data.f[j];
    for (int i = 0; i < f.size(); ++i) {
      const double ph = sol.v[j].dot(f.points.row(i).transpose()) + sol.theta[j];
      r.push_back(std::abs(f.values(i) / std::abs(f.values(i)) * std::exp(cdouble(0.0, -ph)) - 1.0));
    }
  }
  return r;
}

// Pairs of nearest grid neighbours (distance ≤ 1.5 × the smallest spacing).
std::vector<std::pair<int, int>> neighbour_pairs(const Mat& pts) {
  const int n = static_cast<int>(pts.rows());
  double hmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const double dist = (pts.row(i) - pts.row(k)).norm();
      if (dist > 0.0) hmin = std::min(hmin, dist);
    }
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const double dist = (pts.row(i) - pts.row(k)).norm();
      if (dist > 0.0 && dist <= 1.5 * hmin) out.emplace_back(i, k);
    }
  return out;
}

}  // namespace

double audit_residual(const PhaseFEData& data, const LinearPhaseSolution& sol) {
  return quantile_sup(phase_residuals(data, sol), data.delta);
}

LinearPhaseSolution recover_linear_phase(const PhaseFEData& data, const FEConfig& cfg) {
  check_common(data.d, data.ball, data.eta, data.delta);
  require(data.eta < 0.5, "phase noise eta must be below 1/2 for phases to be defined stably", "/eta");
  const int d = data.d;
  std::vector<std::pair<Vec, double>> rows;
  for (int j = 0; j < 3; ++j) {
    const auto& f = data.f[j];
    const std::string path = "/f" + std::to_string(j + 1);
    require(f.points.cols() == d && f.points.rows() == f.values.size() && f.size() >= d + 1,
            "phase samples have the wrong shape", path);
    for (int i = 0; i < f.size(); ++i) {
      require(std::abs(f.values(i)) > 0.5 && std::abs(f.values(i)) < 2.0, "phase samples must be unimodular",
              path + "/values/" + std::to_string(i));
    }
    // Neighbouring phase differences avoid global unwrapping.
    for (const auto& [i, k] : neighbour_pairs(f.points)) {
      const double dphi = std::arg(f.values(k) * std::conj(f.values(i)));
      rows.emplace_back((f.points.row(k) - f.points.row(i)).transpose(), dphi);
    }
  }
  Mat X(static_cast<int>(rows.size()), d);
  Vec y(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    X.row(static_cast<int>(r)) = rows[r].first.transpose();
    y(static_cast<int>(r)) = rows[r].second;
  }
  const Vec v = lad_fit(X, y, cfg.robust).beta;

  LinearPhaseSolution sol;
  for (int j = 0; j < 3; ++j) {
    const auto& f = data.f[j];
    std::vector<double> ph(f.size());
    cdouble mean = 0.0;
    for (int i = 0; i < f.size(); ++i) {
      ph[i] = std::arg(f.values(i) * std::exp(cdouble(0.0, -v.dot(f.points.row(i).transpose()))));
      mean += std::exp(cdouble(0.0, ph[i]));
    }
    const double theta0 = std::arg(mean);
    for (auto& p : ph) p = wrap_angle(p - theta0);
    sol.v[j] = v;
    sol.theta[j] = wrap_angle(theta0 + median(ph));
  }
  sol.relation_constant = wrap_angle(sol.theta[0] + sol.theta[1] - sol.theta[2]);
  sol.residual = audit_residual(data, sol);
  sol.bound = cfg.C * std::pow(data.eta, 1.0 / cfg.C);
  sol.inlier_fraction = fraction_within(phase_residuals(data, sol), sol.bound);
  return sol;
}

// ---------------------------------------------------------------- differences

namespace {

std::vector<double> difference_residuals(const DifferenceDataset& data, const Polynomial& Q) {
  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(data.differences.size()));
  for (int k = 0; k < data.offsets.rows(); ++k) {
    const Vec h = data.offsets.row(k).transpose();
    for (int i = 0; i < data.points.rows(); ++i) {
      const Vec x = data.points.row(i).transpose();
      r.push_back(std::abs(data.differences(k, i) - (Q(x + h) - Q(x))));
    }
  }
  return r;
}

Mat monomial_design(const Mat& pts, const std::vector<MultiIndex>& basis) {
  Mat X(pts.rows(), static_cast<int>(basis.size()));
  for (int i = 0; i < pts.rows(); ++i)
    for (std::size_t b = 0; b < basis.size(); ++b) X(i, static_cast<int>(b)) = monomial(basis[b], pts.row(i).transpose());
  return X;
}

}  // namespace

double audit_residual(const DifferenceDataset& data, const DifferenceSolution& sol) {
  return quantile_sup(difference_residuals(data, sol.Q), data.delta);
}

DifferenceSolution integrate_difference(const DifferenceDataset& data, const FEConfig& cfg) {
  check_common(data.d, data.ball, data.A, data.delta);
  const int d = data.d;
  const int D = data.degree;
  require(D >= 0 && D <= 6, "degree bound must lie in [0, 6]", "/degree");
  require(data.points.cols() == d && data.offsets.cols() == d, "points and offsets must lie in R^d");
  const int N = static_cast<int>(data.points.rows());
  const int K = static_cast<int>(data.offsets.rows());
  require(data.differences.rows() == K && data.differences.cols() == N,
          "differences must be a (#offsets × #points) array", "/differences");
  require(data.differences.allFinite(), "non-finite differences", "/differences");
  require(K >= d + 2, "too few offsets to separate the affine part", "/offsets");

  // Work in x̂ = (x − c)/r, ĥ = h/r.
  const double rad = data.ball.radius;
  Mat xs = data.points;
  for (int i = 0; i < N; ++i) xs.row(i) = (data.points.row(i) - data.ball.center.transpose()) / rad;
  const Mat hs = data.offsets / rad;
  Mat Y = data.differences;

  DifferenceSolution sol;
  Polynomial Qhat = Polynomial::zero(d);
  const int partners = std::min(K - 1, 6);

  for (int level = D; level >= 1; --level) {
    const auto basis = multi_indices_upto(d, level);
    const auto top = multi_indices_exact(d, level);
    const Mat X = monomial_design(xs, basis);
    const int first_top = static_cast<int>(basis.size() - top.size());

    // Coefficient extraction, one robust fit per offset.
    const auto coeffs = map_indexed<Vec>(
        K, [&](long k) { return lad_fit(X, Y.row(k).transpose(), cfg.robust).beta; }, Exec::parallel);

    // Leading coefficients are linear in h plus a constant that cancels in
    // differences of paired offsets.
    Mat Xh(K * partners, d);
    for (int k = 0; k < K; ++k)
      for (int s = 1; s <= partners; ++s) Xh.row(k * partners + s - 1) = hs.row(k) - hs.row((k + s) % K);
    GradientField u = GradientField::zero(d, level);
    for (std::size_t t = 0; t < top.size(); ++t) {
      Vec yh(K * partners);
      for (int k = 0; k < K; ++k)
        for (int s = 1; s <= partners; ++s)
          yh(k * partners + s - 1) = coeffs[k](first_top + t) - coeffs[(k + s) % K](first_top + t);
      u.u.row(static_cast<int>(t)) = lad_fit(Xh, yh, cfg.robust).beta.transpose();
    }
    // u_{α,j} came from Δ_h q = Σ_j h_j ∂_j q + lower order, so it is the
    // degree-`level` part of ∂_j q; integrate to degree level+1.
    const CurlProjection proj = curl_project(u);
    sol.curl_distances.push_back(proj.distance);
    for (int k = 0; k < K; ++k) {
      const Vec h = hs.row(k).transpose();
      for (int i = 0; i < N; ++i) {
        const Vec x = xs.row(i).transpose();
        Y(k, i) -= proj.q(x + h) - proj.q(x);
      }
    }
    Qhat = Qhat + proj.q;
  }

  // Degree 0: Δ_hφ ≈ a(h) with a additive; solve the Cauchy instance
  // a(h) + a(h') − a(h + h') ≈ 0 through the additive solver.
  AdditiveFEData cauchy;
  cauchy.d = d;
  cauchy.ball = Ball{Vec::Zero(d), std::max(hs.rowwise().norm().maxCoeff(), 1.0)};
  cauchy.A = data.A;
  cauchy.delta = data.delta;
  Vec a(K);
  const Mat ones = Mat::Ones(N, 1);
  for (int k = 0; k < K; ++k) a(k) = lad_fit(ones, Y.row(k).transpose(), cfg.robust).beta(0);
  cauchy.f[0] = SampledFunction{hs, a};
  cauchy.f[1] = SampledFunction{hs, a};
  cauchy.f[2] = SampledFunction{hs, -a};
  const AffineFESolution lin = solve_additive_fe(cauchy, cfg);
  for (int j = 0; j < d; ++j) {
    Polynomial term = Polynomial::variable(d, j).scaled(lin.h[0].g(j));
    Qhat = Qhat + term;
  }

  sol.Q = Qhat.rescaled(data.ball.center, rad);
  sol.Q = sol.Q - Polynomial::constant_poly(d, sol.Q(data.ball.center));
  for (auto it = sol.Q.coef.begin(); it != sol.Q.coef.end();) {
    it = it->second == 0.0 ? sol.Q.coef.erase(it) : std::next(it);
  }
  sol.residual = audit_residual(data, sol);
  sol.bound = cfg.C * data.A;
  sol.inlier_fraction = fraction_within(difference_residuals(data, sol.Q), sol.bound);
  return sol;
}

// ---------------------------------------------------------------- Heisenberg

double heis_relation(const HeisFEData& data, int i, int k, int m) {
  const Vec x = data.a[0].points.row(i).transpose();
  const Vec y = data.a[1].points.row(k).transpose();
  return data.a[0].values(i) + data.a[1].values(k) + data.a[2].values(m) + sigma_L(data.L, x, y);
}

AdditiveFEData symmetrize(const HeisFEData& data) {
  AdditiveFEData out;
  out.d = 2 * data.d;
  out.ball = data.ball;
  out.A = data.A;
  out.delta = data.delta;
  const Vec avg = 0.5 * (data.a[0].values + data.a[1].values);
  out.f[0] = SampledFunction{data.a[0].points, avg};
  out.f[1] = SampledFunction{data.a[0].points, avg};
  out.f[2] = data.a[2];
  return out;
}

double sigma_sup_bound(const Mat& L, const Ball& ball) {
  const Mat Linv = L.inverse();
  const Mat K = Linv.transpose() * symplectic_J(static_cast<int>(L.rows() / 2)) * Linv;
  const double r = ball.radius;
  return r * r * spectral_norm(K) + 2.0 * r * (K * ball.center).norm();
}

namespace {

std::vector<double> heis_residuals(const HeisFEData& data, const std::array<AffineForm, 3>& psi) {
  return additive_residuals(data.a, psi);
}

}  // namespace

double audit_residual(const HeisFEData& data, const HeisFESolution& sol) {
  return quantile_sup(heis_residuals(data, sol.psi), data.delta);
}

HeisFESolution solve_heis_fe(const HeisFEData& data, const FEConfig& cfg) {
  require(data.d >= 1, "dimension must be positive", "/d");
  const int n2 = 2 * data.d;
  check_common(n2, data.ball, data.A, data.delta);
  require(data.L.rows() == n2 && data.L.cols() == n2, "L must be 2d × 2d", "/L");
  require(std::abs(data.L.determinant()) > 0.0, "L must be invertible", "/L");
  for (int j = 0; j < 3; ++j) check_function(data.a[j], n2, "/a" + std::to_string(j + 1));
  require(data.a[0].points.rows() == data.a[1].points.rows() &&
              (data.a[0].points - data.a[1].points).norm() == 0.0,
          "a1 and a2 must be sampled at the same points", "/a2/points");

  HeisFESolution sol;
  // (i) σ_L is antisymmetric, so the symmetrized relation is σ-free; recover ψ₃.
  const AffineFESolution sym_sol = solve_additive_fe(symmetrize(data), cfg);
  const Vec g = -sym_sol.h[2].g;
  // (ii) Peel ψ₃'s gradient and freeze: a_j − g·x is constant up to σ_L(·, y) + O(A).
  double c[2];
  for (int j = 0; j < 2; ++j) {
    const auto& f = data.a[j];
    const RobustFit loc = lad_fit(Mat::Ones(f.size(), 1), f.values - f.points * g, cfg.robust);
    c[j] = loc.beta(0);
  }
  sol.psi = {AffineForm{g, c[0]}, AffineForm{g, c[1]}, AffineForm{-g, -c[0] - c[1]}};
  sol.residual = audit_residual(data, sol);
  sol.bound = cfg.C * data.A;
  sol.inlier_fraction = fraction_within(heis_residuals(data, sol.psi), sol.bound);

  // (iii) Certificate and the symplectic normalisation of L⁻¹ = S′M, S = S′⁻¹.
  sol.sigma_sup = sigma_sup_bound(data.L, data.ball);
  sol.certificate_bound = cfg.C * data.A;
  sol.certified = sol.sigma_sup <= sol.certificate_bound;
  const SymplecticFactorization f = symplectic_factor(data.L.inverse());
  sol.S = f.S.inverse();
  sol.norm_SLinv = spectral_norm(sol.S * data.L.inverse());
  sol.S_bound = cfg.C * std::sqrt(data.A) * std::pow(data.ball.volume(), -1.0 / n2);
  return sol;
}

// ---------------------------------------------------------------- bilinear

namespace {

std::vector<double> bilinear_fit_residuals(const CMat& g, double v1, double v2) {
  const int n = static_cast<int>(g.rows());
  std::vector<double> r;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double u1 = double(i) / (n - 1), u2 = double(k) / (n - 1);
      r.push_back(std::abs(g(i, k) * std::exp(cdouble(0.0, -(u1 * v1 - u2 * v2))) - 1.0));
    }
  return r;
}

}  // namespace

double audit_residual(const BilinearPhaseData& data, const BilinearPhaseSolution& sol) {
  return quantile_sup(bilinear_fit_residuals(data.values, sol.v1, sol.v2), data.delta);
}

BilinearPhaseSolution estimate_bilinear_phase(const BilinearPhaseData& data, const FEConfig& cfg) {
  const int n = static_cast<int>(data.values.rows());
  require(n >= 3 && data.values.cols() == n, "bilinear samples must form an n × n grid with n ≥ 3", "/values");
  require(data.delta >= 0.0 && data.delta < 0.5, "exceptional fraction must lie in [0, 1/2)", "/delta");
  require(data.values.allFinite(), "non-finite samples", "/values");
  const double h = 1.0 / (n - 1);
  std::vector<double> d1, d2;
  for (int i = 0; i + 1 < n; ++i)
    for (int k = 0; k < n; ++k) d1.push_back(std::arg(data.values(i + 1, k) * std::conj(data.values(i, k))));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k + 1 < n; ++k) d2.push_back(std::arg(data.values(i, k + 1) * std::conj(data.values(i, k))));
  BilinearPhaseSolution sol;
  sol.v1 = median(d1) / h;
  sol.v2 = -median(d2) / h;
  if (std::max(std::abs(sol.v1), std::abs(sol.v2)) * h > 0.5 * kPi) {
    raise(ErrorCode::validation, "frequency beyond the aliasing limit of the sample spacing", "/values");
  }
  std::vector<double> dev;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) dev.push_back(std::abs(data.values(i, k) - 1.0));
  sol.eta_hat = quantile_sup(dev, data.delta);
  sol.residual = audit_residual(data, sol);
  sol.C = cfg.C;
  sol.consistent = std::abs(sol.v1) + std::abs(sol.v2) <= sol.C * sol.eta_hat + 1e-12;
  return sol;
}

}  // namespace sharpyoung
