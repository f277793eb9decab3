#include "sharpyoung/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

void Gaussian::validate() const {
  const int n = dim();
  require(n > 0 && Q.cols() == n, "Gaussian: Q must be square and non-empty", "/Q");
  require(a.size() == n, "Gaussian: center has wrong dimension", "/a");
  require(b.size() == n, "Gaussian: frequency has wrong dimension", "/b");
  require(Q.allFinite() && a.allFinite() && b.allFinite() && std::isfinite(c.real()) &&
              std::isfinite(c.imag()),
          "Gaussian: non-finite parameter");
  require((Q - Q.transpose()).norm() <= 1e-12 * (1.0 + Q.norm()), "Gaussian: Q is not symmetric", "/Q");
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(sym(Q), Eigen::EigenvaluesOnly).eigenvalues();
  require(ev(0) > 1e-12 * ev(n - 1), "Gaussian: Q is degenerate or not positive definite", "/Q");
  require(c != cdouble(0.0), "Gaussian: zero amplitude", "/c");
}

cdouble Gaussian::operator()(const Vec& x) const {
  const Vec y = x - a;
  return c * std::exp(cdouble(-y.dot(Q * y), b.dot(x)));
}

CVec Gaussian::beta() const {
  CVec out(dim());
  out.real() = 2.0 * Q * a;
  out.imag() = b;
  return out;
}

cdouble Gaussian::kappa() const { return std::log(c) - a.dot(Q * a); }

int heis_d(const Gaussian& g) {
  require(g.dim() % 2 == 1, "Heisenberg Gaussian must have odd dimension 2d+1");
  return (g.dim() - 1) / 2;
}

double log_lp_norm(const Gaussian& g, const Exponent& p) {
  const double log_c = std::log(std::abs(g.c));
  if (p.infinite) return log_c;
  Eigen::LLT<Mat> llt(p.value * g.Q);
  require(llt.info() == Eigen::Success, "Gaussian: Q is not positive definite", "/Q");
  double log_det = 0.0;
  const Mat L = llt.matrixL();
  for (int i = 0; i < L.rows(); ++i) log_det += 2.0 * std::log(L(i, i));
  return log_c + (0.5 * g.dim() * std::log(std::numbers::pi) - 0.5 * log_det) / p.value;
}

double lp_norm(const Gaussian& g, const Exponent& p) {
  return p.infinite ? std::abs(g.c) : std::exp(log_lp_norm(g, p));
}

Gaussian pullback(const Gaussian& g, const Mat& M, const Vec& m) {
  require(M.rows() == g.dim() && M.cols() == g.dim() && m.size() == g.dim(),
          "pullback: map has wrong dimension");
  Gaussian out;
  out.Q = sym(M.transpose() * g.Q * M);
  out.a = M.partialPivLu().solve(g.a - m);
  out.b = M.transpose() * g.b;
  out.c = g.c * std::exp(cdouble(0.0, g.b.dot(m)));
  return out;
}

Gaussian modulate(const Gaussian& g, const Vec& u) {
  require(u.size() <= g.dim(), "modulate: frequency has too many components");
  Gaussian out = g;
  out.b.head(u.size()) += u;
  return out;
}

Triple build_compatible_triple(const CompatibleTripleSpec& spec) {
  const ExponentProfile prof = make_profile(spec.p);
  require(prof.interior(), "compatible triples need interior exponents");
  const int n2 = static_cast<int>(spec.L.rows());
  require(n2 > 0 && n2 % 2 == 0 && spec.L.cols() == n2, "L must be square of even size", "/L");
  require(std::abs(spec.L.determinant()) > 0.0, "L must be invertible", "/L");
  require(spec.a > 0.0 && std::isfinite(spec.a), "a must be positive", "/a");
  const Mat LtL = sym(spec.L.transpose() * spec.L);
  Triple out;
  for (int j = 0; j < 3; ++j) {
    const double gj = (*prof.gamma)[j];
    Gaussian& g = out[j];
    g.c = spec.c[j];
    g.Q = Mat::Zero(n2 + 1, n2 + 1);
    g.Q.topLeftCorner(n2, n2) = gj * LtL;
    g.Q(n2, n2) = gj * spec.a;
    g.a = Vec::Zero(n2 + 1);
    g.b = Vec::Zero(n2 + 1);
    g.b(n2) = spec.b;
  }
  return out;
}

Triple build_compatible_euclid(const std::array<Exponent, 3>& p, const Mat& L,
                               const std::array<Vec, 3>& centers, const Vec& b,
                               const std::array<cdouble, 3>& c) {
  const ExponentProfile prof = make_profile(p);
  require(prof.interior(), "compatible triples need interior exponents");
  const int m = static_cast<int>(L.rows());
  require((centers[0] + centers[1] + centers[2]).norm() <= 1e-12 * (1.0 + centers[0].norm()),
          "compatible centers must sum to zero");
  const Mat LtL = sym(L.transpose() * L);
  Triple out;
  for (int j = 0; j < 3; ++j) {
    out[j].c = c[j];
    out[j].Q = (*prof.gamma)[j] * LtL;
    out[j].a = centers[j];
    out[j].b = b;
    require(out[j].a.size() == m && out[j].b.size() == m, "compatible triple: dimension mismatch");
  }
  return out;
}

double diffuseness_measure(double a, double b, const Mat& L) {
  const Mat Linv = L.inverse();
  const double n = spectral_norm(Linv);
  return std::max({std::sqrt(a), a, std::abs(b)}) * n * n;
}

}  // namespace sharpyoung
