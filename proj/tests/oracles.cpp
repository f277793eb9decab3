#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "sharpyoung/heisenberg.hpp"

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double lambda_min(const Mat& Q) { return Eigen::SelfAdjointEigenSolver<Mat>(Q).eigenvalues()(0); }

// Half-width at which |G| has dropped below e^{-40} in every direction.
double box_half_width(const Gaussian& g) { return std::sqrt(40.0 / lambda_min(g.Q)); }

std::vector<double> trapezoid_weights(int n, double h) {
  std::vector<double> w(n, h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

cdouble log_gauss(const Gaussian& g, const Vec& z) {
  const Vec r = z - g.a;
  return std::log(g.c) - r.dot(g.Q * r) + cdouble(0.0, g.b.dot(z));
}

double normal(Rng& rng, double s = 1.0) { return std::normal_distribution<double>(0.0, s)(rng); }
double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Mat random_orthogonal(Rng& rng, int n) {
  Mat G(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) G(i, k) = normal(rng);
  Eigen::HouseholderQR<Mat> qr(G);
  return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace

cdouble heis_tensor(const Triple& g, int n, double coupling) {
  // Frame: the (x₁, x₂)-marginal of the σ-free real product, whitened, box ±6.
  Eigen::Matrix<double, 6, 6> A0 = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> lin = Eigen::Matrix<double, 6, 1>::Zero();
  Eigen::Matrix<double, 3, 6> P[3];
  P[0].setZero();
  P[1].setZero();
  P[0].leftCols(3).setIdentity();
  P[1].rightCols(3).setIdentity();
  P[2] = -(P[0] + P[1]);
  for (int j = 0; j < 3; ++j) {
    A0 += P[j].transpose() * g[j].Q * P[j];
    lin += P[j].transpose() * (2.0 * g[j].Q * g[j].a);
  }
  const Eigen::Matrix<double, 6, 1> vstar = 0.5 * A0.ldlt().solve(lin);
  const int xs[4] = {0, 1, 3, 4}, ts[2] = {2, 5};
  Eigen::Matrix4d Axx;
  Eigen::Matrix<double, 4, 2> Axt;
  Eigen::Matrix2d Att;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) Axx(i, k) = A0(xs[i], xs[k]);
    for (int k = 0; k < 2; ++k) Axt(i, k) = A0(xs[i], ts[k]);
  }
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) Att(i, k) = A0(ts[i], ts[k]);
  const Eigen::Matrix4d Mx = Axx - Axt * Att.inverse() * Axt.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(0.5 * (Mx + Mx.transpose()));
  const Eigen::Matrix4d W = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal();
  const double log_jac = -0.5 * es.eigenvalues().array().log().sum();
  Eigen::Vector4d mu;
  for (int i = 0; i < 4; ++i) mu(i) = vstar(xs[i]);

  const double R = 6.0, h = 2 * R / (n - 1);
  const auto wt = trapezoid_weights(n, h);
  const std::array<Eigen::Vector2d, 3> pdir = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, -1)};
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  for (int j = 0; j < 3; ++j) A += g[j].Q(2, 2) * pdir[j] * pdir[j].transpose();
  const Eigen::Matrix2d Ainv = A.inverse();
  const double log_pref = std::log(kPi) - 0.5 * std::log(A.determinant()) + log_jac;

  cdouble total = 0.0;
  Vec z1(3), z2(3), z3(3);
  Eigen::Vector4d y;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1) {
          y << -R + i0 * h, -R + i1 * h, -R + k0 * h, -R + k1 * h;
          const Eigen::Vector4d x = mu + W * y;
          const double s = coupling * (x(0) * x(3) - x(1) * x(2));
          z1 << x(0), x(1), 0.0;
          z2 << x(2), x(3), 0.0;
          z3 << -x(0) - x(2), -x(1) - x(3), -s;
          const Vec* z[3] = {&z1, &z2, &z3};
          Eigen::Vector2cd beta = Eigen::Vector2cd::Zero();
          cdouble gamma = 0.0;
          for (int j = 0; j < 3; ++j) {
            const Vec r = *z[j] - g[j].a;
            const double qt = (g[j].Q * r)(2);
            beta += pdir[j].cast<cdouble>() * cdouble(-2.0 * qt, g[j].b(2));
            gamma += log_gauss(g[j], *z[j]);
          }
          const cdouble quad = (beta.transpose() * Ainv.cast<cdouble>() * beta)(0, 0);
          total += wt[i0] * wt[i1] * wt[k0] * wt[k1] * std::exp(log_pref + 0.25 * quad + gamma);
        }
  return total;
}

cdouble euclid_1d_quadrature(const Triple& g, int n) {
  const double w1 = box_half_width(g[0]), w2 = box_half_width(g[1]);
  const double h1 = 2 * w1 / (n - 1), h2 = 2 * w2 / (n - 1);
  const auto wt1 = trapezoid_weights(n, h1), wt2 = trapezoid_weights(n, h2);
  cdouble total = 0.0;
  Vec x(1), y(1), z(1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      x(0) = g[0].a(0) - w1 + i * h1;
      y(0) = g[1].a(0) - w2 + k * h2;
      z(0) = -x(0) - y(0);
      total += wt1[i] * wt2[k] * std::exp(log_gauss(g[0], x) + log_gauss(g[1], y) + log_gauss(g[2], z));
    }
  return total;
}

cdouble twisted_quadrature(const Triple& g, double lambda, int n) {
  const double w1 = box_half_width(g[0]), w2 = box_half_width(g[1]);
  const double h1 = 2 * w1 / (n - 1), h2 = 2 * w2 / (n - 1);
  const auto wt1 = trapezoid_weights(n, h1), wt2 = trapezoid_weights(n, h2);
  cdouble total = 0.0;
  Vec x(2), y(2), z(2);
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1) {
          x << g[0].a(0) - w1 + i0 * h1, g[0].a(1) - w1 + i1 * h1;
          y << g[1].a(0) - w2 + k0 * h2, g[1].a(1) - w2 + k1 * h2;
          z = -x - y;
          const double s = x(0) * y(1) - x(1) * y(0);
          const cdouble e = log_gauss(g[0], x) + log_gauss(g[1], y) + log_gauss(g[2], z) + cdouble(0.0, lambda * s);
          total += wt1[i0] * wt1[i1] * wt2[k0] * wt2[k1] * std::exp(e);
        }
  return total;
}

double lp_norm_1d(const Gaussian& g, double p, int n) {
  const double w = box_half_width(g);
  const double h = 2 * w / (n - 1);
  const auto wt = trapezoid_weights(n, h);
  double acc = 0.0;
  Vec x(1);
  for (int i = 0; i < n; ++i) {
    x(0) = g.a(0) - w + i * h;
    acc += wt[i] * std::pow(std::abs(g(x)), p);
  }
  return std::pow(acc, 1.0 / p);
}

Mat random_spd(Rng& rng, int n, double lo, double hi) {
  const Mat O = random_orthogonal(rng, n);
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev(i) = uniform(rng, lo, hi);
  return sym(O * ev.asDiagonal() * O.transpose());
}

Mat random_spd_cond(Rng& rng, int n, double cond) {
  const Mat O = random_orthogonal(rng, n);
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev(i) = std::pow(cond, uniform(rng, -0.5, 0.5));
  ev(0) = std::pow(cond, -0.5);
  ev(n - 1) = std::pow(cond, 0.5);
  return sym(O * ev.asDiagonal() * O.transpose());
}

Triple corpus_triple(Rng& rng, double max_cond) {
  Triple t;
  for (auto& g : t) {
    g = random_gaussian(rng, 3);
    g.Q = random_spd_cond(rng, 3, std::exp(uniform(rng, 0.0, std::log(max_cond))));
  }
  return t;
}

Gaussian random_gaussian(Rng& rng, int n, double freq, double shift) {
  Gaussian g;
  g.Q = random_spd(rng, n, 0.5, 2.0);
  g.a = Vec(n);
  g.b = Vec(n);
  for (int i = 0; i < n; ++i) {
    g.a(i) = uniform(rng, -shift, shift);
    g.b(i) = uniform(rng, -freq, freq);
  }
  g.c = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, -kPi, kPi));
  return g;
}

Triple random_triple(Rng& rng, int n) { return {random_gaussian(rng, n), random_gaussian(rng, n), random_gaussian(rng, n)}; }

Mat random_symplectic(Rng& rng, int d, int factors) {
  const int n = 2 * d;
  Mat S = Mat::Identity(n, n);
  for (int f = 0; f < factors; ++f) {
    Mat F = Mat::Identity(n, n);
    Mat A(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) A(i, k) = normal(rng, 0.4);
    switch (f % 3) {
      case 0:
        F.topRightCorner(d, d) = sym(A);
        break;
      case 1:
        F.bottomLeftCorner(d, d) = sym(A);
        break;
      default: {
        const Mat B = Mat::Identity(d, d) + 0.5 * A;
        F.topLeftCorner(d, d) = B;
        F.bottomRightCorner(d, d) = B.inverse().transpose();
      }
    }
    S = S * F;
  }
  return S;
}

Mat random_matrix(Rng& rng, int n, double cond_cap) {
  for (;;) {
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) M(i, k) = normal(rng);
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec s = svd.singularValues();
    if (s(0) / s(n - 1) <= cond_cap) return M;
  }
}

SymmetryElement random_element(Rng& rng, int d, int family) {
  const int n = 2 * d;
  auto rvec = [&](int m, double s) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v(i) = normal(rng, s);
    return v;
  };
  switch (family) {
    case 0:
      return Dilation{uniform(rng, 0.6, 1.6)};
    case 1: {
      BiTranslation b;
      for (auto& u : b.u) u = HeisPoint{rvec(n, 0.4), normal(rng, 0.4)};
      return b;
    }
    case 2:
      return Symplectic{random_symplectic(rng, d, 2)};
    case 3: {
      VerticalShear s;
      const Vec g = rvec(n, 0.3);
      const double c1 = normal(rng, 0.3), c2 = normal(rng, 0.3);
      s.phi = {AffineForm{g, c1}, AffineForm{g, c2}, AffineForm{g, -c1 - c2}};
      return s;
    }
    default:
      return Modulation{rvec(n, 0.4)};
  }
}

SymmetryWord random_word(Rng& rng, int d, int max_len) {
  const int len = std::uniform_int_distribution<int>(1, max_len)(rng);
  SymmetryWord w;
  for (int i = 0; i < len; ++i) w.push_back(random_element(rng, d, std::uniform_int_distribution<int>(0, 4)(rng)));
  return w;
}

std::array<Exponent, 3> random_interior_exponents(Rng& rng) {
  const double r1 = uniform(rng, 0.55, 0.95), r2 = uniform(rng, 0.55, 0.95);
  const double r3 = 2.0 - r1 - r2;
  return {Exponent::finite(1.0 / r1), Exponent::finite(1.0 / r2), Exponent::finite(1.0 / r3)};
}

Mat ball_grid(int d, const Vec& center, double r, int n) {
  std::vector<Vec> pts;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x(i) = center(i) - r + 2.0 * r * idx[i] / (n - 1);
    if ((x - center).norm() <= r * (1 + 1e-12)) pts.push_back(x);
    int k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
  Mat m(static_cast<int>(pts.size()), d);
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<int>(i)) = pts[i].transpose();
  return m;
}

}  // namespace oracle
