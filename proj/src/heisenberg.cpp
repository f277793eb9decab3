#include "sharpyoung/heisenberg.hpp"

#include "sharpyoung/error.hpp"

namespace sharpyoung {

Mat symplectic_J(int d) {
  Mat J = Mat::Zero(2 * d, 2 * d);
  J.topRightCorner(d, d).setIdentity();
  J.bottomLeftCorner(d, d) = -Mat::Identity(d, d);
  return J;
}

double sigma(const Vec& x, const Vec& y) {
  require(x.size() == y.size() && x.size() % 2 == 0, "sigma: operands must share an even dimension");
  const int d = static_cast<int>(x.size() / 2);
  // xᵀJy without forming J
  return x.head(d).dot(y.tail(d)) - x.tail(d).dot(y.head(d));
}

double sigma_L(const Mat& L, const Vec& x, const Vec& y) {
  require(L.rows() == L.cols() && L.rows() == x.size(), "sigma_L: L must be square and match the vectors", "/L");
  Eigen::PartialPivLU<Mat> lu(L);
  require(lu.rcond() > 1e-12, "sigma_L: L is singular or too ill-conditioned", "/L");
  return sigma(lu.solve(x), lu.solve(y));
}

HeisPoint heis_mul(const HeisPoint& a, const HeisPoint& b) {
  require(a.x.size() == b.x.size(), "heis_mul: dimension mismatch");
  return {a.x + b.x, a.t + b.t + sigma(a.x, b.x)};
}

HeisPoint heis_inv(const HeisPoint& a) { return {-a.x, -a.t}; }

HeisPoint heis_identity(int d) { return {Vec::Zero(2 * d), 0.0}; }

bool is_symplectic(const Mat& S, double tol) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0) return false;
  const Mat J = symplectic_J(static_cast<int>(S.rows() / 2));
  if (tol < 0.0) {
    const double n = spectral_norm(S);
    tol = 1e-10 * (1.0 + n * n);
  }
  return (S.transpose() * J * S - J).norm() <= tol;
}

}  // namespace sharpyoung
