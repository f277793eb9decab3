#include "sharpyoung/symplectic_factor.hpp"

#include <cmath>

#include "sharpyoung/error.hpp"
#include "sharpyoung/heisenberg.hpp"

namespace sharpyoung {

namespace {

// Orthonormal basis of the orthogonal complement of span{v, w} inside span(U).
Mat deflate(const Mat& U, const Vec& v, const Vec& w) {
  Mat P = U - v * (v.transpose() * U) - w * (w.transpose() * U);
  Eigen::JacobiSVD<Mat> svd(P, Eigen::ComputeThinU);
  const int keep = static_cast<int>(U.cols()) - 2;
  return svd.matrixU().leftCols(keep);
}

// Unit vector of the top eigenspace (in full coordinates). Within a degenerate
// eigenspace pick the projection of the standard basis vector it captures best, so
// that e.g. L = I factors as S = I, M = I.
Vec top_eigenspace_vector(const Mat& U, const Eigen::SelfAdjointEigenSolver<Mat>& es) {
  const Vec& mu = es.eigenvalues();
  const int m = static_cast<int>(mu.size());
  int first = m - 1;
  while (first > 0 && mu(first - 1) >= mu(m - 1) * (1.0 - 1e-9)) --first;
  const Mat P = U * es.eigenvectors().rightCols(m - first);
  if (P.cols() == 1) return P.col(0).normalized();
  int best = 0;
  double best_norm = -1.0;
  for (int k = 0; k < P.rows(); ++k) {
    const double nk = P.row(k).norm();
    if (nk > best_norm * (1.0 + 1e-12)) {
      best = k;
      best_norm = nk;
    }
  }
  return (P * P.row(best).transpose()).normalized();
}

}  // namespace

AntisymmetricCanonical antisymmetric_canonical(const Mat& K) {
  const int n = static_cast<int>(K.rows());
  require(n > 0 && n % 2 == 0 && K.cols() == n, "K must be square of even size", "/K");
  require(K.allFinite(), "K has non-finite entries", "/K");
  const double scale = K.norm();
  require(scale > 0.0 && (K + K.transpose()).norm() <= 1e-10 * scale, "K must be antisymmetric", "/K");
  const int d = n / 2;

  AntisymmetricCanonical c;
  c.O1 = Mat::Zero(n, n);
  c.t = Vec::Zero(d);
  Mat U = Mat::Identity(n, n);
  for (int i = 0; i < d; ++i) {
    const Mat Kr = U.transpose() * K * U;
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(Kr.transpose() * Kr));
    Vec v = top_eigenspace_vector(U, es);
    for (int k = 0; k < n; ++k) {
      if (std::abs(v(k)) > 1e-12) {
        if (v(k) < 0.0) v = -v;
        break;
      }
    }
    Vec w = K.transpose() * v;
    const double t = w.norm();
    require(t > 1e-12 * scale, "K is singular", "/K");
    w /= t;
    c.t(i) = t;
    c.O1.row(2 * i) = v.transpose();
    c.O1.row(2 * i + 1) = w.transpose();
    if (i + 1 < d) U = deflate(U, v, w);
  }
  return c;
}

SymplecticFactorization symplectic_factor(const Mat& L) {
  const int n = static_cast<int>(L.rows());
  require(n > 0 && n % 2 == 0 && L.cols() == n, "L must be square of even size", "/L");
  require(L.allFinite(), "L has non-finite entries", "/L");
  Eigen::JacobiSVD<Mat> svdL(L);
  const Vec sv = svdL.singularValues();
  require(sv(n - 1) > 0.0 && sv(0) / sv(n - 1) < 1e10, "L is singular or too ill-conditioned", "/L");
  const int d = n / 2;
  const Mat J = symplectic_J(d);
  const Mat K = L.transpose() * J * L;

  const AntisymmetricCanonical c = antisymmetric_canonical(K);
  SymplecticFactorization f;
  f.O1 = c.O1;
  f.t = c.t;
  f.T = Mat::Zero(n, n);
  f.O2 = Mat::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    f.T(2 * i, 2 * i) = f.T(2 * i + 1, 2 * i + 1) = std::sqrt(f.t(i));
    f.O2(i, 2 * i) = 1.0;
    f.O2(d + i, 2 * i + 1) = 1.0;
  }
  f.M = f.O2 * f.T * f.O1;
  // M⁻¹ = 𝒪₁ᵀ T⁻¹ 𝒪₂ᵀ, no general inverse needed.
  const Mat Tinv = f.T.diagonal().cwiseInverse().asDiagonal();
  f.S = L * f.O1.transpose() * Tinv * f.O2.transpose();
  f.residual = (f.S.transpose() * J * f.S - J).norm();
  f.reconstruction = (L - f.S * f.M).norm() / L.norm();
  return f;
}

}  // namespace sharpyoung
