#include "sharpyoung/linalg.hpp"

#include <cmath>
#include <numbers>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

GaussianPencil::GaussianPencil(const Mat& R, const Mat& B) {
  Eigen::LLT<Mat> llt(sym(R));
  if (llt.info() != Eigen::Success) {
    raise(ErrorCode::validation, "real part of the quadratic form is not positive definite");
  }
  L_ = llt.matrixL();
  for (int i = 0; i < L_.rows(); ++i) log_det_half_ += std::log(L_(i, i));

  const Eigen::TriangularView<const Mat, Eigen::Lower> Lv(L_);
  Mat M = Lv.solve(sym(B));
  M = Lv.solve(M.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(M));
  V_ = es.eigenvectors();
  nu_ = es.eigenvalues();
  LinvT_V_ = L_.transpose().triangularView<Eigen::Upper>().solve(V_);
}

cdouble GaussianPencil::log_integral(double tau, const CVec& w) const {
  const int n = dim();
  // A = L V (I + iτ diag ν) Vᵀ Lᵀ
  cdouble log_det_half = log_det_half_;
  CVec y = LinvT_V_.transpose().cast<cdouble>() * w;  // Vᵀ L⁻¹ w
  cdouble quad = 0.0;
  for (int k = 0; k < n; ++k) {
    const cdouble f(1.0, tau * nu_(k));
    log_det_half += 0.5 * std::log(f);
    quad += y(k) * y(k) / f;
  }
  return 0.5 * n * std::log(std::numbers::pi) - log_det_half + 0.25 * quad;
}

cdouble log_gaussian_integral(const CMat& A, const CVec& w) {
  GaussianPencil pencil(A.real(), A.imag());
  return pencil.log_integral(1.0, w);
}

Mat spd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(m));
  if (es.eigenvalues().minCoeff() <= 0.0) {
    raise(ErrorCode::validation, "matrix is not positive definite");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace sharpyoung
