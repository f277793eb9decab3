#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sharpyoung {

using cdouble = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Largest singular value.
double spectral_norm(const Mat& m);

// log ∫_{R^n} exp(-vᵀ(R + iτB)v + wᵀv) dv for a one-parameter family of
// complex symmetric matrices with fixed SPD real part R and real symmetric B.
// Factorizes once; each evaluation is O(n²). The square root of the
// determinant is taken on the branch continuous from the real axis, which is
// exact because every eigenvalue of L⁻¹(R + iτB)L⁻ᵀ is 1 + iμ with Re = 1.
class GaussianPencil {
 public:
  GaussianPencil(const Mat& R, const Mat& B);

  int dim() const { return static_cast<int>(L_.rows()); }
  cdouble log_integral(double tau, const CVec& w) const;

 private:
  Mat L_;       // lower Cholesky factor of R
  Mat V_;       // eigenvectors of L⁻¹BL⁻ᵀ
  Vec nu_;      // eigenvalues of L⁻¹BL⁻ᵀ
  Mat LinvT_V_; // L⁻ᵀV, maps the diagonal frame back
  double log_det_half_ = 0.0;
};

// log ∫ exp(-vᵀAv + wᵀv) dv for complex symmetric A with SPD real part.
cdouble log_gaussian_integral(const CMat& A, const CVec& w);

// Real symmetric part, guards against round-off asymmetry.
inline Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

// Principal square root of an SPD matrix.
Mat spd_sqrt(const Mat& m);

}  // namespace sharpyoung
