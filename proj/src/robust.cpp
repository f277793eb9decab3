#include "sharpyoung/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

double median(std::vector<double> v) {
  require(!v.empty(), "median of an empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

double weighted_median(const std::vector<double>& values, const std::vector<double>& weights) {
  require(!values.empty() && values.size() == weights.size(), "weighted median: bad sample");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double acc = 0.0;
  for (auto i : idx) {
    acc += weights[i];
    if (acc >= 0.5 * total) return values[i];
  }
  return values[idx.back()];
}

RobustFit lad_fit(const Mat& X, const Vec& y, const RobustOptions& opt) {
  require(X.rows() == y.size(), "robust fit: design and data sizes differ");
  require(X.rows() >= X.cols() && X.cols() > 0, "robust fit: fewer samples than unknowns");
  Eigen::ColPivHouseholderQR<Mat> qr0(X);
  qr0.setThreshold(1e-10);
  require(qr0.rank() == X.cols(), "degenerate sampling: design matrix is rank deficient");

  const double scale = 1.0 + y.cwiseAbs().maxCoeff();
  const double floor = opt.weight_floor * scale;
  RobustFit fit;
  fit.beta = qr0.solve(y);
  Vec w(y.size());
  for (fit.iterations = 1; fit.iterations < opt.max_iterations; ++fit.iterations) {
    const Vec r = y - X * fit.beta;
    for (int i = 0; i < r.size(); ++i) w(i) = std::sqrt(1.0 / std::max(std::abs(r(i)), floor));
    const Vec next = (w.asDiagonal() * X).colPivHouseholderQr().solve(w.asDiagonal() * y);
    const double step = (next - fit.beta).norm();
    fit.beta = next;
    if (step <= 1e-14 * (1.0 + fit.beta.norm())) break;
  }
  fit.residuals = y - X * fit.beta;
  std::vector<double> absr(fit.residuals.size());
  for (int i = 0; i < fit.residuals.size(); ++i) absr[i] = std::abs(fit.residuals(i));
  fit.median_abs = median(absr);
  const double cut = std::max(opt.inlier_factor * fit.median_abs, 1e-12 * scale);
  fit.inlier.resize(absr.size());
  for (std::size_t i = 0; i < absr.size(); ++i) fit.inlier[i] = absr[i] <= cut;
  return fit;
}

}  // namespace sharpyoung
