#pragma once

#include <vector>

#include "sharpyoung/linalg.hpp"

namespace sharpyoung {

struct RobustOptions {
  int max_iterations = 50;
  double weight_floor = 1e-8;    // relative to the data scale
  double inlier_factor = 3.0;    // inliers: |r| ≤ factor · median|r|
};

struct RobustFit {
  Vec beta;
  Vec residuals;            // y − Xβ
  std::vector<char> inlier;
  double median_abs = 0.0;  // median |r|
  int iterations = 0;
};

// Least absolute deviations by iteratively reweighted least squares.
// Throws a validation error when X is rank deficient.
RobustFit lad_fit(const Mat& X, const Vec& y, const RobustOptions& opt = {});

double median(std::vector<double> v);

// Weighted median: the smallest value at which cumulative weight reaches half.
double weighted_median(const std::vector<double>& values, const std::vector<double>& weights);

}  // namespace sharpyoung
