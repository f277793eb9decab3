#include "sharpyoung/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

namespace {

Rule golub_welsch_hermite(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int k = 0; k < n; ++k) {
    r.nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    r.weights[k] = sqrt_pi * v0 * v0;
  }
  // Symmetrize away round-off so odd moments vanish exactly.
  for (int k = 0; k < n / 2; ++k) {
    const double y = 0.5 * (r.nodes[n - 1 - k] - r.nodes[k]);
    const double w = 0.5 * (r.weights[n - 1 - k] + r.weights[k]);
    r.nodes[k] = -y;
    r.nodes[n - 1 - k] = y;
    r.weights[k] = r.weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const Rule& gauss_hermite(int n) {
  require(n >= 1 && n <= 4096, "Gauss-Hermite node count out of range");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(golub_welsch_hermite(n));
  return *slot;
}

Rule trapezoid(int n, double half_width) {
  require(n >= 2 && half_width > 0.0, "trapezoid rule needs at least two nodes and a positive width");
  Rule r;
  const double h = 2.0 * half_width / (n - 1);
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(-half_width + k * h);
    r.weights.push_back((k == 0 || k == n - 1) ? 0.5 * h : h);
  }
  return r;
}

void validate(const QuadratureSpec& spec) {
  require(spec.xi_nodes >= 8, "xi_nodes must be at least 8", "/xi_nodes");
  require(spec.oracle_nodes >= 8, "oracle_nodes must be at least 8", "/oracle_nodes");
  require(spec.multiplier >= 4.0 && std::isfinite(spec.multiplier), "multiplier must be at least 4", "/multiplier");
  require(spec.rel_tol > 0.0 && std::isfinite(spec.rel_tol), "rel_tol must be positive", "/rel_tol");
  require(spec.max_refinements >= 0, "max_refinements must be non-negative", "/max_refinements");
}

}  // namespace sharpyoung
