#pragma once

#include <vector>

namespace sharpyoung {

enum class Scheme { hermite, trapezoid };

struct QuadratureSpec {
  Scheme scheme = Scheme::trapezoid;  // rule for the auxiliary ξ-axis
  int xi_nodes = 64;          // initial ξ-node count for the Heisenberg reduction
  double multiplier = 8.0;    // truncation half-width in whitened units (trapezoid rules)
  int oracle_nodes = 24;      // per-axis nodes of the oracle tensor grid
  double rel_tol = 1e-10;     // accepted relative change between refinement levels
  int max_refinements = 8;    // node doublings before giving up
};

// nodes ≥ 8, multiplier ≥ 4, rel_tol > 0, max_refinements ≥ 0.
void validate(const QuadratureSpec& spec);

// One-dimensional rule ∫ f ≈ Σ w_k f(y_k). For Gauss–Hermite the weight e^{−y²}
// is part of the rule: ∫ e^{−y²} f(y) dy ≈ Σ w_k f(y_k).
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

// Golub–Welsch; cached per n and safe to call concurrently.
const Rule& gauss_hermite(int n);
// n equispaced nodes on [−h, h] with trapezoid weights.
Rule trapezoid(int n, double half_width);

}  // namespace sharpyoung
