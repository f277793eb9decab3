#pragma once

#include <array>
#include <optional>
#include <string>

namespace sharpyoung {

// A Lebesgue exponent in [1, ∞]; ∞ is represented exactly.
struct Exponent {
  double value = 1.0;
  bool infinite = false;

  static Exponent inf() { return {0.0, true}; }
  static Exponent finite(double v) { return {v, false}; }
  // Accepts "inf", "∞", rationals like "3/2", or decimals.
  static Exponent parse(const std::string& text);

  double reciprocal() const { return infinite ? 0.0 : 1.0 / value; }
  // Hölder conjugate p' with 1/p + 1/p' = 1.
  Exponent conjugate() const;
  bool is_endpoint() const { return infinite || value == 1.0; }
  std::string str() const;
};

struct ExponentProfile {
  std::array<Exponent, 3> p;
  std::array<Exponent, 3> q;  // conjugates
  double A_p = 1.0;
  // Gaussian scaling ratios γ_j = p'_j / p'_1, absent at endpoints.
  std::optional<std::array<double, 3>> gamma;

  bool interior() const { return gamma.has_value(); }
  // A_p^k, the sharp constant for a product structure of k one-dimensional factors.
  double A_power(int k) const;
};

// Validates Σ 1/p_j = 2 (within 1e-12) and p_j ∈ [1, ∞].
ExponentProfile make_profile(const std::array<Exponent, 3>& p);

// Parses "p1,p2,p3".
std::array<Exponent, 3> parse_exponent_triple(const std::string& text);

// Π_j p_j^{1/(2p_j)} q_j^{-1/(2q_j)}; each factor is 1 at p ∈ {1, ∞}.
double sharp_constant(const std::array<Exponent, 3>& p);

// max_j |γ_j(γ_k + γ_l)/D − 1/p_j| with D = γ₁γ₂ + γ₁γ₃ + γ₂γ₃. Vanishes exactly
// at critical points of the one-dimensional Gaussian ratio in the scalings.
double stationarity_residual(const std::array<double, 3>& gamma, const std::array<Exponent, 3>& p);

}  // namespace sharpyoung
