#pragma once

#include "sharpyoung/gaussian.hpp"
#include "sharpyoung/kernels.hpp"
#include "sharpyoung/quadrature.hpp"

namespace sharpyoung {

enum class SettingKind { euclid, twisted, heis };

struct Setting {
  SettingKind kind = SettingKind::heis;
  double lambda = 0.0;  // twist parameter, twisted setting only
};

SettingKind parse_setting(const std::string& name);

// log T for ∫_{x₁+x₂+x₃=0} G₁G₂G₃ on R^m, closed form. The principal complex
// logarithm's imaginary part is only meaningful modulo 2π.
cdouble log_trilinear_euclid(const Triple& g);
cdouble trilinear_euclid(const Triple& g);

// ∫∫ e^{iλσ(x₁,x₂)} G₁(x₁)G₂(x₂)G₃(−x₁−x₂) on R^{2d} × R^{2d}, closed form.
cdouble log_trilinear_twisted(const Triple& g, double lambda);
cdouble trilinear_twisted(const Triple& g, double lambda);

struct HeisValue {
  cdouble log_value;
  int nodes = 0;                 // ξ-nodes of the accepted level
  double refinement_change = 0;  // relative change against the previous level
  cdouble value() const { return std::exp(log_value); }
};

// ∫_{z₁z₂z₃=0} G₁(z₁)G₂(z₂)G₃(z₃) on the Heisenberg group. The central
// variable's Gaussian factor is written as a Fourier integral in ξ; for each ξ
// the remaining integral is a complex Gaussian in closed form. The ξ-integral uses
// spec.scheme (truncated trapezoid by default, or Gauss–Hermite) with node doubling
// until the relative change is ≤ rel_tol.
// `coupling` scales σ in the group law (0 gives the Euclidean product law).
HeisValue trilinear_heis(const Triple& g, const QuadratureSpec& spec = {}, Exec exec = Exec::parallel,
                         double coupling = 1.0);

// Independent check of trilinear_heis: for fixed x₁ the constraint is affine in
// (x₂, t₁, t₂), so that inner integral is closed form; x₁ is integrated by a
// truncated tensor trapezoid rule in whitened coordinates with oracle_nodes per
// axis, refined n → 2n − 1 until the relative change is ≤ rel_tol (within a
// 2e8-point budget).
HeisValue trilinear_oracle(const Triple& g, const QuadratureSpec& spec = {}, Exec exec = Exec::parallel,
                           double coupling = 1.0);

// |T(G)| / Π‖G_j‖_{p_j}.
double phi_ratio(const Triple& g, const ExponentProfile& prof, const Setting& setting,
                 const QuadratureSpec& spec = {}, Exec exec = Exec::parallel);

// Number of one-dimensional factors k for which A_p^k is the sharp bound.
int sharp_power(const Triple& g, const Setting& setting);

}  // namespace sharpyoung
