#pragma once

#include <array>

#include "sharpyoung/exponents.hpp"
#include "sharpyoung/linalg.hpp"

namespace sharpyoung {

// G(x) = c·exp(−(x−a)ᵀQ(x−a) + i b·x) with Q real SPD.
// On the Heisenberg group the variable is (x, t) ∈ R^{2d+1} with t last.
struct Gaussian {
  cdouble c{1.0, 0.0};
  Mat Q;
  Vec a;
  Vec b;

  int dim() const { return static_cast<int>(Q.rows()); }
  void validate() const;

  cdouble operator()(const Vec& x) const;

  // exp(−xᵀQx + βᵀx + κ): β = 2Qa + ib, κ = log c − aᵀQa.
  CVec beta() const;
  cdouble kappa() const;
};

using Triple = std::array<Gaussian, 3>;

// Dimension d of a Heisenberg-group Gaussian (dim = 2d + 1).
int heis_d(const Gaussian& g);

double log_lp_norm(const Gaussian& g, const Exponent& p);
double lp_norm(const Gaussian& g, const Exponent& p);

// z ↦ G(Mz + m).
Gaussian pullback(const Gaussian& g, const Mat& M, const Vec& m);
// G(z)·e^{iu·x}; u acts on the leading u.size() coordinates.
Gaussian modulate(const Gaussian& g, const Vec& u);

// Canonical compatible Heisenberg triple
//   G_j(x, t) = c_j exp(−γ_j|Lx|² − γ_j a t² + i b t).
struct CompatibleTripleSpec {
  std::array<Exponent, 3> p;
  Mat L;
  double a = 1.0;
  double b = 0.0;
  std::array<cdouble, 3> c{cdouble(1.0), cdouble(1.0), cdouble(1.0)};
};

Triple build_compatible_triple(const CompatibleTripleSpec& spec);

// Euclidean compatible triple on R^m: c_j exp(−γ_j|L(x−a_j)|² + i b·x), Σ a_j = 0.
Triple build_compatible_euclid(const std::array<Exponent, 3>& p, const Mat& L,
                               const std::array<Vec, 3>& centers, const Vec& b,
                               const std::array<cdouble, 3>& c);

// max(a^{1/2}, a, |b|)·‖L⁻¹‖².
double diffuseness_measure(double a, double b, const Mat& L);

}  // namespace sharpyoung
