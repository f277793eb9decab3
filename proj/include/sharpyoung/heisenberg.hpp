#pragma once

#include "sharpyoung/linalg.hpp"

namespace sharpyoung {

// Point (x, t) of the Heisenberg group on R^{2d} × R.
struct HeisPoint {
  Vec x;
  double t = 0.0;

  int d() const { return static_cast<int>(x.size() / 2); }
};

// Standard symplectic matrix J = [[0, I], [-I, 0]] of size 2d.
Mat symplectic_J(int d);

// σ(x, y) = xᵀJy.
double sigma(const Vec& x, const Vec& y);

// σ_L(x, y) = σ(L⁻¹x, L⁻¹y).
double sigma_L(const Mat& L, const Vec& x, const Vec& y);

// (x, t)(x', t') = (x + x', t + t' + σ(x, x')).
HeisPoint heis_mul(const HeisPoint& a, const HeisPoint& b);
HeisPoint heis_inv(const HeisPoint& a);
HeisPoint heis_identity(int d);

// ‖SᵀJS − J‖_F ≤ tol; a negative tol selects 1e-10·(1 + ‖S‖²).
bool is_symplectic(const Mat& S, double tol = -1.0);

}  // namespace sharpyoung
