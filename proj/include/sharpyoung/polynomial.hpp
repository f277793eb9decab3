#pragma once

#include <map>
#include <vector>

#include "sharpyoung/linalg.hpp"

namespace sharpyoung {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& a);
// All α ∈ N^d with |α| = D, in a fixed (reverse lexicographic) order.
std::vector<MultiIndex> multi_indices_exact(int d, int D);
// All α with |α| ≤ D, by increasing degree.
std::vector<MultiIndex> multi_indices_upto(int d, int D);
double monomial(const MultiIndex& a, const Vec& x);

// Real polynomial in d variables, sparse in the monomial basis.
struct Polynomial {
  int d = 1;
  std::map<MultiIndex, double> coef;

  double operator()(const Vec& x) const;
  int degree() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(double s) const;
  // x ↦ p(x + h)
  Polynomial shifted(const Vec& h) const;
  // Δ_h p(x) = p(x + h) − p(x)
  Polynomial difference(const Vec& h) const;
  // x ↦ p((x − c)/s), re-expanded in the monomials of x.
  Polynomial rescaled(const Vec& c, double s) const;
  // Drops the constant term.
  Polynomial without_constant() const;
  double constant() const;
  // max |coefficient difference|, ignoring constants when asked.
  static double coef_distance(const Polynomial& a, const Polynomial& b, bool ignore_constant);

  static Polynomial zero(int d);
  static Polynomial variable(int d, int i);
  static Polynomial constant_poly(int d, double c);
};

// u_{α,j}, |α| = D: candidate coefficients of ∂_j q for a homogeneous q of degree D+1.
struct GradientField {
  int d = 1;
  int D = 0;
  std::vector<MultiIndex> alphas;  // multi_indices_exact(d, D)
  Mat u;                           // alphas.size() × d

  static GradientField zero(int d, int D);
};

struct CurlProjection {
  GradientField field;  // nearest compatible field (least squares)
  Polynomial q;         // homogeneous, ∂_j q = Σ_α ũ_{α,j} x^α
  double distance = 0;  // ‖ũ − u‖ in the coefficient norm
};

// Orthogonal projection onto the fields satisfying
//   ũ_{β+e_i, j}(β_i + 1) = ũ_{β+e_j, i}(β_j + 1)  for all |β| = D − 1, i < j,
// i.e. the gradients of homogeneous polynomials, plus the integrated q.
CurlProjection curl_project(const GradientField& u);

}  // namespace sharpyoung
