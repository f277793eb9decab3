#pragma once

#include <random>

#include "sharpyoung/exponents.hpp"
#include "sharpyoung/gaussian.hpp"
#include "sharpyoung/symmetry.hpp"

namespace oracle {

using namespace sharpyoung;

// Brute-force Heisenberg functional for d = 1 (R³ with t last): a tensor trapezoid
// over (x₁, x₂) ∈ R⁴ and, for each node, the (t₁, t₂) integral written out by hand
// (real 2×2 quadratic form, no branch issues). `n` nodes per axis.
cdouble heis_tensor(const Triple& g, int n, double coupling = 1.0);

// ∫∫ G₁(x)G₂(y)G₃(−x−y) on R × R by a 2-D trapezoid rule.
cdouble euclid_1d_quadrature(const Triple& g, int n);

// ∫∫ e^{iλσ(x,y)} G₁(x)G₂(y)G₃(−x−y) on R² × R² by a 4-D trapezoid rule.
cdouble twisted_quadrature(const Triple& g, double lambda, int n);

// ‖G‖_p by direct quadrature (1-D, any p < ∞).
double lp_norm_1d(const Gaussian& g, double p, int n);

// Maximizes the one-dimensional Gaussian ratio over (γ₂, γ₃) with γ₁ = 1 by Newton
// iteration on log γ with central finite differences; `ratio` evaluates Φ.
struct Maximum {
  double g2, g3, value;
  int iterations;
};
template <class F>
Maximum maximize_ratio(F&& ratio, double g2, double g3);

// Random generators. All draw from a caller-owned engine.
using Rng = std::mt19937_64;
Mat random_spd(Rng& rng, int n, double lo, double hi);
// Eigenvalues spanning exactly `cond` with geometric mean 1.
Mat random_spd_cond(Rng& rng, int n, double cond);
Gaussian random_gaussian(Rng& rng, int n, double freq = 0.5, double shift = 0.3);
// d = 1 triple whose forms have condition numbers up to `max_cond`.
Triple corpus_triple(Rng& rng, double max_cond);
Triple random_triple(Rng& rng, int n);
Mat random_symplectic(Rng& rng, int d, int factors = 4);
Mat random_matrix(Rng& rng, int n, double cond_cap = 50.0);
SymmetryElement random_element(Rng& rng, int d, int family);
SymmetryWord random_word(Rng& rng, int d, int max_len);
std::array<Exponent, 3> random_interior_exponents(Rng& rng);
// Uniform n^d grid of the cube around the ball |x − center| ≤ r, clipped to the ball.
Mat ball_grid(int d, const Vec& center, double r, int n);

// --- template definition

template <class F>
Maximum maximize_ratio(F&& ratio, double g2, double g3) {
  double u[2] = {std::log(g2), std::log(g3)};
  auto f = [&](double a, double b) { return std::log(ratio(std::exp(a), std::exp(b))); };
  const double h = 1e-4;
  int it = 0;
  for (; it < 100; ++it) {
    const double f0 = f(u[0], u[1]);
    const double fa = f(u[0] + h, u[1]), fA = f(u[0] - h, u[1]);
    const double fb = f(u[0], u[1] + h), fB = f(u[0], u[1] - h);
    const double fab = f(u[0] + h, u[1] + h), faB = f(u[0] + h, u[1] - h);
    const double fAb = f(u[0] - h, u[1] + h), fAB = f(u[0] - h, u[1] - h);
    const double ga = (fa - fA) / (2 * h), gb = (fb - fB) / (2 * h);
    const double haa = (fa - 2 * f0 + fA) / (h * h), hbb = (fb - 2 * f0 + fB) / (h * h);
    const double hab = (fab - faB - fAb + fAB) / (4 * h * h);
    const double det = haa * hbb - hab * hab;
    double da, db;
    if (haa < 0 && det > 0) {
      da = -(hbb * ga - hab * gb) / det;
      db = -(-hab * ga + haa * gb) / det;
    } else {
      da = 0.1 * ga;
      db = 0.1 * gb;
    }
    const double step = std::hypot(da, db);
    if (step > 0.5) {
      da *= 0.5 / step;
      db *= 0.5 / step;
    }
    u[0] += da;
    u[1] += db;
    if (step < 1e-12) break;
  }
  return {std::exp(u[0]), std::exp(u[1]), ratio(std::exp(u[0]), std::exp(u[1])), it};
}

}  // namespace oracle
