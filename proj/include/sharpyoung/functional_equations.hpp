#pragma once

#include <array>
#include <vector>

#include "sharpyoung/polynomial.hpp"
#include "sharpyoung/robust.hpp"
#include "sharpyoung/symmetry.hpp"

namespace sharpyoung {

// Ball 𝔅 = {x : |x − center| ≤ radius}.
struct Ball {
  Vec center;
  double radius = 1.0;
  bool contains(const Vec& x) const { return (x - center).norm() <= radius * (1.0 + 1e-12); }
  double volume() const;
};

struct SampledFunction {
  Mat points;  // one sample per row
  Vec values;
  int size() const { return static_cast<int>(values.size()); }
};

struct ComplexSampledFunction {
  Mat points;
  CVec values;
  int size() const { return static_cast<int>(values.size()); }
};

// Shared knobs of every solver. Residuals are reported as the (1 − δ)-quantile of
// the pooled absolute sample residuals ("sup over inliers"), which is recomputable
// from the inputs and the solution alone.
struct FEConfig {
  double C = 5.0;
  RobustOptions robust;
};

// φ(x) + ψ(y) + ξ(x + y) ≈ 0 up to A outside a δ-fraction.
struct AdditiveFEData {
  int d = 1;
  Ball ball;
  double A = 0.0;
  double delta = 0.1;
  std::array<SampledFunction, 3> f;  // φ on 𝔅, ψ on 𝔅, ξ on 𝔅 + 𝔅
};

struct AffineFESolution {
  // h₁(x) + h₂(y) + h₃(x + y) ≡ 0: common gradient g, h₃ = −g·z − c₁ − c₂.
  std::array<AffineForm, 3> h;
  double residual = 0.0;
  double bound = 0.0;           // C·A
  double inlier_fraction = 0.0; // share of samples within the bound
};

AffineFESolution solve_additive_fe(const AdditiveFEData& data, const FEConfig& cfg = {});
double audit_residual(const AdditiveFEData& data, const AffineFESolution& sol);

// f₁(x)f₂(y)/f₃(x + y) ≈ 1 for unimodular f_j, up to η.
struct PhaseFEData {
  int d = 1;
  Ball ball;
  double eta = 0.0;
  double delta = 0.1;
  std::array<ComplexSampledFunction, 3> f;
};

struct LinearPhaseSolution {
  std::array<Vec, 3> v;          // f_j(x) ≈ e^{i(v_j·x + θ_j)}
  std::array<double, 3> theta{};
  double relation_constant = 0.0;  // θ₁ + θ₂ − θ₃ wrapped to (−π, π]
  double residual = 0.0;
  double bound = 0.0;              // C·η^{1/C}
  double inlier_fraction = 0.0;
};

LinearPhaseSolution recover_linear_phase(const PhaseFEData& data, const FEConfig& cfg = {});
double audit_residual(const PhaseFEData& data, const LinearPhaseSolution& sol);

// Δ_hφ(x) = φ(x + h) − φ(x) observed on base points × offsets; for each h the
// map x ↦ Δ_hφ(x) is within A of a polynomial of degree ≤ D.
struct DifferenceDataset {
  int d = 1;
  int degree = 0;
  Ball ball;
  double A = 0.0;
  double delta = 0.1;
  Mat points;       // N × d
  Mat offsets;      // K × d
  Mat differences;  // K × N, row k holds Δ_{h_k}φ at every base point
};

struct DifferenceSolution {
  // φ ≈ Q up to an additive constant, which differences cannot see; Q(center) = 0.
  Polynomial Q;
  std::vector<double> curl_distances;  // one per inductive level, top degree first
  double residual = 0.0;
  double bound = 0.0;
  double inlier_fraction = 0.0;
};

DifferenceSolution integrate_difference(const DifferenceDataset& data, const FEConfig& cfg = {});
double audit_residual(const DifferenceDataset& data, const DifferenceSolution& sol);

// a₁(x) + a₂(y) + a₃(x + y) + σ_L(x, y) ≈ 0 up to A; a₁, a₂ share sample points.
struct HeisFEData {
  int d = 1;
  Ball ball;
  double A = 0.0;
  double delta = 0.1;
  Mat L;
  std::array<SampledFunction, 3> a;
};

struct HeisFESolution {
  std::array<AffineForm, 3> psi;  // ψ₁(x) + ψ₂(y) + ψ₃(x + y) ≡ 0
  Mat S;                          // symplectic with ‖S L⁻¹‖ = ‖L⁻ᵀJL⁻¹‖^{1/2}
  double norm_SLinv = 0.0;
  double S_bound = 0.0;           // C·A^{1/2}·|𝔅|^{−1/(2d)}
  double sigma_sup = 0.0;         // upper bound for sup_{𝔅²} |σ_L|
  double certificate_bound = 0.0; // C·A
  bool certified = false;
  double residual = 0.0;
  double bound = 0.0;
  double inlier_fraction = 0.0;
};

// Oriented relation a₁(x) + a₂(y) + a₃(x + y) + σ_L(x, y) at given sample indices.
double heis_relation(const HeisFEData& data, int i, int k, int m);
// (ã, ã, a₃) with ã = (a₁ + a₂)/2: its σ-free relation at (x, y) is the average of
// the oriented relations at (x, y) and (y, x), since σ_L is antisymmetric.
AdditiveFEData symmetrize(const HeisFEData& data);
// sup over 𝔅² of |σ_L| bounded by r²‖K‖ + 2r‖Kc‖ with K = L⁻ᵀJL⁻¹ (exact when c = 0).
double sigma_sup_bound(const Mat& L, const Ball& ball);

HeisFESolution solve_heis_fe(const HeisFEData& data, const FEConfig& cfg = {});
double audit_residual(const HeisFEData& data, const HeisFESolution& sol);

// g(u₁, u₂) ≈ e^{i(u₁v₁ − u₂v₂)} on an n × n grid of [0, 1]².
struct BilinearPhaseData {
  CMat values;  // values(i, k) at u = (i/(n−1), k/(n−1))
  double delta = 0.1;
};

struct BilinearPhaseSolution {
  double v1 = 0.0, v2 = 0.0;
  double eta_hat = 0.0;   // (1 − δ)-quantile of |g − 1|
  double residual = 0.0;  // (1 − δ)-quantile of the fit residual
  double C = 5.0;
  bool consistent = false;  // |v₁| + |v₂| ≤ C·η̂
};

BilinearPhaseSolution estimate_bilinear_phase(const BilinearPhaseData& data, const FEConfig& cfg = {});
double audit_residual(const BilinearPhaseData& data, const BilinearPhaseSolution& sol);

// The ⌈(1 − δ)n⌉-th smallest value.
double quantile_sup(std::vector<double> r, double delta);

}  // namespace sharpyoung
