#pragma once

#include <array>
#include <vector>

#include "sharpyoung/functional_equations.hpp"
#include "sharpyoung/quadrature.hpp"
#include "sharpyoung/sampled_triple.hpp"
#include "sharpyoung/symmetry.hpp"

namespace sharpyoung {

struct DiffuseTriple {
  Triple triple;
  CompatibleTripleSpec spec;
  double measure = 0.0;
};

// L = I, b = 0 and a chosen so the diffuseness measure equals eps:
// G_j(x, t) = exp(−γ_j|x|² − γ_j a t²).
DiffuseTriple make_diffuse_triple(const std::array<Exponent, 3>& p, double eps, int d = 1);

// f_j(x, t) = F_j(x)·f_{j,x}(t) with F_j(x) = ‖f_j(x, ·)‖_{p_j}.
struct MarginalDecomposition {
  GridSpec grid;                 // the full (x, t) grid
  long nx = 0;                   // number of x nodes
  int nt = 0;                    // number of t nodes
  std::array<Vec, 3> F;          // per x node
  std::array<CMat, 3> slices;    // nx × nt, unit L^{p_j} norm along t where F > 0
  std::array<std::vector<char>, 3> degenerate;  // F_j(x) = 0
};

MarginalDecomposition decompose_marginal(const SampledTriple& s);

// Per-slice moment fit of f_{j,x}(t) ≈ c e^{−λ(t−α)²} e^{i(bt+θ)} using |f_{j,x}|^{p_j}.
struct SliceFit {
  Vec alpha, lambda, b, theta, residual;
  std::vector<char> valid;  // enough mass for a stable fit
};

std::array<SliceFit, 3> fit_slices(const MarginalDecomposition& m, const std::array<Exponent, 3>& p,
                                   double mass_threshold = 1e-3);

struct PipelineConfig {
  double kappa = 0.1;            // tolerated slice-center shift in units of λ^{−1/2}
  double mass_threshold = 1e-3;  // relative F level below which slices are ignored
  FEConfig fe;
  QuadratureSpec quad;
};

struct PipelineReport {
  CompatibleTripleSpec recovered;
  Vec modulation;               // common x-frequency of the normalized triple
  SymmetryWord word;            // apply(word, canonical) reproduces the fitted triple
  Triple fitted;                // the recovered Gaussian triple in the input frame
  std::array<double, 3> distances{};  // ‖f_j − G_j‖_p / ‖f_j‖_p on the grid
  double phi = 0.0;
  double A_power = 0.0;
  double gap = 0.0;             // A_p^{2d+1} − Φ(G)
  double diffuseness = 0.0;
  double lambda = 0.0;          // common slice precision per unit γ
  std::array<Mat, 3> marginal_Q;
  std::array<Vec, 3> marginal_centers;
  double max_slice_residual = 0.0;
  HeisFESolution fe;
  BilinearPhaseSolution phase_check;
};

PipelineReport analyze_near_extremizer(const SampledTriple& s, const PipelineConfig& cfg = {});

}  // namespace sharpyoung
