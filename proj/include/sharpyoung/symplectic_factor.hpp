#pragma once

#include "sharpyoung/linalg.hpp"

namespace sharpyoung {

// L = S·M with S symplectic and M = 𝒪₂ T 𝒪₁:
//   𝒪₁ orthogonal with 𝒪₁ K 𝒪₁ᵀ block diagonal, blocks [[0, t_j], [−t_j, 0]], K = LᵀJL,
//   T = diag(√t₁, √t₁, …, √t_d, √t_d),
//   𝒪₂ the permutation taking the interleaved frame (v₁, w₁, v₂, w₂, …) to (e₁…e_d, f₁…f_d).
// Then MᵀJM = K and ‖M‖ = ‖K‖^{1/2}, the least operator norm over all such M.
struct SymplecticFactorization {
  Mat S;
  Mat M;
  Mat O1;
  Mat T;
  Mat O2;
  Vec t;                      // descending
  double residual = 0;        // ‖SᵀJS − J‖_F
  double reconstruction = 0;  // ‖L − SM‖_F / ‖L‖_F
};

struct AntisymmetricCanonical {
  Mat O1;  // rows v₁, w₁, v₂, w₂, …
  Vec t;   // descending, positive
};

// Canonical form of a non-singular antisymmetric K: 𝒪₁ K 𝒪₁ᵀ = ⊕ [[0, t_j], [−t_j, 0]].
// t_j are ordered descending; each plane's first vector v has its first
// non-negligible coordinate positive and w = Kᵀv / t.
AntisymmetricCanonical antisymmetric_canonical(const Mat& K);

// Requires cond(L) < 1e10.
SymplecticFactorization symplectic_factor(const Mat& L);

}  // namespace sharpyoung
