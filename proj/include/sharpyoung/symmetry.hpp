#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "sharpyoung/gaussian.hpp"
#include "sharpyoung/heisenberg.hpp"

namespace sharpyoung {

// (x, t) ↦ (rx, r²t), r > 0.
struct Dilation {
  double r = 1.0;
};

// ψ_j(z) = u_j z w_j with w₁ = u₂⁻¹, w₂ = u₃⁻¹, w₃ = u₁⁻¹.
struct BiTranslation {
  std::array<HeisPoint, 3> u;
};

// (x, t) ↦ (Sx, t), S symplectic.
struct Symplectic {
  Mat S;
};

struct AffineForm {
  Vec g;           // gradient
  double c = 0.0;  // constant
  double operator()(const Vec& x) const { return g.dot(x) + c; }
};

// (x, t) ↦ (x, t + φ_j(x)) with φ₁(x₁) + φ₂(x₂) + φ₃(x₃) = 0 whenever x₁ + x₂ + x₃ = 0,
// i.e. a common gradient and constants summing to zero.
struct VerticalShear {
  std::array<AffineForm, 3> phi;
};

// Multiplication of every function by e^{iu·x}.
struct Modulation {
  Vec u;
};

using SymmetryElement = std::variant<Dilation, BiTranslation, Symplectic, VerticalShear, Modulation>;
using SymmetryWord = std::vector<SymmetryElement>;

struct AffineMap {
  Mat M;
  Vec m;
  Vec operator()(const Vec& z) const { return M * z + m; }
};

// Spatial dimension d of an element, if it carries one (dilations do not).
std::optional<int> element_d(const SymmetryElement& e);
void validate_element(const SymmetryElement& e, int d);
void validate_word(const SymmetryWord& w, int d);

// The affine change of variables z ↦ ψ_j(z) on R^{2d+1}; not defined for modulations.
AffineMap element_map(const SymmetryElement& e, int j, int d);

SymmetryElement inverse(const SymmetryElement& e);
SymmetryWord inverse(const SymmetryWord& w);

// Elements act left to right: each replaces G_j by G_j ∘ ψ_j (or multiplies by the
// modulation character), so apply([e₁, e₂], G) = G ∘ ψ^{e₁} ∘ ψ^{e₂}.
Triple apply_symmetry(const SymmetryWord& word, const Triple& triple);

}  // namespace sharpyoung
