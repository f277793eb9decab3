#include "sharpyoung/symmetry.hpp"

#include <cmath>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Right factor w_j of a bitranslation.
HeisPoint right_factor(const BiTranslation& bt, int j) { return heis_inv(bt.u[(j + 1) % 3]); }

AffineMap vertical_map(const Vec& g, const Vec& shift_x, double shift_t) {
  const int n2 = static_cast<int>(g.size());
  AffineMap f{Mat::Identity(n2 + 1, n2 + 1), Vec::Zero(n2 + 1)};
  f.M.block(n2, 0, 1, n2) = g.transpose();
  f.m.head(n2) = shift_x;
  f.m(n2) = shift_t;
  return f;
}

}  // namespace

std::optional<int> element_d(const SymmetryElement& e) {
  return std::visit(overloaded{
                        [](const Dilation&) -> std::optional<int> { return std::nullopt; },
                        [](const BiTranslation& b) -> std::optional<int> { return b.u[0].d(); },
                        [](const Symplectic& s) -> std::optional<int> { return int(s.S.rows() / 2); },
                        [](const VerticalShear& s) -> std::optional<int> { return int(s.phi[0].g.size() / 2); },
                        [](const Modulation& m) -> std::optional<int> { return int(m.u.size() / 2); },
                    },
                    e);
}

void validate_element(const SymmetryElement& e, int d) {
  std::visit(overloaded{
                 [](const Dilation& s) {
                   require(std::isfinite(s.r) && s.r > 0.0, "dilation factor must be positive", "/r");
                 },
                 [d](const BiTranslation& b) {
                   for (int j = 0; j < 3; ++j) {
                     require(b.u[j].x.size() == 2 * d && b.u[j].x.allFinite() && std::isfinite(b.u[j].t),
                             "bitranslation point has wrong dimension", "/u" + std::to_string(j + 1));
                   }
                 },
                 [d](const Symplectic& s) {
                   require(s.S.rows() == 2 * d && s.S.cols() == 2 * d, "symplectic matrix has wrong size", "/S");
                   require(is_symplectic(s.S), "matrix is not symplectic", "/S");
                 },
                 [d](const VerticalShear& s) {
                   double scale = 1.0;
                   for (int j = 0; j < 3; ++j) {
                     require(s.phi[j].g.size() == 2 * d, "shear gradient has wrong dimension",
                             "/phi/" + std::to_string(j));
                     scale = std::max(scale, s.phi[j].g.norm() + std::abs(s.phi[j].c));
                   }
                   const double tol = 1e-12 * scale;
                   require((s.phi[0].g - s.phi[2].g).norm() <= tol && (s.phi[1].g - s.phi[2].g).norm() <= tol,
                           "shear forms must share a gradient to vanish on x1 + x2 + x3 = 0", "/phi");
                   require(std::abs(s.phi[0].c + s.phi[1].c + s.phi[2].c) <= tol,
                           "shear constants must sum to zero", "/phi");
                 },
                 [d](const Modulation& m) {
                   require(m.u.size() == 2 * d && m.u.allFinite(), "modulation frequency has wrong dimension", "/u");
                 },
             },
             e);
}

void validate_word(const SymmetryWord& w, int d) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    try {
      validate_element(w[i], d);
    } catch (const Error& err) {
      throw Error(err.code(), err.what(), "/" + std::to_string(i) + err.path());
    }
  }
}

AffineMap element_map(const SymmetryElement& e, int j, int d) {
  const int n2 = 2 * d;
  return std::visit(
      overloaded{
          [&](const Dilation& s) {
            AffineMap f{Mat::Identity(n2 + 1, n2 + 1) * s.r, Vec::Zero(n2 + 1)};
            f.M(n2, n2) = s.r * s.r;
            return f;
          },
          [&](const BiTranslation& b) {
            // u z w = (x + u_x + w_x, t + σ(u_x, x) + σ(x, w_x) + u_t + w_t + σ(u_x, w_x))
            const HeisPoint& u = b.u[j];
            const HeisPoint w = right_factor(b, j);
            const Mat J = symplectic_J(d);
            const Vec g = J.transpose() * u.x + J * w.x;
            return vertical_map(g, u.x + w.x, u.t + w.t + sigma(u.x, w.x));
          },
          [&](const Symplectic& s) {
            AffineMap f{Mat::Identity(n2 + 1, n2 + 1), Vec::Zero(n2 + 1)};
            f.M.topLeftCorner(n2, n2) = s.S;
            return f;
          },
          [&](const VerticalShear& s) { return vertical_map(s.phi[j].g, Vec::Zero(n2), s.phi[j].c); },
          [&](const Modulation&) -> AffineMap {
            raise(ErrorCode::validation, "modulation is not a change of variables");
          },
      },
      e);
}

SymmetryElement inverse(const SymmetryElement& e) {
  return std::visit(overloaded{
                        [](const Dilation& s) -> SymmetryElement { return Dilation{1.0 / s.r}; },
                        [](const BiTranslation& b) -> SymmetryElement {
                          BiTranslation out;
                          for (int j = 0; j < 3; ++j) out.u[j] = heis_inv(b.u[j]);
                          return out;
                        },
                        [](const Symplectic& s) -> SymmetryElement { return Symplectic{s.S.inverse()}; },
                        [](const VerticalShear& s) -> SymmetryElement {
                          VerticalShear out = s;
                          for (auto& f : out.phi) {
                            f.g = -f.g;
                            f.c = -f.c;
                          }
                          return out;
                        },
                        [](const Modulation& m) -> SymmetryElement { return Modulation{-m.u}; },
                    },
                    e);
}

SymmetryWord inverse(const SymmetryWord& w) {
  SymmetryWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Triple apply_symmetry(const SymmetryWord& word, const Triple& triple) {
  const int d = heis_d(triple[0]);
  validate_word(word, d);
  Triple out = triple;
  for (const auto& e : word) {
    for (int j = 0; j < 3; ++j) {
      if (const auto* m = std::get_if<Modulation>(&e)) {
        out[j] = modulate(out[j], m->u);
      } else {
        const AffineMap f = element_map(e, j, d);
        out[j] = pullback(out[j], f.M, f.m);
      }
    }
  }
  return out;
}

}  // namespace sharpyoung
