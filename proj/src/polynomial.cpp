#include "sharpyoung/polynomial.hpp"

#include <cmath>
#include <numeric>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

std::vector<MultiIndex> multi_indices_exact(int d, int D) {
  std::vector<MultiIndex> out;
  if (D < 0) return out;
  MultiIndex cur(d, 0);
  // Distribute D units over d slots, first slot largest first.
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == d - 1) {
      cur[slot] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[slot] = k;
      self(self, slot + 1, left - k);
    }
  };
  rec(rec, 0, D);
  return out;
}

std::vector<MultiIndex> multi_indices_upto(int d, int D) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= D; ++k) {
    auto part = multi_indices_exact(d, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

double monomial(const MultiIndex& a, const Vec& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < a[i]; ++k) v *= x(static_cast<int>(i));
  }
  return v;
}

double Polynomial::operator()(const Vec& x) const {
  require(x.size() == d, "polynomial evaluated at a point of wrong dimension");
  double s = 0.0;
  for (const auto& [a, c] : coef) s += c * monomial(a, x);
  return s;
}

int Polynomial::degree() const {
  int deg = -1;
  for (const auto& [a, c] : coef) {
    if (c != 0.0) deg = std::max(deg, total_degree(a));
  }
  return deg;
}

Polynomial Polynomial::zero(int d) { return Polynomial{d, {}}; }

Polynomial Polynomial::variable(int d, int i) {
  Polynomial p = zero(d);
  MultiIndex a(d, 0);
  a[i] = 1;
  p.coef[a] = 1.0;
  return p;
}

Polynomial Polynomial::constant_poly(int d, double c) {
  Polynomial p = zero(d);
  p.coef[MultiIndex(d, 0)] = c;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p = *this;
  for (const auto& [a, c] : o.coef) p.coef[a] += c;
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(-1.0); }

Polynomial Polynomial::scaled(double s) const {
  Polynomial p = *this;
  for (auto& [a, c] : p.coef) c *= s;
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require(d == o.d, "polynomial dimension mismatch");
  Polynomial p = zero(d);
  for (const auto& [a, c] : coef) {
    for (const auto& [b, e] : o.coef) {
      MultiIndex s(d);
      for (int i = 0; i < d; ++i) s[i] = a[i] + b[i];
      p.coef[s] += c * e;
    }
  }
  return p;
}

namespace {

// Π_i (s_i x_i + t_i)^{α_i}
Polynomial affine_monomial(const MultiIndex& a, const Vec& s, const Vec& t) {
  const int d = static_cast<int>(a.size());
  Polynomial p = Polynomial::constant_poly(d, 1.0);
  for (int i = 0; i < d; ++i) {
    Polynomial lin = Polynomial::variable(d, i).scaled(s(i)) + Polynomial::constant_poly(d, t(i));
    for (int k = 0; k < a[i]; ++k) p = p * lin;
  }
  return p;
}

}  // namespace

Polynomial Polynomial::shifted(const Vec& h) const {
  Polynomial p = zero(d);
  for (const auto& [a, c] : coef) p = p + affine_monomial(a, Vec::Ones(d), h).scaled(c);
  return p;
}

Polynomial Polynomial::difference(const Vec& h) const { return shifted(h) - *this; }

Polynomial Polynomial::rescaled(const Vec& center, double s) const {
  Polynomial p = zero(d);
  for (const auto& [a, c] : coef) p = p + affine_monomial(a, Vec::Constant(d, 1.0 / s), -center / s).scaled(c);
  return p;
}

Polynomial Polynomial::without_constant() const {
  Polynomial p = *this;
  p.coef.erase(MultiIndex(d, 0));
  return p;
}

double Polynomial::constant() const {
  const auto it = coef.find(MultiIndex(d, 0));
  return it == coef.end() ? 0.0 : it->second;
}

double Polynomial::coef_distance(const Polynomial& a, const Polynomial& b, bool ignore_constant) {
  Polynomial diff = a - b;
  if (ignore_constant) diff = diff.without_constant();
  double m = 0.0;
  for (const auto& [k, c] : diff.coef) m = std::max(m, std::abs(c));
  return m;
}

GradientField GradientField::zero(int d, int D) {
  GradientField f;
  f.d = d;
  f.D = D;
  f.alphas = multi_indices_exact(d, D);
  f.u = Mat::Zero(static_cast<int>(f.alphas.size()), d);
  return f;
}

CurlProjection curl_project(const GradientField& u) {
  const int d = u.d;
  const int D = u.D;
  require(D >= 0 && d >= 1, "curl_project: bad degree or dimension");
  require(u.u.rows() == static_cast<int>(u.alphas.size()) && u.u.cols() == d,
          "curl_project: coefficient array has wrong shape");
  std::map<MultiIndex, int> row_of;
  for (std::size_t r = 0; r < u.alphas.size(); ++r) row_of[u.alphas[r]] = static_cast<int>(r);
  const int N = static_cast<int>(u.alphas.size()) * d;
  auto var = [&](const MultiIndex& a, int j) { return row_of.at(a) * d + j; };

  std::vector<Vec> rows;
  for (const auto& beta : multi_indices_exact(d, D - 1)) {
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        MultiIndex bi = beta, bj = beta;
        ++bi[i];
        ++bj[j];
        Vec row = Vec::Zero(N);
        row(var(bi, j)) += beta[i] + 1;
        row(var(bj, i)) -= beta[j] + 1;
        rows.push_back(row);
      }
    }
  }

  Vec flat(N);
  for (int r = 0; r < u.u.rows(); ++r)
    for (int j = 0; j < d; ++j) flat(r * d + j) = u.u(r, j);

  Vec proj = flat;
  if (!rows.empty()) {
    Mat C(static_cast<int>(rows.size()), N);
    for (std::size_t k = 0; k < rows.size(); ++k) C.row(static_cast<int>(k)) = rows[k].transpose();
    // Subtract the component in the row space of C.
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(C.transpose());
    const Vec coeffs = cod.solve(flat);
    proj = flat - C.transpose() * coeffs;
  }

  CurlProjection out;
  out.field = u;
  for (int r = 0; r < u.u.rows(); ++r)
    for (int j = 0; j < d; ++j) out.field.u(r, j) = proj(r * d + j);
  out.distance = (proj - flat).norm();
  out.q = Polynomial::zero(d);
  for (const auto& gamma : multi_indices_exact(d, D + 1)) {
    int j = 0;
    while (gamma[j] == 0) ++j;
    MultiIndex a = gamma;
    --a[j];
    out.q.coef[gamma] = out.field.u(row_of.at(a), j) / gamma[j];
  }
  return out;
}

}  // namespace sharpyoung
