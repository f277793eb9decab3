#include "sharpyoung/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "sharpyoung/error.hpp"
#include "sharpyoung/kernels.hpp"
#include "sharpyoung/symplectic_factor.hpp"
#include "sharpyoung/trilinear.hpp"

namespace sharpyoung {

namespace {

constexpr double kPi = std::numbers::pi;

double pnorm_power(double v, const Exponent& p) { return std::pow(v, p.value); }

// Grid geometry split into the x-block (first 2d axes) and t (last axis).
struct XGrid {
  const GridSpec* grid;
  int dx;
  long nx;
  int nt;

  Vec x(long ix) const {
    Vec out(dx);
    for (int k = dx - 1; k >= 0; --k) {
      out(k) = grid->coord(k, static_cast<int>(ix % grid->nodes[k]));
      ix /= grid->nodes[k];
    }
    return out;
  }
  double t(int it) const { return grid->coord(dx, it); }
  double t_weight(int it) const {
    const double h = grid->step(dx);
    return (it == 0 || it == nt - 1) ? 0.5 * h : h;
  }
  double x_weight(long ix) const {
    double w = 1.0;
    for (int k = dx - 1; k >= 0; --k) {
      const int i = static_cast<int>(ix % grid->nodes[k]);
      ix /= grid->nodes[k];
      const double h = grid->step(k);
      w *= (i == 0 || i == grid->nodes[k] - 1) ? 0.5 * h : h;
    }
    return w;
  }
  long flat_x(const std::vector<int>& idx) const {
    long f = 0;
    for (int k = 0; k < dx; ++k) f = f * grid->nodes[k] + idx[k];
    return f;
  }

  // Multilinear interpolation of values given on x nodes; all corners must be valid.
  std::optional<double> interpolate(const Vec& values, const std::vector<char>& valid, const Vec& p) const {
    std::vector<int> base(dx);
    std::vector<double> frac(dx);
    for (int k = 0; k < dx; ++k) {
      const double s = (p(k) - grid->coord(k, 0)) / grid->step(k);
      const int i = static_cast<int>(std::floor(s));
      if (i < 0 || i >= grid->nodes[k] - 1) {
        if (i == grid->nodes[k] - 1 && s - i < 1e-12) {
          base[k] = i - 1;
          frac[k] = 1.0;
          continue;
        }
        return std::nullopt;
      }
      base[k] = i;
      frac[k] = s - i;
    }
    double acc = 0.0;
    std::vector<int> idx(dx);
    for (int corner = 0; corner < (1 << dx); ++corner) {
      double w = 1.0;
      for (int k = 0; k < dx; ++k) {
        const int bit = (corner >> k) & 1;
        idx[k] = base[k] + bit;
        w *= bit ? frac[k] : 1.0 - frac[k];
      }
      if (w == 0.0) continue;
      const long f = flat_x(idx);
      if (!valid[f]) return std::nullopt;
      acc += w * values(f);
    }
    return acc;
  }
};

XGrid split(const GridSpec& g) {
  XGrid xg{&g, g.dims() - 1, 1, g.nodes.back()};
  for (int k = 0; k < xg.dx; ++k) xg.nx *= g.nodes[k];
  return xg;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) { return {f.M * g.M, f.M * g.m + f.m}; }

}  // namespace

DiffuseTriple make_diffuse_triple(const std::array<Exponent, 3>& p, double eps, int d) {
  require(eps > 0.0 && std::isfinite(eps), "diffuseness must be positive", "/eps");
  require(d >= 1, "d must be positive", "/d");
  DiffuseTriple out;
  out.spec.p = p;
  out.spec.L = Mat::Identity(2 * d, 2 * d);
  out.spec.a = eps <= 1.0 ? eps * eps : eps;
  out.spec.b = 0.0;
  out.triple = build_compatible_triple(out.spec);
  out.measure = diffuseness_measure(out.spec.a, out.spec.b, out.spec.L);
  return out;
}

MarginalDecomposition decompose_marginal(const SampledTriple& s) {
  s.validate();
  const XGrid xg = split(s.grid);
  MarginalDecomposition m;
  m.grid = s.grid;
  m.nx = xg.nx;
  m.nt = xg.nt;
  for (int j = 0; j < 3; ++j) {
    const Exponent& p = s.p[j];
    m.F[j] = Vec::Zero(xg.nx);
    m.slices[j] = CMat::Zero(xg.nx, xg.nt);
    m.degenerate[j].assign(xg.nx, 0);
    for (long ix = 0; ix < xg.nx; ++ix) {
      double acc = 0.0;
      for (int it = 0; it < xg.nt; ++it) {
        const double a = std::abs(s.values[j](ix * xg.nt + it));
        acc = p.infinite ? std::max(acc, a) : acc + xg.t_weight(it) * pnorm_power(a, p);
      }
      const double F = p.infinite ? acc : std::pow(acc, 1.0 / p.value);
      m.F[j](ix) = F;
      if (!(F > 0.0)) {
        m.degenerate[j][ix] = 1;
        continue;
      }
      for (int it = 0; it < xg.nt; ++it) m.slices[j](ix, it) = s.values[j](ix * xg.nt + it) / F;
    }
    require(m.F[j].maxCoeff() > 0.0, "function is identically zero on the grid", "/payload/" + std::to_string(j));
  }
  return m;
}

std::array<SliceFit, 3> fit_slices(const MarginalDecomposition& m, const std::array<Exponent, 3>& p,
                                   double mass_threshold) {
  const XGrid xg = split(m.grid);
  std::array<SliceFit, 3> out;
  for (int j = 0; j < 3; ++j) {
    require(!p[j].infinite, "slice fits need finite exponents", "/p/" + std::to_string(j));
    const double pj = p[j].value;
    SliceFit& sf = out[j];
    for (Vec* v : {&sf.alpha, &sf.lambda, &sf.b, &sf.theta, &sf.residual}) *v = Vec::Zero(xg.nx);
    sf.valid.assign(xg.nx, 0);
    const double Fmax = m.F[j].maxCoeff();
    const double ht = m.grid.step(xg.dx);
    for (long ix = 0; ix < xg.nx; ++ix) {
      if (m.degenerate[j][ix] || m.F[j](ix) < mass_threshold * Fmax) continue;
      const auto s = m.slices[j].row(ix);
      double Z = 0, mean = 0;
      std::vector<double> w(xg.nt);
      for (int it = 0; it < xg.nt; ++it) {
        w[it] = xg.t_weight(it) * std::pow(std::abs(s(it)), pj);
        Z += w[it];
        mean += w[it] * xg.t(it);
      }
      mean /= Z;
      double var = 0;
      for (int it = 0; it < xg.nt; ++it) var += w[it] * (xg.t(it) - mean) * (xg.t(it) - mean);
      var /= Z;
      double bw = 0, bsum = 0;
      for (int it = 0; it + 1 < xg.nt; ++it) {
        const double ww = std::min(w[it], w[it + 1]);
        bsum += ww * std::arg(s(it + 1) * std::conj(s(it))) / ht;
        bw += ww;
      }
      const double b = bw > 0.0 ? bsum / bw : 0.0;
      cdouble rot = 0.0;
      for (int it = 0; it < xg.nt; ++it) rot += w[it] * s(it) * std::exp(cdouble(0.0, -b * xg.t(it)));
      const double lambda = 1.0 / (2.0 * pj * var);
      const double amp = std::pow(pj * lambda / kPi, 0.5 / pj);
      const double theta = std::arg(rot);
      double res = 0.0;
      for (int it = 0; it < xg.nt; ++it) {
        const double t = xg.t(it);
        const cdouble model = amp * std::exp(cdouble(-lambda * (t - mean) * (t - mean), b * t + theta));
        res += xg.t_weight(it) * std::pow(std::abs(s(it) - model), pj);
      }
      sf.alpha(ix) = mean;
      sf.lambda(ix) = lambda;
      sf.b(ix) = b;
      sf.theta(ix) = theta;
      sf.residual(ix) = std::pow(res, 1.0 / pj);
      sf.valid[ix] = 1;
    }
  }
  return out;
}

namespace {

// log F ≈ k + ℓ·x − xᵀQx, robustly, over valid x nodes.
void fit_marginal(const XGrid& xg, const Vec& F, const std::vector<char>& valid, Mat& Q, Vec& center) {
  const int dx = xg.dx;
  const int nq = dx * (dx + 1) / 2;
  std::vector<long> rows;
  for (long ix = 0; ix < xg.nx; ++ix)
    if (valid[ix]) rows.push_back(ix);
  require(static_cast<int>(rows.size()) > 2 * (1 + dx + nq), "too few samples carry mass to fit a marginal");
  Mat X(static_cast<int>(rows.size()), 1 + dx + nq);
  Vec y(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Vec x = xg.x(rows[r]);
    const int i = static_cast<int>(r);
    X(i, 0) = 1.0;
    X.row(i).segment(1, dx) = x.transpose();
    int c = 1 + dx;
    for (int k = 0; k < dx; ++k)
      for (int l = k; l < dx; ++l) X(i, c++) = -(k == l ? 1.0 : 2.0) * x(k) * x(l);
    y(i) = std::log(F(rows[r]));
  }
  const Vec beta = lad_fit(X, y).beta;
  Q = Mat::Zero(dx, dx);
  int c = 1 + dx;
  for (int k = 0; k < dx; ++k)
    for (int l = k; l < dx; ++l) Q(k, l) = Q(l, k) = beta(c++);
  Eigen::LLT<Mat> llt(Q);
  require(llt.info() == Eigen::Success, "marginal profile is not Gaussian-like (fitted form not positive definite)");
  center = llt.solve(beta.segment(1, dx)) * 0.5;
}

// Weighted median of neighbour differences of a wrapped phase, per axis.
Vec linear_phase_gradient(const XGrid& xg, const Vec& theta, const Vec& weight, const std::vector<char>& valid) {
  Vec g(xg.dx);
  for (int k = 0; k < xg.dx; ++k) {
    long stride = 1;
    for (int l = xg.dx - 1; l > k; --l) stride *= xg.grid->nodes[l];
    std::vector<double> vals, ws;
    for (long ix = 0; ix < xg.nx; ++ix) {
      const int ik = static_cast<int>((ix / stride) % xg.grid->nodes[k]);
      if (ik + 1 >= xg.grid->nodes[k]) continue;
      const long jx = ix + stride;
      if (!valid[ix] || !valid[jx]) continue;
      vals.push_back(std::remainder(theta(jx) - theta(ix), 2.0 * kPi) / xg.grid->step(k));
      ws.push_back(std::min(weight(ix), weight(jx)));
    }
    g(k) = vals.empty() ? 0.0 : weighted_median(vals, ws);
  }
  return g;
}

}  // namespace

PipelineReport analyze_near_extremizer(const SampledTriple& s, const PipelineConfig& cfg) {
  const ExponentProfile prof = make_profile(s.p);
  require(prof.interior(), "the pipeline needs interior exponents", "/p");
  const auto& gamma = *prof.gamma;
  const int d = s.d;
  const int n2 = 2 * d;
  const MarginalDecomposition md = decompose_marginal(s);
  const XGrid xg = split(md.grid);
  const auto slices = fit_slices(md, s.p, cfg.mass_threshold);

  PipelineReport rep;

  // Marginals: F_j ≈ exp(−γ_j|L(x − a_j)|²) up to a constant.
  Mat LtL = Mat::Zero(n2, n2);
  for (int j = 0; j < 3; ++j) {
    fit_marginal(xg, md.F[j], slices[j].valid, rep.marginal_Q[j], rep.marginal_centers[j]);
    LtL += rep.marginal_Q[j] / gamma[j] / 3.0;
  }
  Eigen::LLT<Mat> llt(sym(LtL));
  const Mat L = llt.matrixU();

  // Centre the marginals: ψ₁ = z·u, ψ₂ = u⁻¹·z·v, ψ₃ = v⁻¹·z with u = (a₁, 0), v = (a₁ + a₂, 0).
  BiTranslation T;
  T.u[0] = heis_identity(d);
  T.u[1] = HeisPoint{-rep.marginal_centers[0], 0.0};
  T.u[2] = HeisPoint{-(rep.marginal_centers[0] + rep.marginal_centers[1]), 0.0};
  std::array<AffineMap, 3> Tmap;
  for (int j = 0; j < 3; ++j) Tmap[j] = element_map(T, j, d);

  // λ: slices have precision λγ_j.
  {
    std::vector<double> vals, ws;
    for (int j = 0; j < 3; ++j)
      for (long ix = 0; ix < xg.nx; ++ix) {
        if (!slices[j].valid[ix]) continue;
        vals.push_back(slices[j].lambda(ix) / gamma[j]);
        ws.push_back(std::pow(md.F[j](ix), s.p[j].value));
        rep.max_slice_residual = std::max(rep.max_slice_residual, slices[j].residual(ix));
      }
    rep.lambda = weighted_median(vals, ws);
  }

  // Slice centres in the translated frame: f'_j(x, t) = f_j(x + m, t + g·x + m_t), so
  // α'_j(x) = α_j(x + m) − g·x − m_t.
  auto translated_alpha = [&](int j, const Vec& xprime) -> std::optional<double> {
    const AffineMap& f = Tmap[j];
    const Vec g = f.M.block(n2, 0, 1, n2).transpose();
    const Vec x = xprime + f.m.head(n2);
    const auto a = xg.interpolate(slices[j].alpha, slices[j].valid, x);
    if (!a) return std::nullopt;
    return *a - g.dot(xprime) - f.m(n2);
  };

  // α'₁(x₁) + α'₂(x₂) + α'₃(−x₁ − x₂) + σ(x₁, x₂) ≈ 0; in y = Lx this is the Heisenberg
  // relation with a₃(y₁ + y₂) = α'₃(−L⁻¹(y₁ + y₂)).
  HeisFEData fe;
  fe.d = d;
  fe.L = L;
  fe.delta = 0.1;
  fe.A = cfg.kappa / std::sqrt(rep.lambda);
  std::vector<Vec> p12, p3;
  std::vector<double> v1, v2, v3;
  for (long ix = 0; ix < xg.nx; ++ix) {
    if (slices[0].valid[ix]) {
      const Vec xp = xg.x(ix) - Tmap[0].m.head(n2);
      const auto a1 = translated_alpha(0, xp);
      const auto a2 = translated_alpha(1, xp);
      if (a1 && a2) {
        p12.push_back(L * xp);
        v1.push_back(*a1);
        v2.push_back(*a2);
      }
    }
    if (slices[2].valid[ix]) {
      const Vec xp = xg.x(ix) - Tmap[2].m.head(n2);
      const auto a3 = translated_alpha(2, xp);
      if (a3) {
        p3.push_back(-(L * xp));
        v3.push_back(*a3);
      }
    }
  }
  require(p12.size() > static_cast<std::size_t>(n2 + 2) && p3.size() > static_cast<std::size_t>(n2 + 2),
          "too few slices carry mass for the functional equation");
  auto to_function = [&](const std::vector<Vec>& pts, const std::vector<double>& vals) {
    SampledFunction f;
    f.points.resize(static_cast<int>(pts.size()), n2);
    f.values.resize(static_cast<int>(vals.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      f.points.row(static_cast<int>(i)) = pts[i].transpose();
      f.values(static_cast<int>(i)) = vals[i];
    }
    return f;
  };
  fe.a = {to_function(p12, v1), to_function(p12, v2), to_function(p3, v3)};
  double rad = 0.0;
  for (const auto& y : p12) rad = std::max(rad, y.norm());
  fe.ball = Ball{Vec::Zero(n2), rad};
  rep.fe = solve_heis_fe(fe, cfg.fe);

  // Shear φ_j(x) = ψ_j(Lx) (ψ₃ reflected) recentres every slice at t = 0.
  VerticalShear Sh;
  for (int j = 0; j < 3; ++j) {
    const AffineForm& psi = rep.fe.psi[j];
    const double sign = j == 2 ? -1.0 : 1.0;
    Sh.phi[j] = AffineForm{sign * (L.transpose() * psi.g), psi.c};
  }
  {  // make the shear constraint hold to the last bit
    const Vec g = Sh.phi[0].g;
    Sh.phi[1].g = g;
    Sh.phi[2].g = g;
    Sh.phi[2].c = -Sh.phi[0].c - Sh.phi[1].c;
  }

  // Symplectic normalisation L⁻¹ = S′M, then a dilation so that ‖L_c⁻¹‖ = 1.
  const SymplecticFactorization fac = symplectic_factor(L.inverse());
  const Symplectic Sy{fac.S};
  const double r = spectral_norm(fac.M);
  const Dilation Di{r};
  const Mat Lc = r * L * fac.S;
  const double ac = rep.lambda * std::pow(r, 4);

  // Affine phases ω_j = (u_j, b_j) in the input frame, transported to the normalised frame.
  Vec omega_sum = Vec::Zero(n2 + 1);
  std::array<double, 3> b_norm{};
  for (int j = 0; j < 3; ++j) {
    Vec weight(xg.nx);
    std::vector<double> bv, bw;
    for (long ix = 0; ix < xg.nx; ++ix) {
      weight(ix) = std::pow(md.F[j](ix), s.p[j].value);
      if (slices[j].valid[ix]) {
        bv.push_back(slices[j].b(ix));
        bw.push_back(weight(ix));
      }
    }
    Vec omega(n2 + 1);
    omega.head(n2) = linear_phase_gradient(xg, slices[j].theta, weight, slices[j].valid);
    omega(n2) = weighted_median(bv, bw);
    const AffineMap total =
        compose(compose(compose(Tmap[j], element_map(Sh, j, d)), element_map(Sy, j, d)), element_map(Di, j, d));
    const Vec w = total.M.transpose() * omega;
    b_norm[j] = w(n2);
    omega_sum += w / 3.0;
  }
  const Vec uc = omega_sum.head(n2);
  const double bc = omega_sum(n2);

  rep.recovered.p = s.p;
  rep.recovered.L = Lc;
  rep.recovered.a = ac;
  rep.recovered.b = bc;
  rep.modulation = uc;
  rep.word = {Modulation{uc}, inverse(SymmetryElement{Di}), inverse(SymmetryElement{Sy}),
              inverse(SymmetryElement{Sh}), inverse(SymmetryElement{T})};
  const Triple unit = apply_symmetry(rep.word, build_compatible_triple(rep.recovered));

  // Amplitudes by L² projection on the grid, then relative L^p distances.
  const long N = md.grid.size();
  for (int j = 0; j < 3; ++j) {
    const auto model = map_indexed<cdouble>(N, [&](long i) { return unit[j](md.grid.point(i)); }, Exec::parallel);
    cdouble num = 0.0;
    double den = 0.0;
    for (long i = 0; i < N; ++i) {
      const double w = xg.x_weight(i / xg.nt) * xg.t_weight(static_cast<int>(i % xg.nt));
      num += w * s.values[j](i) * std::conj(model[i]);
      den += w * std::norm(model[i]);
    }
    const cdouble c = num / den;
    rep.recovered.c[j] = c;
    double diff = 0.0, base = 0.0;
    const double pj = s.p[j].value;
    for (long i = 0; i < N; ++i) {
      const double w = xg.x_weight(i / xg.nt) * xg.t_weight(static_cast<int>(i % xg.nt));
      diff += w * std::pow(std::abs(s.values[j](i) - c * model[i]), pj);
      base += w * std::pow(std::abs(s.values[j](i)), pj);
    }
    rep.distances[j] = std::pow(diff / base, 1.0 / pj);
  }
  rep.fitted = apply_symmetry(rep.word, build_compatible_triple(rep.recovered));
  rep.phi = phi_ratio(rep.fitted, prof, Setting{SettingKind::heis, 0.0}, cfg.quad);
  rep.A_power = prof.A_power(n2 + 1);
  rep.gap = rep.A_power - rep.phi;
  rep.diffuseness = diffuseness_measure(ac, bc, Lc);

  // Common t-frequency check: the residual frequencies of f₁ and f₂ over one slice width.
  {
    const int n = 9;
    const double width = 1.0 / std::sqrt(gamma[0] * ac);
    BilinearPhaseData bd;
    bd.values.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const double u1 = double(i) / (n - 1), u2 = double(k) / (n - 1);
        bd.values(i, k) = std::exp(cdouble(0.0, width * (u1 * (b_norm[0] - bc) - u2 * (b_norm[1] - bc))));
      }
    rep.phase_check = estimate_bilinear_phase(bd, cfg.fe);
  }
  return rep;
}

}  // namespace sharpyoung
