#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sharpyoung/error.hpp"
#include "sharpyoung/trilinear.hpp"

using namespace sharpyoung;

namespace {

double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

Gaussian standard(int m) {
  Gaussian g;
  g.Q = Mat::Identity(m, m);
  g.a = Vec::Zero(m);
  g.b = Vec::Zero(m);
  return g;
}

Triple moduli(Triple t) {
  for (auto& g : t) {
    g.c = std::abs(g.c);
    g.b.setZero();
  }
  return t;
}

}  // namespace

TEST_CASE("euclidean form of three standard Gaussians on R is pi/sqrt(3)") {
  const Triple t = {standard(1), standard(1), standard(1)};
  CHECK(std::abs(trilinear_euclid(t) - std::numbers::pi / std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("euclidean form: common frequency and amplitude scaling") {
  oracle::Rng rng(1);
  Triple t = oracle::random_triple(rng, 2);
  for (auto& g : t) g.a.setZero();
  Triple shifted = t;
  const Vec b = Vec::Constant(2, 0.7);
  Triple base = t, freq = t;
  for (int j = 0; j < 3; ++j) {
    base[j].b.setZero();
    freq[j].b = b;
  }
  CHECK(rel(trilinear_euclid(freq), trilinear_euclid(base)) < 1e-13);
  shifted[0].c *= 2.0;
  CHECK(rel(trilinear_euclid(shifted), 2.0 * trilinear_euclid(t)) < 1e-13);
}

TEST_CASE("euclidean closed form matches 2-D quadrature on random triples") {
  oracle::Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const Triple t = oracle::random_triple(rng, 1);
    CHECK(rel(trilinear_euclid(t), oracle::euclid_1d_quadrature(t, 600)) < 1e-10);
  }
}

TEST_CASE("twisted closed form matches 4-D quadrature") {
  oracle::Rng rng(3);
  for (int k = 0; k < 2; ++k) {
    const Triple t = oracle::random_triple(rng, 2);
    const double lambda = 0.8 * (k + 1);
    CHECK(rel(trilinear_twisted(t, lambda), oracle::twisted_quadrature(t, lambda, 44)) < 1e-8);
  }
}

TEST_CASE("twisted form at zero twist equals the euclidean form; modulus bound") {
  oracle::Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Triple t = oracle::random_triple(rng, 2 * (1 + k % 2));
    CHECK(rel(trilinear_twisted(t, 0.0), trilinear_euclid(t)) <= 1e-12);
    const double lambda = 3.0 * (k - 10) / 10.0;
    CHECK(std::abs(trilinear_twisted(t, lambda)) <= std::abs(trilinear_euclid(moduli(t))) * (1 + 1e-12));
  }
}

TEST_CASE("heisenberg evaluator matches the library oracle and the brute-force oracle") {
  oracle::Rng rng(5);
  for (int k = 0; k < 8; ++k) {
    const Triple t = oracle::corpus_triple(rng, 100.0);
    const HeisValue h = trilinear_heis(t);
    CHECK(h.refinement_change <= 1e-10);
    CHECK(rel(h.value(), trilinear_oracle(t).value()) < 1e-9);
    if (k < 2) CHECK(rel(h.value(), oracle::heis_tensor(t, 40)) < 1e-6);
  }
}

TEST_CASE("heisenberg evaluator at zero coupling is the euclidean form on R^3") {
  oracle::Rng rng(6);
  for (int k = 0; k < 5; ++k) {
    const Triple t = oracle::random_triple(rng, 3);
    CHECK(rel(trilinear_heis(t, {}, Exec::parallel, 0.0).value(), trilinear_euclid(t)) < 1e-10);
    CHECK(rel(trilinear_oracle(t, {}, Exec::parallel, 1e-6).value(), trilinear_euclid(t)) < 1e-5);
  }
}

TEST_CASE("gauss-hermite and trapezoid xi-rules agree") {
  oracle::Rng rng(7);
  const Triple t = oracle::random_triple(rng, 3);
  QuadratureSpec gh;
  gh.scheme = Scheme::hermite;
  gh.max_refinements = 6;
  CHECK(rel(trilinear_heis(t, gh).value(), trilinear_heis(t).value()) < 1e-9);
}

TEST_CASE("serial and parallel evaluation are bitwise identical") {
  oracle::Rng rng(8);
  const Triple t = oracle::corpus_triple(rng, 30.0);
  const HeisValue a = trilinear_heis(t, {}, Exec::serial), b = trilinear_heis(t, {}, Exec::parallel);
  CHECK(a.log_value == b.log_value);
  CHECK(a.nodes == b.nodes);
  const HeisValue c = trilinear_oracle(t, {}, Exec::serial), d = trilinear_oracle(t, {}, Exec::parallel);
  CHECK(c.log_value == d.log_value);
}

TEST_CASE("phi ratio of the gamma-compatible triple with p = 3/2 is sqrt(3)/2") {
  const auto p = parse_exponent_triple("3/2,3/2,3/2");
  const Triple t = {standard(1), standard(1), standard(1)};
  CHECK(std::abs(phi_ratio(t, make_profile(p), Setting{SettingKind::euclid}) - std::sqrt(3.0) / 2.0) < 1e-14);
}

TEST_CASE("young upper bound holds in all three settings on random triples") {
  oracle::Rng rng(9);
  for (int k = 0; k < 12; ++k) {
    const auto p = oracle::random_interior_exponents(rng);
    const auto prof = make_profile(p);
    for (int m = 1; m <= 3; ++m) {
      const Triple t = oracle::random_triple(rng, m);
      CHECK(phi_ratio(t, prof, Setting{SettingKind::euclid}) <= prof.A_power(m) * (1 + 1e-6));
    }
    const Triple tw = oracle::random_triple(rng, 2);
    CHECK(phi_ratio(tw, prof, Setting{SettingKind::twisted, 1.3}) <= prof.A_power(2) * (1 + 1e-6));
    const Triple th = oracle::random_triple(rng, 3);
    CHECK(phi_ratio(th, prof, Setting{SettingKind::heis}) <= prof.A_power(3) * (1 + 1e-6));
  }
}

TEST_CASE("sharp power counts one-dimensional factors") {
  const Triple t3 = {standard(3), standard(3), standard(3)};
  CHECK(sharp_power(t3, Setting{SettingKind::heis}) == 3);
  CHECK(sharp_power(t3, Setting{SettingKind::euclid}) == 3);
}

TEST_CASE("evaluator errors are classified") {
  oracle::Rng rng(10);
  const Triple t = oracle::corpus_triple(rng, 100.0);
  QuadratureSpec tight;
  tight.rel_tol = 1e-30;
  tight.max_refinements = 1;
  CHECK_THROWS_AS(trilinear_heis(t, tight), Error);
  try {
    trilinear_heis(t, tight);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::convergence);
  }
  QuadratureSpec huge;
  huge.oracle_nodes = 20000;
  try {
    trilinear_oracle(t, huge);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget);
  }
  QuadratureSpec bad;
  bad.xi_nodes = 4;
  CHECK_THROWS_AS(trilinear_heis(t, bad), Error);
  CHECK_THROWS_AS(parse_setting("hyperbolic"), Error);
  Triple odd = {standard(2), standard(2), standard(2)};
  CHECK_THROWS_AS(trilinear_heis(odd), Error);
}
