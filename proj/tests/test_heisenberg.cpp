#include <doctest.h>

#include "oracles.hpp"
#include "sharpyoung/error.hpp"
#include "sharpyoung/heisenberg.hpp"

using namespace sharpyoung;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

HeisPoint random_point(oracle::Rng& rng, int d) {
  std::normal_distribution<double> n01;
  Vec x(2 * d);
  for (int i = 0; i < 2 * d; ++i) x(i) = n01(rng);
  return {x, n01(rng)};
}

bool same(const HeisPoint& a, const HeisPoint& b, double tol) {
  return (a.x - b.x).norm() <= tol && std::abs(a.t - b.t) <= tol;
}

}  // namespace

TEST_CASE("group law examples") {
  const HeisPoint z{v2(1, 0), 0.0}, w{v2(0, 1), 0.0};
  const HeisPoint zw = heis_mul(z, w);
  CHECK(zw.x == v2(1, 1));
  CHECK(zw.t == 1.0);
  const HeisPoint u{v2(0.3, -1.2), 2.5};
  CHECK(same(heis_mul(heis_identity(1), u), u, 0.0));
  CHECK(same(heis_mul(u, heis_inv(u)), heis_identity(1), 0.0));
  const HeisPoint v{v2(1, 2), 3};
  CHECK(same(heis_inv(v), HeisPoint{v2(-1, -2), -3}, 0.0));
  CHECK(same(heis_inv(heis_inv(v)), v, 0.0));
  CHECK_THROWS_AS(heis_mul(v, heis_identity(2)), Error);
}

TEST_CASE("group law is associative and sigma is antisymmetric") {
  oracle::Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + k % 3;
    const HeisPoint a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
    CHECK(same(heis_mul(heis_mul(a, b), c), heis_mul(a, heis_mul(b, c)), 1e-12));
    CHECK(sigma(a.x, b.x) == -sigma(b.x, a.x));
    CHECK(sigma(a.x, a.x) == 0.0);
    const Mat S = oracle::random_symplectic(rng, d);
    REQUIRE(is_symplectic(S));
    CHECK(std::abs(sigma(S * a.x, S * b.x) - sigma(a.x, b.x)) < 1e-10 * (1 + S.squaredNorm()));
  }
}

TEST_CASE("sigma and sigma_L examples") {
  CHECK(sigma(v2(1, 0), v2(1, 0)) == 0.0);
  CHECK(sigma(v2(1, 0), v2(0, 1)) == 1.0);
  const double R = 3.0;
  const Mat L = R * Mat::Identity(2, 2);
  CHECK(std::abs(sigma_L(L, v2(1, 2), v2(-0.5, 4)) - sigma(v2(1, 2), v2(-0.5, 4)) / (R * R)) < 1e-15);
  CHECK_THROWS_AS(sigma_L(Mat::Zero(2, 2), v2(1, 0), v2(0, 1)), Error);
}

TEST_CASE("symplectic predicate") {
  CHECK(is_symplectic(Mat::Identity(4, 4)));
  CHECK(is_symplectic(symplectic_J(2)));
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  CHECK(is_symplectic(D));
  D(1, 1) = 0.6;
  CHECK_FALSE(is_symplectic(D));
  CHECK_FALSE(is_symplectic(Mat::Identity(3, 3)));
  const Mat J = symplectic_J(3);
  CHECK((J * J + Mat::Identity(6, 6)).norm() == 0.0);
  CHECK((J + J.transpose()).norm() == 0.0);
}
