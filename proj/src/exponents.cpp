#include "sharpyoung/exponents.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    raise(ErrorCode::validation, "not a number: '" + s + "'");
  }
  if (used != s.size()) raise(ErrorCode::validation, "not a number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// p^{1/(2p)} with the limit value 1 at p = ∞.
double half_power(const Exponent& p) {
  if (p.infinite) return 1.0;
  return std::pow(p.value, 0.5 / p.value);
}

}  // namespace

Exponent Exponent::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "∞") return inf();
  double v = 0.0;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const double num = parse_number(trim(text.substr(0, slash)));
    const double den = parse_number(trim(text.substr(slash + 1)));
    if (den == 0.0) raise(ErrorCode::validation, "zero denominator in exponent '" + text + "'");
    v = num / den;
  } else {
    v = parse_number(text);
  }
  if (!std::isfinite(v) || v < 1.0) {
    raise(ErrorCode::validation, "exponent must lie in [1, inf]: '" + text + "'");
  }
  return finite(v);
}

Exponent Exponent::conjugate() const {
  if (infinite) return finite(1.0);
  if (value == 1.0) return inf();
  return finite(value / (value - 1.0));
}

std::string Exponent::str() const {
  if (infinite) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

double ExponentProfile::A_power(int k) const { return std::pow(A_p, k); }

std::array<Exponent, 3> parse_exponent_triple(const std::string& text) {
  std::array<Exponent, 3> out;
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) raise(ErrorCode::validation, "expected three exponents, got more: '" + text + "'");
    out[n++] = Exponent::parse(item);
  }
  if (n != 3) raise(ErrorCode::validation, "expected three exponents: '" + text + "'");
  return out;
}

double sharp_constant(const std::array<Exponent, 3>& p) {
  double a = 1.0;
  for (const auto& pj : p) a *= half_power(pj) / half_power(pj.conjugate());
  return a;
}

ExponentProfile make_profile(const std::array<Exponent, 3>& p) {
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (!p[j].infinite && !(p[j].value >= 1.0)) {
      raise(ErrorCode::validation, "exponent outside [1, inf]", "/p/" + std::to_string(j));
    }
    sum += p[j].reciprocal();
  }
  if (std::abs(sum - 2.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "inadmissible exponents: sum of reciprocals is " << sum << ", expected 2";
    raise(ErrorCode::validation, os.str(), "/p");
  }
  ExponentProfile prof;
  prof.p = p;
  for (int j = 0; j < 3; ++j) prof.q[j] = p[j].conjugate();
  prof.A_p = sharp_constant(p);
  bool interior = true;
  for (const auto& pj : p) interior = interior && !pj.is_endpoint();
  if (interior) {
    std::array<double, 3> g{};
    for (int j = 0; j < 3; ++j) g[j] = prof.q[j].value / prof.q[0].value;
    prof.gamma = g;
  }
  return prof;
}

double stationarity_residual(const std::array<double, 3>& g, const std::array<Exponent, 3>& p) {
  for (int j = 0; j < 3; ++j) {
    require(std::isfinite(g[j]) && g[j] > 0.0, "gamma must be positive", "/gamma/" + std::to_string(j));
    require(!p[j].is_endpoint(), "stationarity needs interior exponents", "/p/" + std::to_string(j));
  }
  const double D = g[0] * g[1] + g[0] * g[2] + g[1] * g[2];
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double others = g[(j + 1) % 3] + g[(j + 2) % 3];
    worst = std::max(worst, std::abs(g[j] * others / D - p[j].reciprocal()));
  }
  return worst;
}

}  // namespace sharpyoung
