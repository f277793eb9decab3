#include "sharpyoung/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace sharpyoung {

std::complex<double> log_sum_exp(const std::vector<std::complex<double>>& logs) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& l : logs) top = std::max(top, l.real());
  if (!std::isfinite(top)) return {top, 0.0};
  std::complex<double> s = 0.0;
  for (const auto& l : logs) s += std::exp(l - top);
  return top + std::log(s);
}

std::complex<double> ordered_sum(const std::vector<std::complex<double>>& terms) {
  std::complex<double> s = 0.0;
  for (const auto& t : terms) s += t;
  return s;
}

double ordered_sum(const std::vector<double>& terms) {
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

int parallel_threads() { return omp_get_max_threads(); }

}  // namespace sharpyoung
