#pragma once

#include <complex>
#include <exception>
#include <vector>

namespace sharpyoung {

// Every hot loop comes in a parallel (OpenMP) and a serial flavour. Both
// evaluate the same per-index function and reduce in index order, so their
// results are bitwise identical; the serial one is the test reference.
enum class Exec { serial, parallel };

template <class T, class F>
std::vector<T> map_indexed(long n, F&& f, Exec exec) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (exec == Exec::parallel) {
    // Exceptions must not escape the parallel region; rethrow the first by index.
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (long i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

// log Σ exp(l_k) for complex logs, reduced in index order.
std::complex<double> log_sum_exp(const std::vector<std::complex<double>>& logs);

// Σ terms in index order.
std::complex<double> ordered_sum(const std::vector<std::complex<double>>& terms);
double ordered_sum(const std::vector<double>& terms);

// Threads OpenMP will use for Exec::parallel.
int parallel_threads();

}  // namespace sharpyoung
