// Benchmark of the serial reference kernels against the OpenMP versions,
// plus a bitwise agreement check (the parallel kernels must not change a
// single ulp). Sizes bracket the dimensions the Landau model produces
// (4(n_max+1) = 260 at the acceptance n_max).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fwlab/kernels.hpp"

namespace {

using fwlab::kernels::cxd;

std::vector<cxd> random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cxd> m(n * n);
  for (auto& v : m) v = cxd(dist(gen), dist(gen));
  return m;
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; parallel kernels run serially\n");
#endif
  std::printf("%6s %14s %14s %9s %10s\n", "n", "serial [ms]", "parallel [ms]",
              "speedup", "bitwise");

  for (std::size_t n : {64, 128, 192, 260, 384}) {
    const auto a = random_matrix(n, 2 * n + 1);
    const auto b = random_matrix(n, 2 * n + 2);
    std::vector<cxd> c_serial(n * n), c_parallel(n * n);

    const double t_serial = time_best_of(3, [&] {
      fwlab::kernels::matmul_serial(a.data(), b.data(), c_serial.data(), n);
    });
    const double t_parallel = time_best_of(3, [&] {
      fwlab::kernels::matmul_parallel(a.data(), b.data(), c_parallel.data(), n);
    });
    const bool identical = std::memcmp(c_serial.data(), c_parallel.data(),
                                       n * n * sizeof(cxd)) == 0;
    const double m_serial = fwlab::kernels::max_abs_serial(c_serial.data(),
                                                           n * n);
    const double m_parallel = fwlab::kernels::max_abs_parallel(
        c_parallel.data(), n * n);

    std::printf("%6zu %14.3f %14.3f %8.2fx %10s\n", n, 1e3 * t_serial,
                1e3 * t_parallel, t_serial / t_parallel,
                identical && m_serial == m_parallel ? "yes" : "NO");
    if (!identical || m_serial != m_parallel) return 1;
  }
  return 0;
}
