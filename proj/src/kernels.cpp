#include "fwlab/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fwlab::kernels {

namespace {

// Row i of the product: c_row += sum_k a_row[k] * b[k,:], accumulated in
// ascending k. Both matmul variants funnel through this helper so the
// k-ordering (and therefore the rounding) is identical on every path.
// Exact-zero entries of a contribute nothing and are skipped; the operators
// built upstream are mostly structurally sparse (diagonals, two bands), so
// this turns many nominal O(n^3) products into O(n^2) work.
inline void accumulate_row(const cxd* a_row, const cxd* b, cxd* c_row,
                           std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const cxd aik = a_row[k];
    if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
    const cxd* b_row = b + k * n;
    for (std::size_t j = 0; j < n; ++j) c_row[j] += aik * b_row[j];
  }
}

}  // namespace

void matmul_serial(const cxd* a, const cxd* b, cxd* c, std::size_t n) {
  std::fill(c, c + n * n, cxd(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    accumulate_row(a + i * n, b, c + i * n, n);
}

void matmul_parallel(const cxd* a, const cxd* b, cxd* c, std::size_t n) {
  std::fill(c, c + n * n, cxd(0.0, 0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    accumulate_row(a + i * n, b, c + i * n, n);
}

void matmul(const cxd* a, const cxd* b, cxd* c, std::size_t n) {
#ifdef _OPENMP
  if (n >= parallel_threshold) {
    matmul_parallel(a, b, c, n);
    return;
  }
#endif
  matmul_serial(a, b, c, n);
}

double max_abs_serial(const cxd* a, std::size_t count) {
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double max_abs_parallel(const cxd* a, std::size_t count) {
  double m = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i)
    m = std::max(m, std::abs(a[i]));
  return m;
}

double max_abs(const cxd* a, std::size_t count) {
#ifdef _OPENMP
  if (count >= parallel_threshold * parallel_threshold)
    return max_abs_parallel(a, count);
#endif
  return max_abs_serial(a, count);
}

void adjoint(const cxd* a, cxd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[j * n + i] = std::conj(a[i * n + j]);
}

}  // namespace fwlab::kernels
