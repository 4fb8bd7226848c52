#pragma once

#include <complex>
#include <cstddef>

// Dense complex kernels used by the matrix layer. Every kernel exists in a
// serial reference version and an OpenMP version; the unprefixed entry point
// dispatches between them. The parallel versions never split a single
// accumulation, so serial and parallel results are bit-identical and output
// does not depend on the thread count.

namespace fwlab::kernels {

using cxd = std::complex<double>;

// Matrices smaller than this stay on the serial path; the fork/join overhead
// dominates below it.
inline constexpr std::size_t parallel_threshold = 48;

// c = a * b, all n x n row-major.
void matmul_serial(const cxd* a, const cxd* b, cxd* c, std::size_t n);
void matmul_parallel(const cxd* a, const cxd* b, cxd* c, std::size_t n);
void matmul(const cxd* a, const cxd* b, cxd* c, std::size_t n);

// max_i |a_i| over count entries (complex modulus).
double max_abs_serial(const cxd* a, std::size_t count);
double max_abs_parallel(const cxd* a, std::size_t count);
double max_abs(const cxd* a, std::size_t count);

// b = a^dagger, n x n row-major.
void adjoint(const cxd* a, cxd* b, std::size_t n);

}  // namespace fwlab::kernels
