#include "fwlab/operator_algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fwlab/tolerances.hpp"

namespace fwlab {

namespace {

const cxd kI(0.0, 1.0);

void require_square_match(const ComplexMatrix& a, const ComplexMatrix& b,
                          const char* what) {
  if (a.dim() != b.dim() || a.dim() == 0) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim()
        << ")";
    throw std::invalid_argument(msg.str());
  }
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  const double r = a.hermiticity_residual();
  const double scale = std::max(1.0, a.max_abs());
  if (r > tol::hermiticity * scale) {
    std::ostringstream msg;
    msg << what << ": not Hermitian, residual " << r << " exceeds "
        << tol::hermiticity * scale;
    throw std::invalid_argument(msg.str());
  }
}

/// Eigensystem in matrix-function form: `values` aligned with the columns of
/// `vectors`, but unsorted when the input was already diagonal (the identity
/// basis is kept so diagonal operators stay exactly diagonal through
/// functions of them).
struct SpectralData {
  bool diagonal;
  std::vector<double> values;
  ComplexMatrix vectors;  // empty when diagonal
};

SpectralData spectral_data(const ComplexMatrix& a) {
  require_hermitian(a, "spectral decomposition");
  if (a.is_exactly_diagonal()) {
    SpectralData s;
    s.diagonal = true;
    s.values.resize(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) s.values[i] = a(i, i).real();
    return s;
  }
  EigenDecomposition eig = hermitian_eig(a);
  return SpectralData{false, std::move(eig.values), std::move(eig.vectors)};
}

/// f(A) = V f(Lambda) V^dagger from a prepared decomposition.
template <typename F>
ComplexMatrix apply_spectral(const SpectralData& s, F f) {
  const std::size_t n = s.values.size();
  if (s.diagonal) {
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = f(s.values[i]);
    return out;
  }
  ComplexMatrix scaled = s.vectors;  // columns scaled by f(lambda_j)
  for (std::size_t j = 0; j < n; ++j) {
    const cxd fj(f(s.values[j]), 0.0);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return scaled * s.vectors.adjoint();
}

}  // namespace

ComplexMatrix pauli_matrix(Axis axis) {
  switch (axis) {
    case Axis::x:
      return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    case Axis::y:
      return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}});
    case Axis::z:
      return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  }
  throw std::invalid_argument("pauli_matrix: bad axis");
}

ComplexMatrix dirac_beta() {
  ComplexMatrix b(4);
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  b(2, 2) = -1.0;
  b(3, 3) = -1.0;
  return b;
}

ComplexMatrix dirac_alpha(Axis axis) {
  const ComplexMatrix s = pauli_matrix(axis);
  ComplexMatrix a(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      a(i, 2 + j) = s(i, j);
      a(2 + i, j) = s(i, j);
    }
  return a;
}

ComplexMatrix dirac_sigma(Axis axis) {
  const ComplexMatrix s = pauli_matrix(axis);
  ComplexMatrix m(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = s(i, j);
      m(2 + i, 2 + j) = s(i, j);
    }
  return m;
}

ComplexMatrix dirac_polarization(Axis axis) {
  const ComplexMatrix s = pauli_matrix(axis);
  ComplexMatrix m(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = s(i, j);
      m(2 + i, 2 + j) = -s(i, j);
    }
  return m;
}

ComplexMatrix level_kron(const ComplexMatrix& level_op,
                         const ComplexMatrix& spinor_op) {
  if (spinor_op.dim() != 4)
    throw std::invalid_argument("level_kron: spinor operator must be 4x4");
  if (level_op.dim() == 0)
    throw std::invalid_argument("level_kron: empty level operator");
  const std::size_t nl = level_op.dim();
  ComplexMatrix out(4 * nl);
  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nl; ++b) {
      const cxd lv = level_op(a, b);
      if (lv.real() == 0.0 && lv.imag() == 0.0) continue;
      for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t) {
          const cxd sv = spinor_op(s, t);
          if (sv.real() == 0.0 && sv.imag() == 0.0) continue;
          out(4 * a + s, 4 * b + t) = lv * sv;
        }
    }
  return out;
}

ComplexMatrix lift(const ComplexMatrix& spinor_op, std::size_t n_levels) {
  if (n_levels == 0) throw std::invalid_argument("lift: n_levels must be >= 1");
  return level_kron(ComplexMatrix::identity(n_levels), spinor_op);
}

EvenOddParts even_odd_split(const ComplexMatrix& x, const ComplexMatrix& beta) {
  require_square_match(x, beta, "even_odd_split");
  const ComplexMatrix bxb = beta * x * beta;
  EvenOddParts parts{0.5 * (x + bxb), 0.5 * (x - bxb)};
  return parts;
}

SplitHamiltonian::SplitHamiltonian(double mass_in, ComplexMatrix even_in,
                                   ComplexMatrix odd_in, ComplexMatrix beta_in)
    : mass(mass_in),
      even(std::move(even_in)),
      odd(std::move(odd_in)),
      beta(std::move(beta_in)) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("SplitHamiltonian: mass must be positive");
  require_square_match(even, beta, "SplitHamiltonian");
  require_square_match(odd, beta, "SplitHamiltonian");
  if (!even.is_finite() || !odd.is_finite() || !beta.is_finite())
    throw std::invalid_argument("SplitHamiltonian: non-finite entries");
  require_hermitian(even, "SplitHamiltonian even part");
  require_hermitian(odd, "SplitHamiltonian odd part");
  require_hermitian(beta, "SplitHamiltonian beta");
  // The defining block structure must hold exactly, not just to rounding:
  // beta is diagonal with +-1 entries in every intended use, so the
  // commutators below cancel entry by entry.
  if (commutator(beta, even).max_abs() != 0.0)
    throw std::invalid_argument(
        "SplitHamiltonian: even part does not commute with beta exactly");
  if (anticommutator(beta, odd).max_abs() != 0.0)
    throw std::invalid_argument(
        "SplitHamiltonian: odd part does not anticommute with beta exactly");
}

ComplexMatrix SplitHamiltonian::total() const {
  return cxd(mass, 0.0) * beta + even + odd;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.dim() == 0) throw std::invalid_argument("hermitian_eig: empty matrix");
  if (!a.is_finite())
    throw std::invalid_argument("hermitian_eig: non-finite entries");
  require_hermitian(a, "hermitian_eig");

  const std::size_t n = a.dim();
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);

  if (a.is_exactly_diagonal()) {
    // Closed form: sort the (real) diagonal and permute identity columns.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) {
                       return a(i, i).real() < a(j, j).real();
                     });
    for (std::size_t k = 0; k < n; ++k) {
      out.values[k] = a(order[k], order[k]).real();
      out.vectors(order[k], k) = 1.0;
    }
    return out;
  }

  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, k) = solver.eigenvectors()(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(k));
  }
  return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
  SpectralData s = spectral_data(a);
  double lam_max = 0.0;
  for (double v : s.values) lam_max = std::max(lam_max, std::abs(v));
  const double floor = -tol::psd_clamp * std::max(1.0, lam_max);
  for (double& v : s.values) {
    if (v < floor) {
      std::ostringstream msg;
      msg << "matrix_sqrt_psd: eigenvalue " << v
          << " below the PSD clamp floor " << floor;
      throw std::domain_error(msg.str());
    }
    if (v < 0.0) v = 0.0;
  }
  return apply_spectral(s, [](double v) { return std::sqrt(v); });
}

ComplexMatrix epsilon_of(const SplitHamiltonian& h) {
  const cxd m2(h.mass * h.mass, 0.0);
  ComplexMatrix arg = h.odd * h.odd;
  for (std::size_t i = 0; i < arg.dim(); ++i) arg(i, i) += m2;
  return matrix_sqrt_psd(arg);
}

ComplexMatrix fw_unitary(const SplitHamiltonian& h, FwSign sign) {
  const double excess = commutator(h.even, h.odd).max_abs();
  const double scale = std::max(1.0, h.even.max_abs() * h.odd.max_abs());
  if (excess > tol::exactness * scale)
    std::cerr << "fw_unitary: exactness condition violated, ||[E,O]|| = "
              << excess << "; transformation is only approximate\n";

  const std::size_t n = h.dim();
  if (h.odd.max_abs() == 0.0) {
    // O = 0: eps = m and U = (eps + m)/sqrt(2 eps (eps + m)) = 1 exactly.
    return ComplexMatrix::identity(n);
  }

  ComplexMatrix arg = h.odd * h.odd;
  const cxd m2(h.mass * h.mass, 0.0);
  for (std::size_t i = 0; i < n; ++i) arg(i, i) += m2;
  SpectralData s = spectral_data(arg);
  for (double v : s.values) {
    if (v < 0.0)
      throw std::domain_error(
          "fw_unitary: m^2 + O^2 has a negative eigenvalue");
  }

  const double m = h.mass;
  ComplexMatrix eps =
      apply_spectral(s, [](double v) { return std::sqrt(v); });
  ComplexMatrix inv_scale = apply_spectral(s, [m](double v) {
    const double e = std::sqrt(v);
    return 1.0 / std::sqrt(2.0 * e * (e + m));
  });

  ComplexMatrix numerator = h.beta * h.odd;
  if (sign == FwSign::minus) numerator *= cxd(-1.0, 0.0);
  numerator += eps;
  for (std::size_t i = 0; i < n; ++i) numerator(i, i) += cxd(m, 0.0);
  return numerator * inv_scale;
}

ComplexMatrix fw_hamiltonian(const SplitHamiltonian& h) {
  return h.beta * epsilon_of(h) + h.even;
}

InvarianceReport invariance_check(const SplitHamiltonian& h,
                                  std::size_t block_dim) {
  const std::size_t block = block_dim == 0 ? h.dim() : block_dim;
  const ComplexMatrix u_plus = fw_unitary(h, FwSign::plus);
  const ComplexMatrix u_minus = fw_unitary(h, FwSign::minus);
  const ComplexMatrix eps = epsilon_of(h);
  InvarianceReport report{};
  report.even_residual =
      (u_plus * h.even * u_minus - h.even).max_abs_leading_block(block);
  report.epsilon_residual =
      (u_plus * eps * u_minus - eps).max_abs_leading_block(block);
  return report;
}

}  // namespace fwlab
