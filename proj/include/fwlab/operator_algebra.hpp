#pragma once

#include <cstddef>
#include <vector>

#include "fwlab/complex_matrix.hpp"

// Operator algebra for block Hamiltonians H = beta*m + E + O, where the even
// part E commutes with beta and the odd part O anticommutes with it. When
// [E, O] = 0 the Foldy-Wouthuysen transformation is exact:
//
//   U^(+-) = (eps + m +- beta*O) / sqrt(2 eps (eps + m)),
//   eps    = sqrt(m^2 + O^2),
//   U H U^(-1) = beta*eps + E,
//
// with U^(-) = U^(-1) = U^dagger. Everything here works on finite matrix
// truncations; the Landau-level model supplies the concrete operators.

namespace fwlab {

enum class Axis { x, y, z };

/// 2x2 Pauli matrix for the given axis.
ComplexMatrix pauli_matrix(Axis axis);
/// beta = diag(1, 1, -1, -1) in the standard (Dirac) representation,
/// spinor component order (u_up, u_down, l_up, l_down).
ComplexMatrix dirac_beta();
/// alpha_k = offdiag(sigma_k, sigma_k).
ComplexMatrix dirac_alpha(Axis axis);
/// Spin matrix Sigma_k = diag(sigma_k, sigma_k).
ComplexMatrix dirac_sigma(Axis axis);
/// Polarization matrix Pi_k = beta * Sigma_k = diag(sigma_k, -sigma_k).
ComplexMatrix dirac_polarization(Axis axis);

/// Kronecker product level_op (x) spinor_op with the spinor index fastest:
/// global index = 4*level + spinor. spinor_op must be 4x4.
ComplexMatrix level_kron(const ComplexMatrix& level_op,
                         const ComplexMatrix& spinor_op);
/// level_kron(I_n_levels, spinor_op); rejects n_levels = 0.
ComplexMatrix lift(const ComplexMatrix& spinor_op, std::size_t n_levels);

struct EvenOddParts {
  ComplexMatrix even;
  ComplexMatrix odd;
};

/// Split X into beta-even and beta-odd parts, E = (X + beta X beta)/2 and
/// O = (X - beta X beta)/2. For diagonal beta with +-1 entries the split is
/// exact entry by entry.
EvenOddParts even_odd_split(const ComplexMatrix& x, const ComplexMatrix& beta);

/// Validated container for H = beta*m + E + O. Construction enforces m > 0,
/// matching dimensions, finite Hermitian parts, and the beta-commutation
/// relations [beta, E] = 0 and {beta, O} = 0 exactly at entry level.
/// Treat instances as immutable after construction.
struct SplitHamiltonian {
  SplitHamiltonian(double mass_in, ComplexMatrix even_in, ComplexMatrix odd_in,
                   ComplexMatrix beta_in);

  double mass;
  ComplexMatrix even;
  ComplexMatrix odd;
  ComplexMatrix beta;

  std::size_t dim() const { return beta.dim(); }
  /// beta*m + E + O.
  ComplexMatrix total() const;
};

/// Eigensystem of a Hermitian matrix: values ascending, eigenvectors as the
/// matching orthonormal columns of `vectors`.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Diagonalize a Hermitian matrix. Rejects input whose Hermiticity residual
/// exceeds 1e-12 relative to its max norm (the residual is quoted in the
/// exception message). Exactly diagonal input takes a closed-form path that
/// introduces no rounding: sorted diagonal entries with permutation
/// eigenvectors.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

/// Square root of a Hermitian positive-semidefinite matrix via its
/// eigensystem. Eigenvalues in [-1e-10 * max|lambda|, 0) are clamped to zero;
/// anything more negative is rejected.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

/// eps = sqrt(m^2 + O^2) for the given split Hamiltonian.
ComplexMatrix epsilon_of(const SplitHamiltonian& h);

enum class FwSign { plus, minus };

/// The exact FW operator U^(+) (sign = plus) or its inverse U^(-) = U^dagger
/// (sign = minus). If [E, O] deviates from zero beyond tolerance the
/// transformation is no longer exact; a warning with the residual goes to
/// stderr and the operator is still returned, so negative controls can probe
/// how the downstream checks fail.
ComplexMatrix fw_unitary(const SplitHamiltonian& h, FwSign sign);

/// The transformed Hamiltonian beta*eps + E.
ComplexMatrix fw_hamiltonian(const SplitHamiltonian& h);

struct InvarianceReport {
  /// ||U E U^(-1) - E||_max over the leading block.
  double even_residual;
  /// ||U eps U^(-1) - eps||_max over the leading block.
  double epsilon_residual;
};

/// Check that the even part and eps are invariant under FW conjugation.
/// block_dim = 0 means the full matrix; a smaller value restricts the max
/// norm to the leading block (used to mask truncation-edge artifacts).
InvarianceReport invariance_check(const SplitHamiltonian& h,
                                  std::size_t block_dim = 0);

}  // namespace fwlab
