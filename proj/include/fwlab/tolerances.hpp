#pragma once

// Central tolerance table. Verification checks scale these by the suite's
// tolerance_scale; the values themselves are fixed.

namespace fwlab::tol {

/// Relative Hermiticity residual accepted by hermitian_eig and the
/// SplitHamiltonian constructor.
inline constexpr double hermiticity = 1e-12;
/// Relative eigenvalue floor below which matrix_sqrt_psd clamps to zero.
inline constexpr double psd_clamp = 1e-10;

/// ||[E, O]||_max for the exactness condition.
inline constexpr double exactness = 1e-12;
/// ||U^dagger U - I||_max.
inline constexpr double unitarity = 1e-10;
/// ||U H U^(-1) - (beta eps + E)||_max over the interior block.
inline constexpr double conjugation = 1e-8;
/// Direct comparison of the conjugated Hamiltonian with the closed form
/// built from the Landau-level operators.
inline constexpr double closed_form = 1e-10;
/// Invariance of E and eps under FW conjugation.
inline constexpr double invariance = 1e-8;
/// Commutators [H_FW, E] and [H_FW, beta O^2].
inline constexpr double fw_commutes = 1e-10;

/// Relative eigenvalue match between numerics and analytic records.
inline constexpr double spectrum_rel = 1e-10;
/// Numeric residual for levels that should be exactly degenerate.
inline constexpr double degeneracy = 1e-10;
/// Numeric tolerance on the anomalous-moment splitting 2 mu' H.
inline constexpr double splitting = 1e-9;

/// Wave-function connection checks (lower-spinor norm, component ratio,
/// renormalized-form agreement) in the 2-norm.
inline constexpr double connection = 1e-8;
/// Simultaneous-eigenstate residuals ||(eps - eps0) psi||, ||(E - E0) psi||.
inline constexpr double simultaneous = 1e-8;
/// Eigen-residual above which connect_to_fw rejects the (state, record) pair.
inline constexpr double state_residual = 1e-6;

/// Radial norm defect |integral - 1| on the standard quadrature grid.
inline constexpr double radial_norm = 1e-8;
/// Relative error of the finite-difference radial eigenvalue check.
inline constexpr double radial_eig_rel = 1e-4;

/// Residual floor the negative controls must exceed to count as detected.
inline constexpr double control_floor = 1e-3;

/// Landau levels this many steps below n_max count as interior; everything
/// above is truncation edge.
inline constexpr int interior_margin = 2;

}  // namespace fwlab::tol
