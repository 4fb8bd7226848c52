#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "fwlab/complex_matrix.hpp"
#include "fwlab/operator_algebra.hpp"

// Dirac particle with an anomalous magnetic moment mu' in a uniform magnetic
// field H along z, restricted to the P_z = 0 plane:
//
//   H = beta*m + E + O,   E = -mu' Pi_z H,   O = alpha_x pi_x + alpha_y pi_y,
//
// with kinetic momenta obeying [pi_x, pi_y] = i e H. E and O commute, so the
// FW transformation is exact and the spectrum is
//
//   E(n, lambda) = eps0 + E0,
//   eps0 = sqrt(m^2 + (2n + 1)|e|H - lambda e H),   E0 = -lambda mu' H,
//
// lambda = +-1 the Pi_z polarization. Matrices are truncated at Landau level
// n_max in the oscillator basis, spinor index fastest (dim = 4(n_max + 1)).
// Truncation only corrupts the top few levels; checks therefore restrict to
// an interior block.

namespace fwlab::landau {

struct ModelParams {
  double m = 1.0;        // mass, natural units
  double e = 1.0;        // signed charge
  double H = 0.1;        // field strength, H > 0
  double mu_prime = 1e-3;  // anomalous magnetic moment
  int n_max = 64;        // highest retained Landau level

  /// Throws std::invalid_argument unless m > 0, H > 0, e != 0, n_max >= 4
  /// and all values are finite.
  void validate() const;
};

/// Truncated matrix dimension 4(n_max + 1).
std::size_t landau_dim(const ModelParams& p);
/// Dimension of the interior block: levels up to n_max minus the margin.
std::size_t interior_dim(const ModelParams& p);
/// True when level n sits below the truncation edge.
bool is_interior(const ModelParams& p, int n);
/// Magnetic length b = 1/sqrt(|e|H).
double magnetic_length(const ModelParams& p);

/// Ladder operators on n_levels oscillator states: a|n> = sqrt(n)|n-1>,
/// a_dag|n> = sqrt(n+1)|n+1> (the top raising entry is cut by truncation).
std::pair<ComplexMatrix, ComplexMatrix> ladder_ops(std::size_t n_levels);

/// Kinetic momenta pi_x, pi_y on the Landau-level space. With s = sgn(e H)
/// the lowering operator is a = (pi_x + i s pi_y)/sqrt(2|e|H), which gives
/// [a, a_dag] = +1; the inverse map used here is
///   pi_x = sqrt(|e|H/2) (a + a_dag),  pi_y = -i s sqrt(|e|H/2) (a - a_dag),
/// so [pi_x, pi_y] = i e H holds on the truncated space except in the top
/// level.
std::pair<ComplexMatrix, ComplexMatrix> pi_ops(const ModelParams& p);

/// Assemble the split Hamiltonian: even part -mu' H Pi_z, odd part
/// alpha_x pi_x + alpha_y pi_y, lifted to the product space.
SplitHamiltonian build_dirac_hamiltonian(const ModelParams& p);

/// FW Hamiltonian assembled directly from the closed form
/// beta*sqrt(m^2 + pi_perp^2 - e H Sigma_z) - mu' Pi_z H. The square-root
/// argument is diagonal in the oscillator basis; a negative diagonal entry
/// (impossible for valid params) is rejected.
ComplexMatrix fw_hamiltonian_closed_form(const ModelParams& p);

/// One analytic positive-energy level.
struct EigenRecord {
  int n;          // Landau level
  int lambda;     // Pi_z polarization, +-1
  double M;       // total angular momentum label (half-integer)
  double eps0;    // sqrt(m^2 + (2n + 1 - lambda*sgn(e))|e|H)
  double E0;      // -lambda mu' H
  double E_total; // eps0 + E0
};

/// Analytic record for a single (n, lambda, M). The square-root argument is
/// formed as m^2 + k*|e|H with integer k = 2n + 1 - lambda*sgn(e), so levels
/// that are degenerate in exact arithmetic get bit-identical eps0.
EigenRecord analytic_record(const ModelParams& p, int n, int lambda, double M);

/// All positive-energy records for n = 0..n_max. With M labels omitted each
/// (n, lambda) appears once with the reference label M = lambda/2; otherwise
/// only admissible M values from the list are emitted. Sorted by
/// (E_total, n, lambda, M).
std::vector<EigenRecord> analytic_spectrum(
    const ModelParams& p, const std::vector<double>& M_values = {});

/// Interior records only.
std::vector<EigenRecord> interior_spectrum(
    const ModelParams& p, const std::vector<double>& M_values = {});

/// Coefficient vector over the lifted basis, index 4*level + spinor.
struct BispinorState {
  std::vector<cxd> coeffs;

  std::size_t n_levels() const { return coeffs.size() / 4; }
  double norm() const;
  /// 2-norm of the upper (first two spinor components per level) part.
  double upper_norm() const;
  /// 2-norm of the lower part.
  double lower_norm() const;
  /// Upper-spinor coefficients, 2 per level.
  std::vector<cxd> upper() const;
};

/// Numerically extracted eigenstate of the truncated Dirac Hamiltonian for
/// an interior (n, lambda), paired with its analytic record. Degenerate
/// eigenspaces are resolved by diagonalizing Pi_z inside them; the phase is
/// fixed by making the largest coefficient real positive. Rejects levels in
/// the truncation edge.
std::pair<BispinorState, EigenRecord> dirac_eigenstate(const ModelParams& p,
                                                       int n, int lambda);

/// Same, reusing a precomputed decomposition of the total Hamiltonian
/// (avoids re-diagonalizing when extracting many states).
std::pair<BispinorState, EigenRecord> dirac_eigenstate_from(
    const EigenDecomposition& eig, const ModelParams& p, int n, int lambda);

/// Map a Dirac eigenstate to the FW representation without building U:
/// psi_FW = [eps0 + beta (E - E0)] psi / sqrt(2 eps0 (eps0 + m)). Rejects the
/// pair when ||H psi - E psi|| exceeds the state-residual tolerance (this
/// catches negative-energy input, whose energy is -eps0 + E0, not E_total).
BispinorState connect_to_fw(const BispinorState& state,
                            const EigenRecord& record, const ModelParams& p);

/// Overload reusing an already assembled Hamiltonian (the residual check
/// needs H psi); avoids rebuilding it per state in verification loops.
BispinorState connect_to_fw(const BispinorState& state,
                            const EigenRecord& record, const ModelParams& p,
                            const SplitHamiltonian& h);

/// Component ratio sqrt(2 eps0/(eps0 + m)) relating the FW upper spinor to
/// the Dirac one.
double connection_ratio(const EigenRecord& record, double mass);

/// Renormalized FW spinor: embed the upper-spinor coefficients phi as
/// (phi, 0) and divide by sqrt(<phi|phi>). Rejects phi with zero norm.
BispinorState renormalized_fw(const std::vector<cxd>& phi);

/// Radial profile R_{n_rho, ell}(rho) of a Landau state in the symmetric
/// gauge: R = N x^(ell/2) L_{n_rho}^{ell}(x) exp(-x/2), x = (rho/b)^2/2,
/// normalized so integral R^2 rho d rho = 1.
struct RadialFunction {
  int n_rho;
  int ell;     // |m_l|
  double b;    // magnetic length
  double norm_const;

  double value(double rho) const;
};

RadialFunction make_radial_function(const ModelParams& p, int n_rho, int ell);

/// Generalized Laguerre polynomial L_k^ell(x) by the three-term recurrence.
double laguerre(int k, int ell, double x);

/// Uniform radial grid: points samples at rho = h, 2h, ..., rho_max.
struct GridSpec {
  double rho_max;
  std::size_t points;

  void validate() const;
};

/// FW eigenfunction in coordinate space:
///   Psi^(lambda) = exp(i m_l phi)/sqrt(2 pi) R_{n_rho}^{|m_l|}(rho) zeta,
/// m_l = M - lambda/2, zeta^+ = (1,0,0,0), zeta^- = (0,1,0,0). The radial
/// index n_rho = n - (|m_l| - sgn(eH) m_l)/2 must be non-negative, otherwise
/// the (n, lambda, M) combination is inadmissible and rejected.
struct SampledWavefunction {
  int n;
  int lambda;
  double M;
  int m_l;       // angular factor exponent
  int n_rho;
  double b;
  RadialFunction radial;
  std::vector<double> rho;
  std::vector<double> values;

  /// Constant spinor factor: zeta^+ or zeta^-, exact zeros elsewhere.
  std::array<cxd, 4> zeta() const;
};

SampledWavefunction fw_wavefunction(const ModelParams& p, int n, int lambda,
                                    double M, const GridSpec& grid);

/// Radial quantum number for (n, lambda, M), or -1 when inadmissible.
/// Also rejects M that is not a half-integer.
int radial_index(const ModelParams& p, int n, int lambda, double M);

}  // namespace fwlab::landau
