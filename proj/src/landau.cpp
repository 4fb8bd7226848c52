#include "fwlab/landau.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fwlab/tolerances.hpp"

namespace fwlab::landau {

namespace {

const cxd kI(0.0, 1.0);

int charge_sign(const ModelParams& p) { return p.e > 0.0 ? 1 : -1; }

void require_lambda(int lambda) {
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("lambda must be +1 or -1");
}

/// Diagonal entry of the lifted Pi_z = diag(1, -1, -1, 1) at flat index i.
double pi_z_entry(std::size_t i) {
  const std::size_t s = i % 4;
  return (s == 0 || s == 3) ? 1.0 : -1.0;
}

/// Half-integer check for angular momentum labels; returns 2M as an integer.
long long half_integer_times_two(double m_label) {
  const double two_m = 2.0 * m_label;
  const long long r = std::llround(two_m);
  if (std::abs(two_m - static_cast<double>(r)) > 1e-9 || r % 2 == 0)
    throw std::invalid_argument(
        "angular momentum label M must be a half-integer");
  return r;
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(m) || !std::isfinite(e) || !std::isfinite(H) ||
      !std::isfinite(mu_prime))
    throw std::invalid_argument("ModelParams: non-finite parameter");
  if (!(m > 0.0)) throw std::invalid_argument("ModelParams: m must be > 0");
  if (!(H > 0.0)) throw std::invalid_argument("ModelParams: H must be > 0");
  if (e == 0.0) throw std::invalid_argument("ModelParams: e must be nonzero");
  if (n_max < 4)
    throw std::invalid_argument("ModelParams: n_max must be at least 4");
  if (n_max > 4096)
    throw std::invalid_argument("ModelParams: n_max too large");
}

std::size_t landau_dim(const ModelParams& p) {
  return 4 * static_cast<std::size_t>(p.n_max + 1);
}

std::size_t interior_dim(const ModelParams& p) {
  return 4 * static_cast<std::size_t>(p.n_max + 1 - tol::interior_margin);
}

bool is_interior(const ModelParams& p, int n) {
  return n >= 0 && n <= p.n_max - tol::interior_margin;
}

double magnetic_length(const ModelParams& p) {
  return 1.0 / std::sqrt(std::abs(p.e) * p.H);
}

std::pair<ComplexMatrix, ComplexMatrix> ladder_ops(std::size_t n_levels) {
  if (n_levels == 0)
    throw std::invalid_argument("ladder_ops: n_levels must be >= 1");
  ComplexMatrix a(n_levels);
  for (std::size_t n = 1; n < n_levels; ++n)
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a, a.adjoint()};
}

std::pair<ComplexMatrix, ComplexMatrix> pi_ops(const ModelParams& p) {
  p.validate();
  const std::size_t n_levels = static_cast<std::size_t>(p.n_max + 1);
  auto [a, a_dag] = ladder_ops(n_levels);
  const double s = charge_sign(p);
  const double scale = std::sqrt(0.5 * std::abs(p.e) * p.H);
  ComplexMatrix pi_x = cxd(scale, 0.0) * (a + a_dag);
  ComplexMatrix pi_y = cxd(0.0, -s * scale) * (a - a_dag);
  return {pi_x, pi_y};
}

SplitHamiltonian build_dirac_hamiltonian(const ModelParams& p) {
  p.validate();
  const std::size_t n_levels = static_cast<std::size_t>(p.n_max + 1);
  auto [pi_x, pi_y] = pi_ops(p);
  ComplexMatrix even =
      cxd(-p.mu_prime * p.H, 0.0) * lift(dirac_polarization(Axis::z), n_levels);
  ComplexMatrix odd = level_kron(pi_x, dirac_alpha(Axis::x)) +
                      level_kron(pi_y, dirac_alpha(Axis::y));
  return SplitHamiltonian(p.m, std::move(even), std::move(odd),
                          lift(dirac_beta(), n_levels));
}

ComplexMatrix fw_hamiltonian_closed_form(const ModelParams& p) {
  p.validate();
  const std::size_t n_levels = static_cast<std::size_t>(p.n_max + 1);
  auto [pi_x, pi_y] = pi_ops(p);
  // pi_perp^2 is diagonal in the oscillator basis; the off-diagonal a^2 and
  // a_dag^2 pieces of pi_x^2 and pi_y^2 cancel entry by entry.
  const ComplexMatrix pi_perp_sq = pi_x * pi_x + pi_y * pi_y;
  ComplexMatrix arg = level_kron(pi_perp_sq, ComplexMatrix::identity(4)) -
                      cxd(p.e * p.H, 0.0) * lift(dirac_sigma(Axis::z), n_levels);
  const cxd m2(p.m * p.m, 0.0);
  for (std::size_t i = 0; i < arg.dim(); ++i) {
    arg(i, i) += m2;
    if (arg(i, i).real() < 0.0) {
      std::ostringstream msg;
      msg << "fw_hamiltonian_closed_form: negative square-root argument "
          << arg(i, i).real() << " at basis index " << i;
      throw std::domain_error(msg.str());
    }
  }
  ComplexMatrix fw = lift(dirac_beta(), n_levels) * matrix_sqrt_psd(arg);
  fw += cxd(-p.mu_prime * p.H, 0.0) * lift(dirac_polarization(Axis::z),
                                           n_levels);
  return fw;
}

EigenRecord analytic_record(const ModelParams& p, int n, int lambda,
                            double m_label) {
  p.validate();
  require_lambda(lambda);
  if (n < 0 || n > p.n_max)
    throw std::invalid_argument("analytic_record: n out of range");
  half_integer_times_two(m_label);
  // Form the square-root argument as m^2 + k*|e|H with integer k so that
  // levels degenerate in exact arithmetic ((n,-1) and (n+1,+1) for e > 0)
  // produce bit-identical eps0.
  const int k = 2 * n + 1 - lambda * charge_sign(p);
  const double c = std::abs(p.e) * p.H;
  const double eps0 = std::sqrt(p.m * p.m + static_cast<double>(k) * c);
  const double e0 = -static_cast<double>(lambda) * (p.mu_prime * p.H);
  return EigenRecord{n, lambda, m_label, eps0, e0, eps0 + e0};
}

std::vector<EigenRecord> analytic_spectrum(const ModelParams& p,
                                           const std::vector<double>& m_values) {
  p.validate();
  std::vector<EigenRecord> records;
  for (int n = 0; n <= p.n_max; ++n)
    for (int lambda : {1, -1}) {
      if (m_values.empty()) {
        records.push_back(analytic_record(p, n, lambda, 0.5 * lambda));
        continue;
      }
      for (double m_label : m_values) {
        if (radial_index(p, n, lambda, m_label) < 0) continue;
        records.push_back(analytic_record(p, n, lambda, m_label));
      }
    }
  std::sort(records.begin(), records.end(),
            [](const EigenRecord& a, const EigenRecord& b) {
              return std::tie(a.E_total, a.n, a.lambda, a.M) <
                     std::tie(b.E_total, b.n, b.lambda, b.M);
            });
  return records;
}

std::vector<EigenRecord> interior_spectrum(const ModelParams& p,
                                           const std::vector<double>& m_values) {
  std::vector<EigenRecord> records = analytic_spectrum(p, m_values);
  std::erase_if(records,
                [&](const EigenRecord& r) { return !is_interior(p, r.n); });
  return records;
}

double BispinorState::norm() const { return vector_norm(coeffs); }

double BispinorState::upper_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (i % 4 < 2) s += std::norm(coeffs[i]);
  return std::sqrt(s);
}

double BispinorState::lower_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (i % 4 >= 2) s += std::norm(coeffs[i]);
  return std::sqrt(s);
}

std::vector<cxd> BispinorState::upper() const {
  std::vector<cxd> out;
  out.reserve(coeffs.size() / 2);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (i % 4 < 2) out.push_back(coeffs[i]);
  return out;
}

std::pair<BispinorState, EigenRecord> dirac_eigenstate_from(
    const EigenDecomposition& eig, const ModelParams& p, int n, int lambda) {
  p.validate();
  require_lambda(lambda);
  if (!is_interior(p, n)) {
    std::ostringstream msg;
    msg << "dirac_eigenstate: level n = " << n
        << " is outside the interior window [0, " << p.n_max - tol::interior_margin
        << "] (truncation edge)";
    throw std::domain_error(msg.str());
  }
  const std::size_t dim = landau_dim(p);
  if (eig.vectors.dim() != dim || eig.values.size() != dim)
    throw std::invalid_argument(
        "dirac_eigenstate: decomposition dimension mismatch");

  const EigenRecord rec = analytic_record(p, n, lambda, 0.5 * lambda);
  const double window = 1e-8 * std::max(1.0, std::abs(rec.E_total));
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < dim; ++k)
    if (std::abs(eig.values[k] - rec.E_total) <= window) candidates.push_back(k);
  if (candidates.empty())
    throw std::runtime_error(
        "dirac_eigenstate: no numerical eigenvalue near the analytic level");

  // Resolve the Pi_z polarization inside the (possibly degenerate)
  // eigenspace: diagonalize the projected Pi_z and take the lambda branch.
  const std::size_t k_count = candidates.size();
  ComplexMatrix projected(k_count);
  for (std::size_t a = 0; a < k_count; ++a)
    for (std::size_t b = 0; b < k_count; ++b) {
      cxd acc(0.0, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        acc += std::conj(eig.vectors(i, candidates[a])) * pi_z_entry(i) *
               eig.vectors(i, candidates[b]);
      projected(a, b) = acc;
    }
  // Symmetrize away rounding dirt so the small eigenproblem is clean.
  projected = cxd(0.5, 0.0) * (projected + projected.adjoint());
  const EigenDecomposition pol = hermitian_eig(projected);
  std::size_t best = 0;
  double best_dist = std::abs(pol.values[0] - lambda);
  for (std::size_t k = 1; k < k_count; ++k) {
    const double d = std::abs(pol.values[k] - lambda);
    if (d < best_dist) {
      best = k;
      best_dist = d;
    }
  }
  if (best_dist > 0.1)
    throw std::runtime_error(
        "dirac_eigenstate: could not resolve the requested polarization");

  BispinorState state;
  state.coeffs.assign(dim, cxd(0.0, 0.0));
  for (std::size_t b = 0; b < k_count; ++b) {
    const cxd w = pol.vectors(b, best);
    for (std::size_t i = 0; i < dim; ++i)
      state.coeffs[i] += eig.vectors(i, candidates[b]) * w;
  }
  const double nrm = state.norm();
  for (cxd& v : state.coeffs) v /= nrm;

  // Canonical phase: largest coefficient real positive.
  std::size_t arg_max = 0;
  double mag_max = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double mag = std::abs(state.coeffs[i]);
    if (mag > mag_max) {
      mag_max = mag;
      arg_max = i;
    }
  }
  const cxd phase = std::conj(state.coeffs[arg_max]) / mag_max;
  for (cxd& v : state.coeffs) v *= phase;
  return {std::move(state), rec};
}

std::pair<BispinorState, EigenRecord> dirac_eigenstate(const ModelParams& p,
                                                       int n, int lambda) {
  const SplitHamiltonian h = build_dirac_hamiltonian(p);
  const EigenDecomposition eig = hermitian_eig(h.total());
  return dirac_eigenstate_from(eig, p, n, lambda);
}

BispinorState connect_to_fw(const BispinorState& state,
                            const EigenRecord& record, const ModelParams& p) {
  return connect_to_fw(state, record, p, build_dirac_hamiltonian(p));
}

BispinorState connect_to_fw(const BispinorState& state,
                            const EigenRecord& record, const ModelParams& p,
                            const SplitHamiltonian& h) {
  p.validate();
  if (state.coeffs.size() != landau_dim(p) || h.dim() != landau_dim(p))
    throw std::invalid_argument("connect_to_fw: state dimension mismatch");
  const double nrm = state.norm();
  if (!(nrm > 0.0))
    throw std::invalid_argument("connect_to_fw: zero state");

  const std::vector<cxd> hv = h.total().apply(state.coeffs);
  double residual_sq = 0.0;
  for (std::size_t i = 0; i < hv.size(); ++i)
    residual_sq += std::norm(hv[i] - record.E_total * state.coeffs[i]);
  const double residual =
      std::sqrt(residual_sq) / (nrm * std::max(1.0, std::abs(record.E_total)));
  if (residual > tol::state_residual) {
    std::ostringstream msg;
    msg << "connect_to_fw: state is not an eigenstate at E = " << record.E_total
        << " (eigen-residual " << residual << ")";
    throw std::invalid_argument(msg.str());
  }

  const double eps0 = record.eps0;
  const double shift = record.E_total - record.E0;  // equals eps0 up to rounding
  const double denom = std::sqrt(2.0 * eps0 * (eps0 + p.m));
  BispinorState out;
  out.coeffs.resize(state.coeffs.size());
  for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
    const double beta_sign = (i % 4 < 2) ? 1.0 : -1.0;
    out.coeffs[i] = (eps0 + beta_sign * shift) / denom * state.coeffs[i];
  }
  return out;
}

double connection_ratio(const EigenRecord& record, double mass) {
  return std::sqrt(2.0 * record.eps0 / (record.eps0 + mass));
}

BispinorState renormalized_fw(const std::vector<cxd>& phi) {
  if (phi.empty() || phi.size() % 2 != 0)
    throw std::invalid_argument(
        "renormalized_fw: phi must hold two components per level");
  const double nrm = vector_norm(phi);
  if (!(nrm > 0.0))
    throw std::domain_error("renormalized_fw: phi has zero norm");
  BispinorState out;
  out.coeffs.assign(2 * phi.size(), cxd(0.0, 0.0));
  for (std::size_t a = 0; a < phi.size() / 2; ++a) {
    out.coeffs[4 * a] = phi[2 * a] / nrm;
    out.coeffs[4 * a + 1] = phi[2 * a + 1] / nrm;
  }
  return out;
}

double RadialFunction::value(double rho) const {
  const double c = 1.0 / (b * b);
  const double x = 0.5 * c * rho * rho;
  return norm_const * std::pow(x, 0.5 * ell) * laguerre(n_rho, ell, x) *
         std::exp(-0.5 * x);
}

RadialFunction make_radial_function(const ModelParams& p, int n_rho, int ell) {
  p.validate();
  if (n_rho < 0 || ell < 0)
    throw std::invalid_argument("make_radial_function: negative index");
  const double c = std::abs(p.e) * p.H;
  // N^2 = c * n_rho! / (n_rho + ell)! from the Laguerre norm.
  const double log_ratio =
      std::lgamma(n_rho + 1.0) - std::lgamma(n_rho + ell + 1.0);
  RadialFunction rf;
  rf.n_rho = n_rho;
  rf.ell = ell;
  rf.b = magnetic_length(p);
  rf.norm_const = std::sqrt(c * std::exp(log_ratio));
  return rf;
}

double laguerre(int k, int ell, double x) {
  if (k < 0 || ell < 0)
    throw std::invalid_argument("laguerre: negative index");
  double lm1 = 1.0;  // L_0
  if (k == 0) return lm1;
  double l = 1.0 + ell - x;  // L_1
  for (int j = 1; j < k; ++j) {
    const double lp1 =
        ((2.0 * j + 1.0 + ell - x) * l - (j + ell) * lm1) / (j + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

void GridSpec::validate() const {
  if (!std::isfinite(rho_max) || !(rho_max > 0.0))
    throw std::invalid_argument("GridSpec: rho_max must be positive");
  if (points < 2)
    throw std::invalid_argument("GridSpec: need at least 2 points");
}

int radial_index(const ModelParams& p, int n, int lambda, double m_label) {
  p.validate();
  require_lambda(lambda);
  const long long two_m = half_integer_times_two(m_label);
  // m_l = M - lambda/2 is an integer.
  const long long m_l = (two_m - lambda) / 2;
  const long long drop =
      (std::abs(m_l) - static_cast<long long>(charge_sign(p)) * m_l) / 2;
  return n - static_cast<int>(drop);
}

std::array<cxd, 4> SampledWavefunction::zeta() const {
  std::array<cxd, 4> z{cxd(0.0, 0.0), cxd(0.0, 0.0), cxd(0.0, 0.0),
                       cxd(0.0, 0.0)};
  z[lambda == 1 ? 0 : 1] = cxd(1.0, 0.0);
  return z;
}

SampledWavefunction fw_wavefunction(const ModelParams& p, int n, int lambda,
                                    double m_label, const GridSpec& grid) {
  p.validate();
  require_lambda(lambda);
  grid.validate();
  if (n < 0 || n > p.n_max)
    throw std::domain_error("fw_wavefunction: n out of range");
  const int n_rho = radial_index(p, n, lambda, m_label);
  const long long two_m = half_integer_times_two(m_label);
  const int m_l = static_cast<int>((two_m - lambda) / 2);
  if (n_rho < 0) {
    std::ostringstream msg;
    msg << "fw_wavefunction: (n = " << n << ", lambda = " << lambda
        << ", M = " << m_label << ") gives radial quantum number n_rho = "
        << n_rho << "; the state is inadmissible";
    throw std::domain_error(msg.str());
  }

  SampledWavefunction w;
  w.n = n;
  w.lambda = lambda;
  w.M = m_label;
  w.m_l = m_l;
  w.n_rho = n_rho;
  w.b = magnetic_length(p);
  w.radial = make_radial_function(p, n_rho, std::abs(m_l));
  const double h = grid.rho_max / static_cast<double>(grid.points);
  w.rho.resize(grid.points);
  w.values.resize(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    w.rho[i] = h * static_cast<double>(i + 1);
    w.values[i] = w.radial.value(w.rho[i]);
  }
  return w;
}

}  // namespace fwlab::landau
