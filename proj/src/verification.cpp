#include "fwlab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fwlab/tolerances.hpp"

namespace fwlab::verification {

namespace {

using landau::BispinorState;
using landau::EigenRecord;
using landau::ModelParams;

std::string fmt_int(long long v) { return std::to_string(v); }

/// Random Hermitian matrix with entries of the given magnitude.
ComplexMatrix random_hermitian(std::size_t dim, double scale,
                               std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, scale);
  ComplexMatrix v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v(i, i) = cxd(dist(gen), 0.0);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const cxd z(dist(gen), dist(gen));
      v(i, j) = z;
      v(j, i) = std::conj(z);
    }
  }
  return v;
}

/// The sabotaged model for the negative control: moment coupled through
/// Sigma_z instead of Pi_z. The even part still commutes with beta, but no
/// longer with the odd part, so the exactness condition breaks.
SplitHamiltonian build_sabotaged(const ModelParams& p) {
  const SplitHamiltonian good = landau::build_dirac_hamiltonian(p);
  const std::size_t n_levels = static_cast<std::size_t>(p.n_max + 1);
  ComplexMatrix bad_even =
      cxd(-p.mu_prime * p.H, 0.0) * lift(dirac_sigma(Axis::z), n_levels);
  return SplitHamiltonian(p.m, std::move(bad_even), good.odd, good.beta);
}

std::vector<cxd> apply_diagonal_shifted(const ComplexMatrix& a, double shift,
                                        const std::vector<cxd>& v) {
  std::vector<cxd> out = a.apply(v);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= shift * v[i];
  return out;
}

}  // namespace

SpectrumComparison compare_spectra(const std::vector<double>& numeric,
                                   const std::vector<EigenRecord>& records,
                                   double rel_tol) {
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("compare_spectra: rel_tol must be positive");
  SpectrumComparison cmp;

  // All candidate pairings within tolerance, cheapest first; ties broken by
  // record then numeric index so the pairing is reproducible.
  struct Candidate {
    double rel;
    std::size_t rec;
    std::size_t num;
  };
  std::vector<Candidate> candidates;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const double scale = std::abs(records[r].E_total);
    for (std::size_t i = 0; i < numeric.size(); ++i) {
      const double rel = std::abs(numeric[i] - records[r].E_total) /
                         std::max(scale, 1e-300);
      if (rel <= rel_tol) candidates.push_back({rel, r, i});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.rel, a.rec, a.num) <
                     std::tie(b.rel, b.rec, b.num);
            });

  std::vector<char> rec_used(records.size(), 0);
  std::vector<char> num_used(numeric.size(), 0);
  std::vector<MatchedLevel> matched_by_record(records.size());
  std::vector<char> rec_matched(records.size(), 0);
  for (const Candidate& c : candidates) {
    if (rec_used[c.rec] || num_used[c.num]) continue;
    rec_used[c.rec] = 1;
    num_used[c.num] = 1;
    rec_matched[c.rec] = 1;
    matched_by_record[c.rec] = MatchedLevel{numeric[c.num], records[c.rec], c.rel};
  }

  cmp.all_records_matched = true;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const double scale = std::max(std::abs(records[r].E_total), 1e-300);
    // Nearest and second-nearest numeric candidates for ambiguity and
    // diagnostic reporting.
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    double v1 = 0.0, v2 = 0.0;
    for (double v : numeric) {
      const double rel = std::abs(v - records[r].E_total) / scale;
      if (rel < d1) {
        d2 = d1;
        v2 = v1;
        d1 = rel;
        v1 = v;
      } else if (rel < d2) {
        d2 = rel;
        v2 = v;
      }
    }
    if (rec_matched[r]) {
      cmp.matched.push_back(matched_by_record[r]);
      cmp.max_rel_err = std::max(cmp.max_rel_err, matched_by_record[r].rel_err);
      if (d2 - d1 <= 0.1 * rel_tol)
        cmp.ambiguities.push_back(AmbiguousMatch{records[r], v1, v2});
    } else {
      cmp.all_records_matched = false;
      cmp.unmatched_records.push_back(UnmatchedRecord{records[r], d1});
      cmp.max_rel_err = std::max(cmp.max_rel_err, d1);
    }
  }
  for (std::size_t i = 0; i < numeric.size(); ++i)
    if (!num_used[i]) cmp.unmatched_numeric.push_back(numeric[i]);
  return cmp;
}

EigenDecomposition oracle_diagonalize(const ModelParams& p) {
  return hermitian_eig(landau::build_dirac_hamiltonian(p).total());
}

landau::GridSpec standard_radial_grid(const ModelParams& p) {
  return landau::GridSpec{12.0 * landau::magnetic_length(p), 4000};
}

namespace {

/// Simpson quadrature of f over [0, rho_max] where f is sampled on the
/// uniform grid h, 2h, ..., Nh and vanishes at rho = 0. Falls back to a
/// trapezoid for the last interval if the count comes out odd.
double quadrature_from_zero(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();  // intervals counting the [0, h] one
  double sum = 0.0;
  std::size_t simpson_end = n % 2 == 0 ? n : n - 1;  // even interval count
  // Simpson over [0, simpson_end * h] with f(0) = 0.
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    const double f0 = i == 0 ? 0.0 : f[i - 1];
    sum += (h / 3.0) * (f0 + 4.0 * f[i] + f[i + 1]);
  }
  if (simpson_end < n)
    sum += 0.5 * h * (f[n - 2] + f[n - 1]);
  return sum;
}

}  // namespace

ResidualReport radial_norm_check(const ModelParams& p, int n, int lambda,
                                 double m_label, const landau::GridSpec& grid,
                                 double tolerance_scale) {
  const landau::SampledWavefunction w =
      landau::fw_wavefunction(p, n, lambda, m_label, grid);
  const double h = grid.rho_max / static_cast<double>(grid.points);
  std::vector<double> f(w.values.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = w.values[i] * w.values[i] * w.rho[i];
  const double integral = quadrature_from_zero(f, h);
  const double residual = std::abs(integral - 1.0);
  const double tolerance = tol::radial_norm * tolerance_scale;
  return ResidualReport{
      "radial_norm",
      residual,
      tolerance,
      residual <= tolerance,
      {{"n", fmt_int(n)},
       {"lambda", fmt_int(lambda)},
       {"n_rho", fmt_int(w.n_rho)},
       {"ell", fmt_int(std::abs(w.m_l))}}};
}

ResidualReport radial_eigenvalue_check(const ModelParams& p, int n, int lambda,
                                       double m_label,
                                       const landau::GridSpec& grid,
                                       double tolerance_scale) {
  if (grid.points < 16)
    throw std::invalid_argument(
        "radial_eigenvalue_check: grid too coarse for finite differences");
  const landau::SampledWavefunction w =
      landau::fw_wavefunction(p, n, lambda, m_label, grid);
  const double h = grid.rho_max / static_cast<double>(grid.points);
  const double c = std::abs(p.e) * p.H;
  const double eh = p.e * p.H;         // signed, enters the cross term
  const double ml = static_cast<double>(w.m_l);

  // Rayleigh quotient of D = -d^2/drho^2 - (1/rho) d/drho + m_l^2/rho^2
  // - eH m_l + (eH)^2 rho^2 / 4 with central differences, integrating
  // R (D R) rho over the interior nodes. The eigenfunction identity holds
  // pointwise, so restricting the quadrature window does not bias the
  // quotient.
  double numer = 0.0;
  double denom = 0.0;
  for (std::size_t i = 1; i + 1 < w.values.size(); ++i) {
    const double rho = w.rho[i];
    const double r0 = w.values[i];
    const double d2 = (w.values[i + 1] - 2.0 * r0 + w.values[i - 1]) / (h * h);
    const double d1 = (w.values[i + 1] - w.values[i - 1]) / (2.0 * h);
    const double dr = -d2 - d1 / rho +
                      (ml * ml / (rho * rho) - eh * ml +
                       0.25 * eh * eh * rho * rho) *
                          r0;
    numer += r0 * dr * rho;
    denom += r0 * r0 * rho;
  }
  if (denom == 0.0)
    throw std::runtime_error("radial_eigenvalue_check: empty profile");
  const double estimate = numer / denom;
  const double exact = (2.0 * n + 1.0) * c;
  const double residual = std::abs(estimate - exact) / exact;
  const double tolerance = tol::radial_eig_rel * tolerance_scale;
  return ResidualReport{
      "radial_eigenvalue",
      residual,
      tolerance,
      residual <= tolerance,
      {{"n", fmt_int(n)},
       {"lambda", fmt_int(lambda)},
       {"n_rho", fmt_int(w.n_rho)},
       {"ell", fmt_int(std::abs(w.m_l))}}};
}

std::vector<ResidualReport> run_suite(const ModelParams& p,
                                      const SuiteOptions& opts) {
  p.validate();
  if (!(opts.tolerance_scale > 0.0) || !std::isfinite(opts.tolerance_scale))
    throw std::invalid_argument("run_suite: tolerance_scale must be positive");
  const double ts = opts.tolerance_scale;
  std::vector<ResidualReport> reports;
  auto push = [&](std::string name, double residual, double base_tol,
                  std::vector<std::pair<std::string, std::string>> ctx = {}) {
    const double tolerance = base_tol * ts;
    reports.push_back(ResidualReport{std::move(name), residual, tolerance,
                                     residual <= tolerance, std::move(ctx)});
  };

  const SplitHamiltonian h = opts.sabotage_polarization
                                 ? build_sabotaged(p)
                                 : landau::build_dirac_hamiltonian(p);
  const std::size_t dim = h.dim();
  const std::size_t interior = landau::interior_dim(p);
  const ComplexMatrix total = h.total();

  // --- Exactness and conservation, exact at entry level by construction.
  push("exactness_commutator", commutator(h.even, h.odd).max_abs(),
       tol::exactness);
  const std::size_t n_levels = static_cast<std::size_t>(p.n_max + 1);
  const ComplexMatrix pi_z_lifted = lift(dirac_polarization(Axis::z), n_levels);
  push("polarization_conserved", commutator(pi_z_lifted, total).max_abs(), 0.0);

  // --- FW operator block.
  const ComplexMatrix u_plus = fw_unitary(h, FwSign::plus);
  const ComplexMatrix u_minus = fw_unitary(h, FwSign::minus);
  push("unitarity",
       (u_plus.adjoint() * u_plus - ComplexMatrix::identity(dim)).max_abs(),
       tol::unitarity);
  push("inverse_is_adjoint", (u_minus - u_plus.adjoint()).max_abs(),
       tol::unitarity);

  const ComplexMatrix eps = epsilon_of(h);
  const ComplexMatrix hfw = h.beta * eps + h.even;
  push("fw_conjugation",
       (u_plus * total * u_minus - hfw).max_abs_leading_block(interior),
       tol::conjugation);
  push("closed_form_agreement",
       (hfw - landau::fw_hamiltonian_closed_form(p))
           .max_abs_leading_block(interior),
       tol::closed_form);
  push("invariance_even",
       (u_plus * h.even * u_minus - h.even).max_abs_leading_block(interior),
       tol::invariance);
  push("invariance_epsilon",
       (u_plus * eps * u_minus - eps).max_abs_leading_block(interior),
       tol::invariance);
  push("hfw_commutes_even", commutator(hfw, h.even).max_abs(),
       tol::fw_commutes);
  push("hfw_commutes_beta_o2",
       commutator(hfw, h.beta * (h.odd * h.odd)).max_abs(), tol::fw_commutes);

  // --- Spectrum against the oracle (perturbed when so configured).
  EigenDecomposition eig;
  bool eig_is_clean;
  if (opts.perturbation > 0.0) {
    ComplexMatrix perturbed = total;
    perturbed += random_hermitian(dim, opts.perturbation, opts.seed);
    eig = hermitian_eig(perturbed);
    eig_is_clean = false;
  } else {
    eig = hermitian_eig(total);
    eig_is_clean = true;
  }
  const std::vector<EigenRecord> records = landau::interior_spectrum(p);
  const SpectrumComparison cmp =
      compare_spectra(eig.values, records, tol::spectrum_rel * ts);
  {
    ResidualReport rep;
    rep.check = "spectrum_match";
    rep.max_residual = cmp.max_rel_err;
    rep.tolerance = tol::spectrum_rel * ts;
    rep.passed = cmp.all_records_matched && cmp.max_rel_err <= rep.tolerance;
    rep.context = {
        {"records", fmt_int(static_cast<long long>(records.size()))},
        {"matched", fmt_int(static_cast<long long>(cmp.matched.size()))},
        {"unmatched_records",
         fmt_int(static_cast<long long>(cmp.unmatched_records.size()))},
        {"unmatched_numeric",
         fmt_int(static_cast<long long>(cmp.unmatched_numeric.size()))},
        {"ambiguous", fmt_int(static_cast<long long>(cmp.ambiguities.size()))}};
    reports.push_back(std::move(rep));
  }

  // --- Degeneracy bookkeeping. For charge sign s the partner levels are
  // (n, -s) and (n+1, +s): both have eps0 = sqrt(m^2 + (2n+2)|e|H), built
  // bit-identically, and their E0 differ by exactly 2 mu' H.
  {
    const int s = p.e > 0.0 ? 1 : -1;
    std::map<std::pair<int, int>, double> matched_value;
    for (const MatchedLevel& m : cmp.matched)
      matched_value[{m.record.n, m.record.lambda}] = m.numeric;
    const double split_exact = 2.0 * (p.mu_prime * p.H);
    const bool degenerate_branch = p.mu_prime == 0.0;
    double analytic_residual = 0.0;
    double numeric_residual = 0.0;
    long long pairs_total = 0;
    long long pairs_numeric = 0;
    for (int n = 0; n + 1 <= p.n_max - tol::interior_margin; ++n) {
      const EigenRecord low = landau::analytic_record(p, n, -s, -0.5 * s);
      const EigenRecord high = landau::analytic_record(p, n + 1, s, 0.5 * s);
      ++pairs_total;
      analytic_residual =
          std::max(analytic_residual, std::abs(low.eps0 - high.eps0));
      if (!degenerate_branch)
        analytic_residual = std::max(
            analytic_residual, std::abs(std::abs(low.E0 - high.E0) - split_exact));
      const auto it_low = matched_value.find({n, -s});
      const auto it_high = matched_value.find({n + 1, s});
      if (it_low == matched_value.end() || it_high == matched_value.end())
        continue;
      ++pairs_numeric;
      const double gap = std::abs(it_low->second - it_high->second);
      numeric_residual = std::max(
          numeric_residual,
          degenerate_branch ? gap : std::abs(gap - split_exact));
    }
    push("degeneracy_analytic", analytic_residual, 0.0,
         {{"pairs", fmt_int(pairs_total)},
          {"branch", degenerate_branch ? "degenerate" : "split"}});
    if (pairs_numeric == 0)
      numeric_residual = std::numeric_limits<double>::infinity();
    push("degeneracy_numeric", numeric_residual,
         degenerate_branch ? tol::degeneracy : tol::splitting,
         {{"pairs", fmt_int(pairs_numeric)},
          {"branch", degenerate_branch ? "degenerate" : "split"}});
  }

  // --- Wave-function connection over every interior state. Under negative
  // controls the extraction can fail outright; that is reported rather than
  // thrown so the suite always completes.
  {
    double r_simultaneous = 0.0;
    double r_lower = 0.0;
    double r_ratio = 0.0;
    double r_formula = 0.0;
    double r_renorm = 0.0;
    long long states = 0;
    std::string failure;
    try {
      const EigenDecomposition& clean_eig =
          eig_is_clean ? eig : hermitian_eig(total);
      for (int n = 0; landau::is_interior(p, n); ++n)
        for (int lambda : {1, -1}) {
          auto [state, rec] = landau::dirac_eigenstate_from(clean_eig, p, n,
                                                            lambda);
          ++states;

          // Simultaneous eigenstate of eps and E.
          const double rs = std::max(
              vector_norm(apply_diagonal_shifted(eps, rec.eps0, state.coeffs)),
              vector_norm(apply_diagonal_shifted(h.even, rec.E0, state.coeffs)));
          r_simultaneous = std::max(r_simultaneous, rs);

          // U-transformed state: lower spinor gone, upper rescaled by
          // sqrt(2 eps0/(eps0 + m)).
          BispinorState fw_state;
          fw_state.coeffs = u_plus.apply(state.coeffs);
          r_lower = std::max(r_lower, fw_state.lower_norm());

          const double ratio = landau::connection_ratio(rec, p.m);
          const std::vector<cxd> up_dirac = state.upper();
          const std::vector<cxd> up_fw = fw_state.upper();
          double parallel_sq = 0.0;
          for (std::size_t i = 0; i < up_fw.size(); ++i)
            parallel_sq += std::norm(up_fw[i] - ratio * up_dirac[i]);
          r_ratio = std::max(r_ratio, std::sqrt(parallel_sq));

          // Same map through the closed formula, no U involved.
          const BispinorState direct = landau::connect_to_fw(state, rec, p, h);
          double formula_sq = 0.0;
          for (std::size_t i = 0; i < direct.coeffs.size(); ++i)
            formula_sq += std::norm(direct.coeffs[i] - fw_state.coeffs[i]);
          r_formula = std::max(r_formula, std::sqrt(formula_sq));

          // Renormalized form: upper spinor alone, renormalized to 1.
          const BispinorState renorm = landau::renormalized_fw(up_fw);
          double renorm_sq = 0.0;
          for (std::size_t i = 0; i < renorm.coeffs.size(); ++i)
            renorm_sq += std::norm(renorm.coeffs[i] - fw_state.coeffs[i]);
          r_renorm = std::max(r_renorm, std::sqrt(renorm_sq));
        }
    } catch (const std::exception& ex) {
      failure = ex.what();
      const double inf = std::numeric_limits<double>::infinity();
      r_simultaneous = r_lower = r_ratio = r_formula = r_renorm = inf;
    }
    std::vector<std::pair<std::string, std::string>> ctx = {
        {"states", fmt_int(states)}};
    if (!failure.empty()) ctx.push_back({"extraction_error", failure});
    push("simultaneous_eigen", r_simultaneous, tol::simultaneous, ctx);
    push("connection_lower_spinor", r_lower, tol::connection, ctx);
    push("connection_ratio", r_ratio, tol::connection, ctx);
    push("connection_formula", r_formula, tol::connection, ctx);
    push("renormalized_agreement", r_renorm, tol::connection, ctx);
  }

  std::sort(reports.begin(), reports.end(),
            [](const ResidualReport& a, const ResidualReport& b) {
              return a.check < b.check;
            });
  return reports;
}

}  // namespace fwlab::verification
