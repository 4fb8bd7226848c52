#include "fwlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "fwlab/operator_algebra.hpp"
#include "fwlab/report_io.hpp"
#include "fwlab/verification.hpp"

namespace fwlab::cli {

namespace {

using io::Cell;
using io::Table;

const char* spinor_name(std::size_t s) {
  switch (s) {
    case 0:
      return "u_up";
    case 1:
      return "u_down";
    case 2:
      return "l_up";
    default:
      return "l_down";
  }
}

void add_model_meta(Table& t, const landau::ModelParams& p) {
  t.meta.emplace_back("m", Cell(p.m));
  t.meta.emplace_back("e", Cell(p.e));
  t.meta.emplace_back("H", Cell(p.H));
  t.meta.emplace_back("mu_prime", Cell(p.mu_prime));
  t.meta.emplace_back("n_max", Cell(static_cast<long long>(p.n_max)));
}

Table spectrum_table(const RunConfig& cfg) {
  const auto records = landau::analytic_spectrum(cfg.params, cfg.m_values);
  Table t;
  t.title = "fwlab spectrum";
  add_model_meta(t, cfg.params);
  t.meta.emplace_back("records", Cell(static_cast<long long>(records.size())));
  t.columns = {"n", "lambda", "M", "eps0", "E0", "E_total", "interior"};
  for (const auto& r : records)
    t.rows.push_back({Cell(static_cast<long long>(r.n)),
                      Cell(static_cast<long long>(r.lambda)), Cell(r.M),
                      Cell(r.eps0), Cell(r.E0), Cell(r.E_total),
                      Cell(landau::is_interior(cfg.params, r.n))});
  return t;
}

std::pair<Table, bool> verify_table(const RunConfig& cfg) {
  verification::SuiteOptions opts;
  opts.tolerance_scale = cfg.tolerance_scale;
  const auto reports = verification::run_suite(cfg.params, opts);
  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;

  Table t;
  t.title = "fwlab verify";
  add_model_meta(t, cfg.params);
  t.meta.emplace_back("tolerance_scale", Cell(cfg.tolerance_scale));
  t.meta.emplace_back("checks", Cell(static_cast<long long>(reports.size())));
  t.meta.emplace_back("all_passed", Cell(all_passed));
  t.columns = {"check", "max_residual", "tolerance", "passed", "context"};
  for (const auto& r : reports) {
    std::string ctx;
    for (const auto& [k, v] : r.context) {
      if (!ctx.empty()) ctx += ";";
      ctx += k + "=" + v;
    }
    t.rows.push_back({Cell(r.check), Cell(r.max_residual), Cell(r.tolerance),
                      Cell(r.passed), Cell(std::move(ctx))});
  }
  return {std::move(t), all_passed};
}

Table transform_table(const RunConfig& cfg) {
  const landau::ModelParams& p = cfg.params;
  const SplitHamiltonian h = landau::build_dirac_hamiltonian(p);
  const EigenDecomposition eig = hermitian_eig(h.total());
  const auto [state, rec] =
      landau::dirac_eigenstate_from(eig, p, cfg.n, cfg.lambda);

  const ComplexMatrix u = fw_unitary(h, FwSign::plus);
  const std::vector<cxd> fw = u.apply(state.coeffs);
  const double ratio = landau::connection_ratio(rec, p.m);
  std::vector<cxd> predicted(fw.size(), cxd(0.0, 0.0));
  for (std::size_t i = 0; i < fw.size(); ++i)
    if (i % 4 < 2) predicted[i] = ratio * state.coeffs[i];

  double diff_sq = 0.0, lower_sq = 0.0;
  for (std::size_t i = 0; i < fw.size(); ++i) {
    diff_sq += std::norm(fw[i] - predicted[i]);
    if (i % 4 >= 2) lower_sq += std::norm(fw[i]);
  }

  Table t;
  t.title = "fwlab transform";
  add_model_meta(t, cfg.params);
  t.meta.emplace_back("n", Cell(static_cast<long long>(rec.n)));
  t.meta.emplace_back("lambda", Cell(static_cast<long long>(rec.lambda)));
  t.meta.emplace_back("eps0", Cell(rec.eps0));
  t.meta.emplace_back("E0", Cell(rec.E0));
  t.meta.emplace_back("E_total", Cell(rec.E_total));
  t.meta.emplace_back("upper_ratio", Cell(ratio));
  t.meta.emplace_back("diff_norm", Cell(std::sqrt(diff_sq)));
  t.meta.emplace_back("fw_lower_norm", Cell(std::sqrt(lower_sq)));
  t.columns = {"level",  "spinor", "dirac_re",     "dirac_im",
               "fw_re",  "fw_im",  "predicted_re", "predicted_im"};
  for (std::size_t i = 0; i < fw.size(); ++i)
    t.rows.push_back({Cell(static_cast<long long>(i / 4)),
                      Cell(std::string(spinor_name(i % 4))),
                      Cell(state.coeffs[i].real()), Cell(state.coeffs[i].imag()),
                      Cell(fw[i].real()), Cell(fw[i].imag()),
                      Cell(predicted[i].real()), Cell(predicted[i].imag())});
  return t;
}

Table wavefunction_table(const RunConfig& cfg) {
  const landau::ModelParams& p = cfg.params;
  const double rho_max =
      cfg.rho_max > 0.0 ? cfg.rho_max : 10.0 * landau::magnetic_length(p);
  const landau::GridSpec grid{rho_max, cfg.points};
  const landau::SampledWavefunction w =
      landau::fw_wavefunction(p, cfg.n, cfg.lambda, cfg.m_label, grid);

  Table t;
  t.title = "fwlab wavefunction";
  add_model_meta(t, cfg.params);
  t.meta.emplace_back("n", Cell(static_cast<long long>(w.n)));
  t.meta.emplace_back("lambda", Cell(static_cast<long long>(w.lambda)));
  t.meta.emplace_back("M", Cell(w.M));
  t.meta.emplace_back("m_l", Cell(static_cast<long long>(w.m_l)));
  t.meta.emplace_back("n_rho", Cell(static_cast<long long>(w.n_rho)));
  t.meta.emplace_back("magnetic_length", Cell(w.b));
  t.meta.emplace_back("rho_max", Cell(rho_max));
  t.meta.emplace_back("points", Cell(static_cast<long long>(cfg.points)));
  t.meta.emplace_back("norm_const", Cell(w.radial.norm_const));
  t.meta.emplace_back(
      "zeta_component",
      Cell(std::string(w.lambda == 1 ? "u_up" : "u_down")));
  t.columns = {"rho", "R"};
  for (std::size_t i = 0; i < w.rho.size(); ++i)
    t.rows.push_back({Cell(w.rho[i]), Cell(w.values[i])});
  return t;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    Table table;
    int code = exit_ok;
    switch (cfg.command) {
      case Command::spectrum:
        table = spectrum_table(cfg);
        break;
      case Command::verify: {
        auto [t, all_passed] = verify_table(cfg);
        table = std::move(t);
        if (!all_passed) code = exit_checks_failed;
        break;
      }
      case Command::transform:
        table = transform_table(cfg);
        break;
      case Command::wavefunction:
        table = wavefunction_table(cfg);
        break;
    }
    const std::string content =
        cfg.format == Format::csv ? io::to_csv(table) : io::to_json(table);
    io::write_file_atomic(cfg.output_path, content);
    return code;
  } catch (const std::logic_error& ex) {
    // Inadmissible quantum numbers, truncation-edge requests, bad labels.
    std::cerr << "fwlab: " << ex.what() << "\n";
    return exit_domain;
  } catch (const std::exception& ex) {
    // I/O problems and internal solver failures.
    std::cerr << "fwlab: " << ex.what() << "\n";
    return exit_io;
  }
}

int main(int argc, const char* const* argv) {
  RunConfig cfg;
  std::string format = "csv";

  CLI::App app{
      "fwlab: exact Foldy-Wouthuysen transformation laboratory for the "
      "Landau-level Dirac Hamiltonian"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.params.m, "particle mass (natural units)")
        ->capture_default_str();
    sub->add_option("--e", cfg.params.e, "signed charge")
        ->capture_default_str();
    sub->add_option("--H", cfg.params.H, "magnetic field strength, > 0")
        ->capture_default_str();
    sub->add_option("--mu-prime", cfg.params.mu_prime,
                    "anomalous magnetic moment")
        ->capture_default_str();
    sub->add_option("--n-max", cfg.params.n_max,
                    "highest retained Landau level")
        ->capture_default_str();
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.output_path, "output file path")->required();
  };

  CLI::App* sp =
      app.add_subcommand("spectrum", "analytic positive-energy spectrum table");
  add_common(sp);
  sp->add_option("--M", cfg.m_values,
                 "half-integer angular momentum labels (repeatable; default: "
                 "one record per (n, lambda))");

  CLI::App* vf = app.add_subcommand("verify", "run the residual suite");
  add_common(vf);

  CLI::App* tr = app.add_subcommand(
      "transform", "transform one Dirac eigenstate to the FW representation");
  add_common(tr);
  tr->add_option("--n", cfg.n, "Landau level (interior)")->required();
  tr->add_option("--lambda", cfg.lambda, "polarization, +1 or -1")
      ->capture_default_str();

  CLI::App* wf = app.add_subcommand(
      "wavefunction", "sample the FW radial eigenfunction on a uniform grid");
  add_common(wf);
  wf->add_option("--n", cfg.n, "Landau level")->required();
  wf->add_option("--lambda", cfg.lambda, "polarization, +1 or -1")
      ->capture_default_str();
  wf->add_option("--M", cfg.m_label, "half-integer angular momentum label")
      ->capture_default_str();
  wf->add_option("--rho-max", cfg.rho_max,
                 "grid extent (default: 10 magnetic lengths)");
  wf->add_option("--points", cfg.points, "number of radial samples")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  if (const char* env = std::getenv("FWLAB_TOLERANCE_SCALE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      std::cerr << "fwlab: FWLAB_TOLERANCE_SCALE must be a positive real, got "
                << "\"" << env << "\"\n";
      return exit_usage;
    }
    cfg.tolerance_scale = v;
  }

  try {
    cfg.params.validate();
  } catch (const std::exception& ex) {
    std::cerr << "fwlab: " << ex.what() << "\n";
    return exit_usage;
  }
  if (cfg.lambda != 1 && cfg.lambda != -1) {
    std::cerr << "fwlab: --lambda must be +1 or -1\n";
    return exit_usage;
  }
  if (wf->parsed() && (cfg.rho_max < 0.0 || cfg.points < 2)) {
    std::cerr << "fwlab: --rho-max must be >= 0 and --points >= 2\n";
    return exit_usage;
  }

  cfg.format = format == "json" ? Format::json : Format::csv;
  if (app.got_subcommand(sp))
    cfg.command = Command::spectrum;
  else if (app.got_subcommand(vf))
    cfg.command = Command::verify;
  else if (app.got_subcommand(tr))
    cfg.command = Command::transform;
  else
    cfg.command = Command::wavefunction;
  return run(cfg);
}

}  // namespace fwlab::cli
