#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fwlab/landau.hpp"

namespace fwlab::cli {

// Exit-code map, fixed: 0 ok, 1 verify found failing checks, 2 usage,
// 3 I/O, 4 domain (inadmissible quantum numbers and the like).
inline constexpr int exit_ok = 0;
inline constexpr int exit_checks_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;
inline constexpr int exit_domain = 4;

enum class Command { spectrum, verify, transform, wavefunction };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::spectrum;
  landau::ModelParams params;
  Format format = Format::csv;
  std::string output_path;
  /// spectrum: optional angular momentum labels to enumerate.
  std::vector<double> m_values;
  /// transform / wavefunction quantum numbers.
  int n = 0;
  int lambda = 1;
  double m_label = 0.5;
  /// wavefunction grid; rho_max = 0 means "10 magnetic lengths".
  double rho_max = 0.0;
  std::size_t points = 1000;
  /// Multiplier for verify tolerances (FWLAB_TOLERANCE_SCALE).
  double tolerance_scale = 1.0;
};

/// Execute a validated config: compute, render (CSV/JSON), write atomically.
/// Exceptions are mapped to the exit-code table; nothing is thrown.
int run(const RunConfig& config);

/// Parse argv (including the FWLAB_TOLERANCE_SCALE environment variable) and
/// run. This is the whole CLI binary except for the main() shim.
int main(int argc, const char* const* argv);

}  // namespace fwlab::cli
