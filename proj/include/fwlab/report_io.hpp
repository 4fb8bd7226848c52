#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

// Tabular output shared by every CLI subcommand: an ordered metadata block
// plus homogeneous rows, rendered as CSV or JSON. Rendering is fully
// deterministic (no timestamps, no locale, shortest round-trip doubles), so
// identical configurations produce byte-identical files.

namespace fwlab::io {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::string title;  // first comment line in CSV, meta "tool" in JSON
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

/// CSV with '#'-prefixed metadata lines, then a header row, then data rows.
std::string to_csv(const Table& table);

/// {"meta": {...}, "rows": [{column: value, ...}, ...]}; numeric cells stay
/// numbers (non-finite values become strings, since JSON has no inf/nan).
std::string to_json(const Table& table);

/// Write content to path via a temporary file in the same directory plus an
/// atomic rename. Throws std::runtime_error on any I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fwlab::io
