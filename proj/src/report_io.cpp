#include "fwlab/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fwlab::io {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_to_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json cell_to_json(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);  // JSON has no inf/nan
      return v;
    }
    nlohmann::json operator()(long long v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
    nlohmann::json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  out += "# " + table.title + "\n";
  for (const auto& [key, value] : table.meta)
    out += "# " + key + "=" + cell_to_text(value) + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ",";
    out += csv_escape(table.columns[i]);
  }
  out += "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::invalid_argument("to_csv: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += csv_escape(cell_to_text(row[i]));
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::json j;
  j["meta"]["tool"] = table.title;
  for (const auto& [key, value] : table.meta)
    j["meta"][key] = cell_to_json(value);
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::invalid_argument("to_json: row width mismatch");
    nlohmann::json obj;
    for (std::size_t i = 0; i < row.size(); ++i)
      obj[table.columns[i]] = cell_to_json(row[i]);
    j["rows"].push_back(std::move(obj));
  }
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream ofs(tmp, std::ios::binary | std::ios::trunc);
    if (!ofs) throw std::runtime_error("cannot open for writing: " + tmp);
    ofs << content;
    ofs.flush();
    if (!ofs) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename to " + path + " failed: " + ec.message());
  }
}

}  // namespace fwlab::io
