#pragma once

// JSON text with every float printed at 17 significant digits, plus a CSV
// projection of tabular results.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace lagsweep::cli {

using json = nlohmann::json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline void write_json(std::string& out, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, val] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(key).dump();
        out += ": ";
        write_json(out, val, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write_json(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

inline std::string to_text(const json& j) {
  std::string out;
  write_json(out, j, 2, 0);
  out += '\n';
  return out;
}

inline std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Rows are flat JSON objects sharing the keys of the first row; nested
// arrays of numbers are spread over indexed columns.
inline std::string to_csv(const std::vector<json>& rows) {
  if (rows.empty()) return "";
  std::vector<std::string> header;
  auto expand = [](const json& row, std::vector<std::string>* names, std::vector<std::string>* cells) {
    for (const auto& [key, val] : row.items()) {
      if (val.is_array()) {
        for (std::size_t i = 0; i < val.size(); ++i) {
          if (names) names->push_back(key + "_" + std::to_string(i));
          if (cells) cells->push_back(csv_cell(val[i]));
        }
      } else {
        if (names) names->push_back(key);
        if (cells) cells->push_back(csv_cell(val));
      }
    }
  };
  expand(rows.front(), &header, nullptr);
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    expand(row, nullptr, &cells);
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  }
  return out;
}

}  // namespace lagsweep::cli
