#ifndef ENDATLAS_REPORT_HPP
#define ENDATLAS_REPORT_HPP

// Markdown rendering of the JSON reports, field for field: scalars become a
// bullet list, arrays of objects become tables, nested values are written
// as compact JSON.

#include <algorithm>
#include <string>
#include <vector>

#include "endatlas/serialize.hpp"

namespace endatlas {

namespace detail {

inline std::string md_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  std::string out;
  for (char c : s) out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out;
}

inline bool is_table(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& x : v)
    if (!x.is_object()) return false;
  return true;
}

}  // namespace detail

inline std::string render_markdown(const Json& report, const std::string& title) {
  std::string out = "# " + title + "\n\n";
  std::vector<std::string> deferred;
  for (auto it = report.begin(); it != report.end(); ++it)
    if (!detail::is_table(it.value())) out += "- " + it.key() + ": " + detail::md_cell(it.value()) + "\n";
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (!detail::is_table(it.value())) continue;
    const Json& rows = it.value();
    std::vector<std::string> cols;
    for (const auto& row : rows)
      for (auto c = row.begin(); c != row.end(); ++c)
        if (std::find(cols.begin(), cols.end(), c.key()) == cols.end()) cols.push_back(c.key());
    out += "\n## " + it.key() + "\n\n| # |";
    for (const auto& c : cols) out += " " + c + " |";
    out += "\n|---|";
    for (std::size_t k = 0; k < cols.size(); ++k) out += "---|";
    out += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out += "| " + std::to_string(r + 1) + " |";
      for (const auto& c : cols) out += " " + (rows[r].contains(c) ? detail::md_cell(rows[r][c]) : std::string()) + " |";
      out += "\n";
    }
  }
  return out;
}

}  // namespace endatlas

#endif  // ENDATLAS_REPORT_HPP
