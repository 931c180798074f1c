// Copyright 2026 The ionfringe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef IONFRINGE_APP_REPORT_HPP
#define IONFRINGE_APP_REPORT_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ionfringe/app/config.hpp"

namespace ionfringe::app {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// One table plus metadata; serialized as CSV or JSON with identical numbers.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void meta(std::string key, Cell value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
};

/// Shortest of %.17g, locale independent.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else return v;
      },
      c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

}  // namespace detail

inline void write_csv(std::ostream& out, const Report& r) {
  out << "# command: " << r.command << '\n';
  for (const auto& [key, value] : r.metadata)
    out << "# " << key << ": " << detail::cell_text(value) << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    out << (i ? "," : "") << detail::csv_field(r.columns[i]);
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << detail::csv_field(detail::cell_text(row[i]));
    out << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.metadata) j["metadata"][key] = detail::cell_json(value);
  j["columns"] = r.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    auto& out = j["rows"].emplace_back(nlohmann::ordered_json::array());
    for (const auto& c : row) out.push_back(detail::cell_json(c));
  }
  return j;
}

inline void write_json(std::ostream& out, const Report& r) {
  out << to_json(r).dump(2) << '\n';
}

inline void write_report(std::ostream& out, const Report& r, Format format) {
  if (format == Format::csv) write_csv(out, r);
  else write_json(out, r);
}

}  // namespace ionfringe::app

#endif  // IONFRINGE_APP_REPORT_HPP
