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


#ifndef IONFRINGE_APP_CONFIG_HPP
#define IONFRINGE_APP_CONFIG_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/types.hpp"

// Run configuration for the command-line tool. The file is INI text; keys
// may be written either inside a [section] or fully qualified at top level:
//
//   [params]
//   g = 1
//   geometry.scan_plane = xz

namespace ionfringe::app {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class SchemeKind { hg, two_level };
enum class PolarizationKind { pi, sigma, custom };
enum class Format { csv, json };

struct PolarizationSpec {
  PolarizationKind kind = PolarizationKind::pi;
  CVec3 vector = CVec3::Zero();  // used by custom only
};

struct RunConfig {
  DriveDecayParams params;
  SchemeKind scheme = SchemeKind::hg;

  double separation_wavelengths = 2.0;
  Vec3 drive_direction = Vec3::UnitY();
  ScanPlane scan_plane = ScanPlane::xy;
  int scan_points = 360;
  double scan_start_deg = 0.0;
  double scan_stop_deg = 360.0;
  double detector_1_angle_deg = 0.0;

  PolarizationSpec pol_1;
  PolarizationSpec pol_2;

  int n_traj = 2000;
  double t_total = 200.0;
  std::uint64_t seed = 1;

  std::string output_path;  // empty writes to stdout
  Format format = Format::csv;

  void validate() const;
};

inline std::string to_string(SchemeKind s) {
  return s == SchemeKind::hg ? "hg" : "two_level";
}
inline std::string to_string(ScanPlane p) {
  return p == ScanPlane::xy ? "xy" : "xz";
}
inline std::string to_string(PolarizationKind k) {
  switch (k) {
    case PolarizationKind::pi: return "pi";
    case PolarizationKind::sigma: return "sigma";
    default: return "custom";
  }
}
inline std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("expected a real number, got '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw ConfigError("value must be finite");
  return v;
}

template <class Int>
Int parse_integer(std::string_view text) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("expected an integer, got '" + std::string(text) + "'");
  return v;
}

inline std::vector<std::string_view> split_components(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto next = text.find_first_of(", \t", pos);
    const auto piece = text.substr(pos, next == std::string_view::npos ? next : next - pos);
    if (!piece.empty()) out.push_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline Vec3 parse_vec3(std::string_view text) {
  const auto parts = split_components(text);
  if (parts.size() != 3) throw ConfigError("expected three components");
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

/// One complex entry: "a", "bi", "a+bi" or "a-bi" (j accepted for i).
inline complex parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty complex component");
  const char last = text.back();
  if (last != 'i' && last != 'j') return {parse_real(text), 0.0};
  text.remove_suffix(1);
  // split at the last sign that is not an exponent sign or the leading sign
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_part = [](std::string_view s) {
    if (s == "" || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(text)};
  return {parse_real(text.substr(0, split)), imag_part(text.substr(split))};
}

inline CVec3 parse_cvec3(std::string_view text) {
  const auto parts = split_components(text);
  if (parts.size() != 3) throw ConfigError("expected three complex components");
  return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

inline PolarizationKind parse_polarization(std::string_view text) {
  text = trim(text);
  if (text == "pi") return PolarizationKind::pi;
  if (text == "sigma") return PolarizationKind::sigma;
  if (text == "custom") return PolarizationKind::custom;
  throw ConfigError("expected pi, sigma or custom, got '" + std::string(text) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

inline const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"params.g", [](RunConfig& c, std::string_view v) { c.params.g = parse_real(v); }},
      {"params.gamma0", [](RunConfig& c, std::string_view v) { c.params.gamma0 = parse_real(v); }},
      {"params.gamma", [](RunConfig& c, std::string_view v) { c.params.gamma = parse_real(v); }},
      {"params.scheme",
       [](RunConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "hg") c.scheme = SchemeKind::hg;
         else if (v == "two_level") c.scheme = SchemeKind::two_level;
         else throw ConfigError("expected hg or two_level, got '" + std::string(v) + "'");
       }},
      {"geometry.separation_wavelengths",
       [](RunConfig& c, std::string_view v) { c.separation_wavelengths = parse_real(v); }},
      {"geometry.drive_direction",
       [](RunConfig& c, std::string_view v) {
         const Vec3 d = parse_vec3(v);
         if (d.norm() == 0.0) throw ConfigError("drive direction must be nonzero");
         c.drive_direction = d.normalized();
       }},
      {"geometry.scan_plane",
       [](RunConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "xy") c.scan_plane = ScanPlane::xy;
         else if (v == "xz") c.scan_plane = ScanPlane::xz;
         else throw ConfigError("expected xy or xz, got '" + std::string(v) + "'");
       }},
      {"geometry.scan_points",
       [](RunConfig& c, std::string_view v) { c.scan_points = parse_integer<int>(v); }},
      {"geometry.scan_start_deg",
       [](RunConfig& c, std::string_view v) { c.scan_start_deg = parse_real(v); }},
      {"geometry.scan_stop_deg",
       [](RunConfig& c, std::string_view v) { c.scan_stop_deg = parse_real(v); }},
      {"geometry.detector_1_angle_deg",
       [](RunConfig& c, std::string_view v) { c.detector_1_angle_deg = parse_real(v); }},
      {"detectors.pol_1",
       [](RunConfig& c, std::string_view v) { c.pol_1.kind = parse_polarization(v); }},
      {"detectors.pol_2",
       [](RunConfig& c, std::string_view v) { c.pol_2.kind = parse_polarization(v); }},
      {"detectors.pol_1_vector",
       [](RunConfig& c, std::string_view v) { c.pol_1.vector = parse_cvec3(v); }},
      {"detectors.pol_2_vector",
       [](RunConfig& c, std::string_view v) { c.pol_2.vector = parse_cvec3(v); }},
      {"mc.n_traj", [](RunConfig& c, std::string_view v) { c.n_traj = parse_integer<int>(v); }},
      {"mc.t_total", [](RunConfig& c, std::string_view v) { c.t_total = parse_real(v); }},
      {"mc.seed",
       [](RunConfig& c, std::string_view v) { c.seed = parse_integer<std::uint64_t>(v); }},
      {"output.path", [](RunConfig& c, std::string_view v) { c.output_path = trim(v); }},
      {"output.format",
       [](RunConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "csv") c.format = Format::csv;
         else if (v == "json") c.format = Format::json;
         else throw ConfigError("expected csv or json, got '" + std::string(v) + "'");
       }},
  };
  return table;
}

/// Line number of every key assignment, keyed by its qualified name.
inline std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> lines;
  std::istringstream in(text);
  std::string line, section;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto t = trim(line);
    if (t.empty() || t.front() == ';' || t.front() == '#') continue;
    if (t.front() == '[') {
      section = std::string(trim(t.substr(1, t.find(']') - 1)));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(trim(t.substr(0, eq)));
    lines.emplace(section.empty() ? key : section + "." + key, number);
  }
  return lines;
}

}  // namespace detail

inline void RunConfig::validate() const {
  if (!(params.g >= 0.0)) throw ConfigError("params.g: drive strength must be nonnegative");
  if (params.gamma0 < 0.0 || params.gamma < 0.0)
    throw ConfigError("params.gamma0/params.gamma: decay rates must be nonnegative");
  if (scheme == SchemeKind::hg && !(params.total_rate() > 0.0))
    throw ConfigError("params.gamma0 + params.gamma must be positive");
  if (scheme == SchemeKind::two_level && !(params.gamma > 0.0))
    throw ConfigError("params.gamma: two-level decay rate must be positive");
  if (!(separation_wavelengths > 0.0))
    throw ConfigError("geometry.separation_wavelengths: must be positive");
  if (scan_points < 2) throw ConfigError("geometry.scan_points: at least two points required");
  if (scan_start_deg == scan_stop_deg)
    throw ConfigError("geometry.scan_start_deg/scan_stop_deg: empty scan range");
  for (const auto* pol : {&pol_1, &pol_2}) {
    if (pol->kind == PolarizationKind::custom && pol->vector.norm() == 0.0)
      throw ConfigError(std::string("detectors.") + (pol == &pol_1 ? "pol_1" : "pol_2") +
                        "_vector: custom polarization needs a nonzero vector");
  }
  if (n_traj < 1) throw ConfigError("mc.n_traj: must be at least 1");
  if (!(t_total > 0.0)) throw ConfigError("mc.t_total: must be positive");
}

/// Parses INI text. Errors name the source, the line and the key.
inline RunConfig parse_config(const std::string& text,
                              const std::string& source = "<config>") {
  boost::property_tree::ptree tree;
  try {
    std::istringstream in(text);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  const auto lines = detail::key_lines(text);
  const auto where = [&](const std::string& key) {
    const auto it = lines.find(key);
    return source + ":" + (it == lines.end() ? std::string("?") : std::to_string(it->second));
  };

  RunConfig config;
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      entries.emplace_back(name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) entries.emplace_back(name + "." + key, leaf.data());
  }
  const auto& table = detail::setters();
  for (const auto& [key, value] : entries) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(where(key) + ": unknown key '" + key + "'");
    try {
      it->second(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where(key) + ": key '" + key + "': " + e.what());
    }
  }
  config.validate();
  return config;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

}  // namespace ionfringe::app

#endif  // IONFRINGE_APP_CONFIG_HPP
