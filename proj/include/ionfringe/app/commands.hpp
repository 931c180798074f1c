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


#ifndef IONFRINGE_APP_COMMANDS_HPP
#define IONFRINGE_APP_COMMANDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ionfringe/app/config.hpp"
#include "ionfringe/app/report.hpp"
#include "ionfringe/correlations.hpp"
#include "ionfringe/exact_oracle.hpp"
#include "ionfringe/quantum_jump.hpp"
#include "ionfringe/scan.hpp"

namespace ionfringe::app {

inline double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

inline LevelScheme make_scheme(const RunConfig& c) {
  return c.scheme == SchemeKind::hg ? hg_level_scheme(c.params)
                                    : two_level_scheme(c.params.gamma);
}

inline Geometry make_geometry(const RunConfig& c) {
  Geometry g = default_geometry(c.separation_wavelengths);
  g.drive_direction = c.drive_direction;
  return g;
}

inline AngleScan make_scan(const RunConfig& c) {
  return {c.scan_plane, radians(c.scan_start_deg), radians(c.scan_stop_deg), c.scan_points};
}

/// Detector in the scan plane at the given angle (radians).
inline Detector make_detector(const RunConfig& c, const PolarizationSpec& pol, double angle) {
  const Vec3 n = scan_direction(c.scan_plane, angle);
  try {
    switch (pol.kind) {
      case PolarizationKind::pi: return Detector(n, pi_polarization(n));
      case PolarizationKind::sigma: return Detector(n, sigma_polarization(n));
      default: return Detector(n, project_transverse(n, pol.vector));
    }
  } catch (const Error& e) {
    throw ConfigError("detector at " + format_number(angle * 180.0 / std::numbers::pi) +
                      " deg in the " + to_string(c.scan_plane) + " plane: " + e.what());
  }
}

inline void echo_config(Report& r, const RunConfig& c) {
  const auto cnum = [](const complex& z) {
    return format_number(z.real()) + (std::signbit(z.imag()) ? "" : "+") +
           format_number(z.imag()) + "i";
  };
  const auto cvec = [&](const CVec3& v) {
    return cnum(v.x()) + ", " + cnum(v.y()) + ", " + cnum(v.z());
  };
  r.meta("params.g", c.params.g);
  r.meta("params.gamma0", c.params.gamma0);
  r.meta("params.gamma", c.params.gamma);
  r.meta("params.scheme", to_string(c.scheme));
  r.meta("geometry.separation_wavelengths", c.separation_wavelengths);
  r.meta("geometry.drive_direction", format_number(c.drive_direction.x()) + ", " +
                                         format_number(c.drive_direction.y()) + ", " +
                                         format_number(c.drive_direction.z()));
  r.meta("geometry.scan_plane", to_string(c.scan_plane));
  r.meta("geometry.scan_points", std::int64_t{c.scan_points});
  r.meta("geometry.scan_start_deg", c.scan_start_deg);
  r.meta("geometry.scan_stop_deg", c.scan_stop_deg);
  r.meta("geometry.detector_1_angle_deg", c.detector_1_angle_deg);
  r.meta("detectors.pol_1", to_string(c.pol_1.kind));
  if (c.pol_1.kind == PolarizationKind::custom) r.meta("detectors.pol_1_vector", cvec(c.pol_1.vector));
  r.meta("detectors.pol_2", to_string(c.pol_2.kind));
  if (c.pol_2.kind == PolarizationKind::custom) r.meta("detectors.pol_2_vector", cvec(c.pol_2.vector));
  r.meta("mc.n_traj", std::int64_t{c.n_traj});
  r.meta("mc.t_total", c.t_total);
  r.meta("mc.seed", std::to_string(c.seed));
}

inline QuantumJumpOptions mc_options(const RunConfig& c) {
  QuantumJumpOptions o;
  o.n_traj = c.n_traj;
  o.t_total = c.t_total;
  o.seed = c.seed;
  return o;
}

/// Analytic, null-space and quantum-jump steady states side by side.
inline Report steady_state_report(const RunConfig& c) {
  const auto scheme = make_scheme(c);
  const auto l = build_liouvillian(scheme, c.params);
  const DensityMatrix numeric = steady_state_numeric(l);
  const bool has_analytic = c.scheme == SchemeKind::hg;
  const Matrix analytic = has_analytic ? steady_state_analytic(c.params).matrix() : Matrix();
  const auto mc = quantum_jump_estimate(scheme, c.params, mc_options(c));

  Report r;
  r.command = "steady-state";
  echo_config(r, c);
  if (has_analytic) r.meta("residual_analytic", steady_state_residual(l, analytic));
  r.meta("residual_numeric", steady_state_residual(l, numeric.matrix()));
  r.meta("residual_monte_carlo", steady_state_residual(l, mc.mean));
  r.meta("mc_samples_per_trajectory", std::int64_t{mc.samples_per_trajectory});

  r.columns = {"entry", "i", "j"};
  if (has_analytic) r.columns.insert(r.columns.end(), {"analytic_re", "analytic_im"});
  r.columns.insert(r.columns.end(), {"numeric_re", "numeric_im", "mc_re", "mc_im",
                                     "mc_stderr_re", "mc_stderr_im"});
  const int n = numeric.dim();
  double worst_sigma = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Cell> row = {"rho" + std::to_string(i + 1) + std::to_string(j + 1),
                               std::int64_t{i + 1}, std::int64_t{j + 1}};
      if (has_analytic) {
        row.emplace_back(analytic(i, j).real());
        row.emplace_back(analytic(i, j).imag());
      }
      row.insert(row.end(), {numeric(i, j).real(), numeric(i, j).imag(), mc.mean(i, j).real(),
                             mc.mean(i, j).imag(), mc.stderr_real(i, j), mc.stderr_imag(i, j)});
      r.rows.push_back(std::move(row));
      if (i == j && mc.stderr_real(i, i) > 0.0)
        worst_sigma = std::max(worst_sigma, std::abs(mc.mean(i, i).real() - numeric(i, i).real()) /
                                                mc.stderr_real(i, i));
    }
  }
  r.meta("mc_max_population_deviation_sigma", worst_sigma);
  return r;
}

/// Intensity fringes seen by a detector with polarization pol_1 swept over
/// the scan plane.
inline Report intensity_scan_report(const RunConfig& c) {
  const auto scheme = make_scheme(c);
  const auto geo = make_geometry(c);
  const auto rho = steady_state_numeric(build_liouvillian(scheme, c.params));
  const auto scan = make_scan(c);
  const auto angles = scan.angles();
  for (double a : angles) make_detector(c, c.pol_1, a);

  const auto value = [&](double a) {
    return intensity(scheme, geo, make_detector(c, c.pol_1, a), rho, rho);
  };

  Report r;
  r.command = "intensity-scan";
  echo_config(r, c);
  r.columns = {"angle", "phase", "intensity", "z_projection"};
  double z_min = std::numeric_limits<double>::infinity(), z_max = 0.0;
  for (double a : angles) {
    const auto det = make_detector(c, c.pol_1, a);
    const double z = std::norm(det.polarization().z());
    z_min = std::min(z_min, z);
    z_max = std::max(z_max, z);
    r.rows.push_back({a, intensity_phase(geo, det.direction()),
                      intensity(scheme, geo, det, rho, rho), z});
  }
  const auto ext = fringe_extrema(value, scan);
  const CVec3 eps0 = make_detector(c, c.pol_1, angles.front()).polarization();
  const double closed =
      c.scheme == SchemeKind::hg
          ? intensity_visibility(c.params, eps0)
          : (std::norm(eps0.z()) > 0.0 ? two_level_visibility(c.params.g, c.params.gamma) : 0.0);
  r.meta("visibility_scanned", ext.visibility());
  r.meta("visibility_closed_form", closed);
  r.meta("z_projection_constant", z_max - z_min < 1e-12);
  r.meta("intensity_min", ext.min);
  r.meta("intensity_max", ext.max);
  return r;
}

/// Second-order correlations: detector 1 fixed at detector_1_angle_deg with
/// pol_1, detector 2 swept with pol_2.
inline Report g2_scan_report(const RunConfig& c) {
  const auto scheme = make_scheme(c);
  const auto geo = make_geometry(c);
  const auto rho = steady_state_numeric(build_liouvillian(scheme, c.params));
  const auto rho_ab = kron(rho, rho);
  const auto scan = make_scan(c);
  const auto angles = scan.angles();
  const auto d1 = make_detector(c, c.pol_1, radians(c.detector_1_angle_deg));
  for (double a : angles) make_detector(c, c.pol_2, a);
  const bool hg = c.scheme == SchemeKind::hg;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  const auto g2_at = [&](const Detector& x, const Detector& y) {
    const auto f = pair_fields(scheme, geo, x, y);
    return g2_factorized(f.a1, f.b1, f.a2, f.b2, rho);
  };
  const double i1 = intensity(scheme, geo, d1, rho, rho);
  const double g2_11 = i1 > 0.0 ? g2_at(d1, d1) / (i1 * i1) : nan;

  Report r;
  r.command = "g2-scan";
  echo_config(r, c);
  r.columns = {"angle", "phase", "G2_factorized", "G2_exact", "Gamma2", "Gamma2_closed_form",
               "M", "g2_normalized"};
  if (hg) r.columns.push_back("g2_printed_form");
  r.columns.insert(r.columns.end(), {"witness_lhs", "witness_rhs", "violated"});

  double oracle_dev = 0.0, printed_dev = 0.0;
  for (double a : angles) {
    const auto d2 = make_detector(c, c.pol_2, a);
    const auto f = pair_fields(scheme, geo, d1, d2);
    const double g2f = g2_factorized(f.a1, f.b1, f.a2, f.b2, rho);
    const double g2e = g2_exact(scheme, geo, d1, d2, rho_ab);
    const double base = g2_baseline(f, rho, rho);
    const double i2 = intensity(scheme, geo, d2, rho, rho);
    const double g2n = i1 > 0.0 && i2 > 0.0 ? g2f / (i1 * i2) : nan;
    const double g2_22 = i2 > 0.0 ? g2_at(d2, d2) / (i2 * i2) : nan;
    const auto w = nonclassicality_witness(g2_11, g2_22, g2n);
    oracle_dev = std::max(oracle_dev, std::abs(g2f - g2e));
    std::vector<Cell> row = {a,
                             g2_phase(geo, d1, d2),
                             g2f,
                             g2e,
                             base > 0.0 ? gamma2_from_fields(f, rho, rho) : nan,
                             gamma2(geo, d1, d2),
                             modulation_depth(d1, d2),
                             g2n};
    if (hg) {
      const double printed = g2_normalized_printed(c.params, geo, d1, d2);
      row.emplace_back(printed);
      if (std::isfinite(g2n)) printed_dev = std::max(printed_dev, std::abs(printed - g2n));
    }
    row.insert(row.end(), {w.lhs, w.rhs, w.violated});
    r.rows.push_back(std::move(row));
  }
  const auto ext = fringe_extrema(
      [&](double a) { return g2_at(d1, make_detector(c, c.pol_2, a)); }, scan);
  r.meta("modulation_depth_scanned", ext.visibility());
  r.meta("modulation_depth_closed_form",
         modulation_depth(d1, make_detector(c, c.pol_2, angles.front())));
  r.meta("G2_min", ext.min);
  r.meta("G2_max", ext.max);
  r.meta("max_oracle_deviation", oracle_dev);
  if (hg) r.meta("max_printed_form_mismatch", printed_dev);
  return r;
}

}  // namespace ionfringe::app

#endif  // IONFRINGE_APP_COMMANDS_HPP
