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

#ifndef IONFRINGE_CORRELATIONS_HPP
#define IONFRINGE_CORRELATIONS_HPP

#include <cmath>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/dynamics.hpp"
#include "ionfringe/farfield.hpp"
#include "ionfringe/types.hpp"

namespace ionfringe {

/// Field operators of both atoms for a pair of detectors.
struct DetectorPairFields {
  FieldOperator a1, b1, a2, b2;
};

inline DetectorPairFields pair_fields(const LevelScheme& scheme,
                                      const Geometry& geometry,
                                      const Detector& det_1,
                                      const Detector& det_2) {
  return {field_operator(scheme, geometry, det_1, Atom::A),
          field_operator(scheme, geometry, det_1, Atom::B),
          field_operator(scheme, geometry, det_2, Atom::A),
          field_operator(scheme, geometry, det_2, Atom::B)};
}

namespace detail {
inline void check_pair(const FieldOperator& a1, const FieldOperator& b1,
                       const FieldOperator& a2, const FieldOperator& b2) {
  require(a1.atom == Atom::A && a2.atom == Atom::A && b1.atom == Atom::B &&
              b2.atom == Atom::B,
          "field operators are assigned to the wrong atoms");
}
}  // namespace detail

/// Equal-time G2(1,2) of two uncorrelated atoms in states rho_a, rho_b:
/// G1_A(1,1)G1_B(2,2) + G1_A(1,2)G1_B(2,1) + G1_A(2,1)G1_B(1,2) + G1_A(2,2)G1_B(1,1).
inline double g2_factorized(const FieldOperator& a1, const FieldOperator& b1,
                            const FieldOperator& a2, const FieldOperator& b2,
                            const DensityMatrix& rho_a,
                            const DensityMatrix& rho_b) {
  detail::check_pair(a1, b1, a2, b2);
  // Paired so that exchanging the detectors only commutes the additions.
  const double direct = (g1(a1, a1, rho_a) * g1(b2, b2, rho_b)).real() +
                        (g1(a2, a2, rho_a) * g1(b1, b1, rho_b)).real();
  const double cross = (g1(a1, a2, rho_a) * g1(b2, b1, rho_b)).real() +
                       (g1(a2, a1, rho_a) * g1(b1, b2, rho_b)).real();
  return direct + cross;
}

inline double g2_factorized(const FieldOperator& a1, const FieldOperator& b1,
                            const FieldOperator& a2, const FieldOperator& b2,
                            const DensityMatrix& rho) {
  return g2_factorized(a1, b1, a2, b2, rho, rho);
}

/// Incoherent part G1_A(1,1)G1_B(2,2) + G1_A(2,2)G1_B(1,1).
inline double g2_baseline(const DetectorPairFields& f,
                          const DensityMatrix& rho_a,
                          const DensityMatrix& rho_b) {
  return (g1(f.a1, f.a1, rho_a) * g1(f.b2, f.b2, rho_b) +
          g1(f.a2, f.a2, rho_a) * g1(f.b1, f.b1, rho_b))
      .real();
}

/// Interference factor 2 Re(G1_A(1,2) G1_B(2,1)) / baseline.
inline double gamma2_from_fields(const DetectorPairFields& f,
                                 const DensityMatrix& rho_a,
                                 const DensityMatrix& rho_b) {
  const double base = g2_baseline(f, rho_a, rho_b);
  detail::require(base > 0.0, "G2 baseline vanishes; interference factor undefined");
  return 2.0 * (g1(f.a1, f.a2, rho_a) * g1(f.b2, f.b1, rho_b)).real() / base;
}

/// Phase k (n_1 - n_2) . (R_A - R_B) of the G2 fringes.
inline double g2_phase(const Geometry& geometry, const Detector& det_1,
                       const Detector& det_2) {
  return kWaveNumber * (det_1.direction() - det_2.direction())
                           .dot(geometry.r_a - geometry.r_b);
}

/// |eps_1^dag eps_2|^2.
inline double modulation_depth(const Detector& det_1, const Detector& det_2) {
  return std::norm(det_1.polarization().dot(det_2.polarization()));
}

/// Closed form |eps_1^dag eps_2|^2 cos(k (n_1 - n_2) . (R_A - R_B)).
inline double gamma2(const Geometry& geometry, const Detector& det_1,
                     const Detector& det_2) {
  return modulation_depth(det_1, det_2) *
         std::cos(g2_phase(geometry, det_1, det_2));
}

struct Witness {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
};

/// Classical fields satisfy (g2(1,1) - 1)(g2(2,2) - 1) >= (g2(1,2) - 1)^2.
inline Witness nonclassicality_witness(double g2_11, double g2_22,
                                       double g2_12) {
  Witness w;
  w.lhs = (g2_11 - 1.0) * (g2_22 - 1.0);
  w.rhs = (g2_12 - 1.0) * (g2_12 - 1.0);
  w.violated = w.lhs < w.rhs - 1e-12;
  return w;
}

/// Everything the second-order analysis reports for one detector pair.
struct CorrelationResult {
  double G2 = 0.0;
  double baseline = 0.0;
  double Gamma2 = 0.0;
  double M = 0.0;
  double intensity_1 = 0.0;
  double intensity_2 = 0.0;
  double g2_normalized = 0.0;
  double g2_11 = 0.0;
  double g2_22 = 0.0;
  Witness witness;
};

/// Normalized G2(i,j) / (I(i) I(j)) for uncorrelated atoms in rho_a, rho_b.
inline double g2_ratio(const LevelScheme& scheme, const Geometry& geometry,
                       const Detector& det_1, const Detector& det_2,
                       const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  const auto f = pair_fields(scheme, geometry, det_1, det_2);
  const double i1 = intensity(scheme, geometry, det_1, rho_a, rho_b);
  const double i2 = intensity(scheme, geometry, det_2, rho_a, rho_b);
  detail::require(i1 > 0.0 && i2 > 0.0,
                  "zero intensity at a detector; normalized g2 undefined");
  return g2_factorized(f.a1, f.b1, f.a2, f.b2, rho_a, rho_b) / (i1 * i2);
}

inline CorrelationResult correlate(const LevelScheme& scheme,
                                   const Geometry& geometry,
                                   const Detector& det_1, const Detector& det_2,
                                   const DensityMatrix& rho_a,
                                   const DensityMatrix& rho_b) {
  const auto f = pair_fields(scheme, geometry, det_1, det_2);
  CorrelationResult r;
  r.G2 = g2_factorized(f.a1, f.b1, f.a2, f.b2, rho_a, rho_b);
  r.baseline = g2_baseline(f, rho_a, rho_b);
  r.Gamma2 = r.baseline > 0.0 ? gamma2_from_fields(f, rho_a, rho_b) : 0.0;
  r.M = modulation_depth(det_1, det_2);
  r.intensity_1 = intensity(scheme, geometry, det_1, rho_a, rho_b);
  r.intensity_2 = intensity(scheme, geometry, det_2, rho_a, rho_b);
  detail::require(r.intensity_1 > 0.0 && r.intensity_2 > 0.0,
                  "zero intensity at a detector; normalized g2 undefined");
  r.g2_normalized = r.G2 / (r.intensity_1 * r.intensity_2);
  r.g2_11 = g2_ratio(scheme, geometry, det_1, det_1, rho_a, rho_b);
  r.g2_22 = g2_ratio(scheme, geometry, det_2, det_2, rho_a, rho_b);
  r.witness = nonclassicality_witness(r.g2_11, r.g2_22, r.g2_normalized);
  return r;
}

inline DensityMatrix driven_steady_state(const LevelScheme& scheme,
                                         const DriveDecayParams& params) {
  return steady_state_numeric(build_liouvillian(scheme, params));
}

/// g2(1,2) = G2(1,2) / (I(1) I(2)) in the driven steady state.
inline double g2_normalized(const LevelScheme& scheme, const Geometry& geometry,
                            const DriveDecayParams& params,
                            const Detector& det_1, const Detector& det_2) {
  const DensityMatrix rho = driven_steady_state(scheme, params);
  return g2_ratio(scheme, geometry, det_1, det_2, rho, rho);
}

/// The closed form (D(1)^-1 D(2)^-1 / 2)(1 + M cos phi) with
/// D(i) = 1 + V |z . eps_i|^2 cos phi, where phi is the G2 phase
/// k (n_1 - n_2) . (R_A - R_B) and V the intensity modulation factor.
/// Agrees with g2_normalized for sigma detection; for pi detection the
/// intensity fringes actually follow k (n_i - n_l) . (R_A - R_B), so the two
/// differ away from special geometries.
inline double g2_normalized_printed(const DriveDecayParams& params,
                                    const Geometry& geometry,
                                    const Detector& det_1,
                                    const Detector& det_2) {
  params.validate();
  const double big2 = params.total_rate() * params.total_rate();
  const double v = big2 / (2.0 * params.g * params.g + big2);
  const double c = std::cos(g2_phase(geometry, det_1, det_2));
  const double d1 = 1.0 + v * std::norm(det_1.polarization().z()) * c;
  const double d2 = 1.0 + v * std::norm(det_2.polarization().z()) * c;
  return 0.5 / (d1 * d2) * (1.0 + modulation_depth(det_1, det_2) * c);
}

inline Witness nonclassicality_witness(const LevelScheme& scheme,
                                       const Geometry& geometry,
                                       const DriveDecayParams& params,
                                       const Detector& det_1,
                                       const Detector& det_2) {
  const DensityMatrix rho = driven_steady_state(scheme, params);
  return correlate(scheme, geometry, det_1, det_2, rho, rho).witness;
}

}  // namespace ionfringe

#endif  // IONFRINGE_CORRELATIONS_HPP
