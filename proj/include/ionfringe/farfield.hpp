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

#ifndef IONFRINGE_FARFIELD_HPP
#define IONFRINGE_FARFIELD_HPP

#include <cmath>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/dynamics.hpp"
#include "ionfringe/types.hpp"

namespace ionfringe {

enum class Atom { A, B };

/// Positive-frequency field of one atom seen by one detector:
/// phase * sum_{transitions} (eps^dag . d_{lower,upper}) |lower><upper|.
///
/// Prefactors (omega0/c)^2 e^{ikr}/r and the reduced dipole are set to one,
/// so intensities come out in arbitrary units.
struct FieldOperator {
  Atom atom;
  Detector detector;
  complex phase;
  Matrix coeff;
};

inline Vec3 atom_position(const Geometry& geometry, Atom atom) {
  return atom == Atom::A ? geometry.r_a : geometry.r_b;
}

/// exp(-i k (n - n_l) . R) for the given atom.
inline complex geometric_phase(const Geometry& geometry, const Vec3& n,
                               Atom atom) {
  const double arg =
      kWaveNumber * (n - geometry.drive_direction).dot(atom_position(geometry, atom));
  return std::polar(1.0, -arg);
}

inline Matrix field_coefficients(const LevelScheme& scheme,
                                 const Detector& detector) {
  const int n = scheme.n_levels();
  Matrix c = Matrix::Zero(n, n);
  for (const auto& t : scheme.transitions())
    c(t.lower, t.upper) += detector.polarization().dot(t.dipole);
  return c;
}

inline FieldOperator field_operator(const LevelScheme& scheme,
                                    const Geometry& geometry,
                                    const Detector& detector, Atom atom) {
  geometry.validate();
  return {atom, detector,
          geometric_phase(geometry, detector.direction(), atom),
          field_coefficients(scheme, detector)};
}

/// <E^(+)> = phase * tr(rho coeff).
inline complex mean_field(const FieldOperator& op, const DensityMatrix& rho) {
  detail::require(rho.dim() == op.coeff.rows(),
                  "density matrix dimension does not match field operator");
  return op.phase * (rho.matrix() * op.coeff).trace();
}

/// Single-atom amplitude correlation <E^(-)(i) E^(+)(j)>.
inline complex g1(const FieldOperator& op_i, const FieldOperator& op_j,
                  const DensityMatrix& rho) {
  detail::require(op_i.atom == op_j.atom,
                  "g1 is defined for field operators of the same atom");
  detail::require(rho.dim() == op_i.coeff.rows() &&
                      rho.dim() == op_j.coeff.rows(),
                  "density matrix dimension does not match field operator");
  return std::conj(op_i.phase) * op_j.phase *
         (rho.matrix() * op_i.coeff.adjoint() * op_j.coeff).trace();
}

/// Far-field intensity of two uncorrelated atoms:
/// G1_A(1,1) + G1_B(1,1) + 2 Re(<E_A^(+)>^* <E_B^(+)>).
inline double intensity(const LevelScheme& scheme, const Geometry& geometry,
                        const Detector& detector, const DensityMatrix& rho_a,
                        const DensityMatrix& rho_b) {
  const FieldOperator a = field_operator(scheme, geometry, detector, Atom::A);
  const FieldOperator b = field_operator(scheme, geometry, detector, Atom::B);
  const complex cross = std::conj(mean_field(a, rho_a)) * mean_field(b, rho_b);
  return g1(a, a, rho_a).real() + g1(b, b, rho_b).real() + 2.0 * cross.real();
}

/// Fringe phase k (n - n_l) . (R_A - R_B) of the intensity pattern.
inline double intensity_phase(const Geometry& geometry, const Vec3& n) {
  return kWaveNumber * (n - geometry.drive_direction).dot(geometry.r_a - geometry.r_b);
}

/// Closed-form modulation factor G^2 / (2g^2 + G^2) |z . eps|^2 of the
/// steady-state intensity fringes, G = gamma0 + gamma.
inline double intensity_visibility(const DriveDecayParams& params,
                                   const CVec3& epsilon) {
  params.validate();
  const double big2 = params.total_rate() * params.total_rate();
  return big2 / (2.0 * params.g * params.g + big2) * std::norm(epsilon.z());
}

/// Two-level counterpart gamma^2 / (2g^2 + gamma^2).
inline double two_level_visibility(double g, double gamma) {
  return gamma * gamma / (2.0 * g * g + gamma * gamma);
}

}  // namespace ionfringe

#endif  // IONFRINGE_FARFIELD_HPP
