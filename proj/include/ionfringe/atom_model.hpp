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

#ifndef IONFRINGE_ATOM_MODEL_HPP
#define IONFRINGE_ATOM_MODEL_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ionfringe/types.hpp"

namespace ionfringe {

/// One dipole-carrying decay channel |upper> -> |lower>.
///
/// `dipole` is the matrix element d_{lower,upper} in units of the reduced
/// dipole moment. `decay_rate` is the full spontaneous emission rate (twice
/// the amplitude damping rate).
struct Transition {
  int upper = 0;
  int lower = 0;
  CVec3 dipole = CVec3::Zero();
  double decay_rate = 0.0;
  bool driven = false;
};

/// Levels, decay channels and drive couplings of a single atom.
class LevelScheme {
 public:
  LevelScheme(int n_levels, std::vector<int> excited_levels,
              std::vector<Transition> transitions)
      : n_levels_(n_levels),
        excited_(static_cast<std::size_t>(std::max(n_levels, 0)), false),
        transitions_(std::move(transitions)) {
    detail::require(n_levels > 0, "level scheme needs at least one level");
    for (int level : excited_levels) {
      detail::require(level >= 0 && level < n_levels,
                      "excited level index out of range");
      excited_[static_cast<std::size_t>(level)] = true;
    }
    for (const auto& t : transitions_) {
      detail::require(t.upper >= 0 && t.upper < n_levels && t.lower >= 0 &&
                          t.lower < n_levels,
                      "transition level index out of range");
      detail::require(is_excited(t.upper) && !is_excited(t.lower),
                      "transitions must run from an excited to a ground level");
      detail::require(t.decay_rate >= 0.0, "decay rates must be nonnegative");
    }
  }

  int n_levels() const noexcept { return n_levels_; }
  const std::vector<Transition>& transitions() const noexcept {
    return transitions_;
  }
  bool is_excited(int level) const {
    return excited_.at(static_cast<std::size_t>(level));
  }
  bool has_driven_transition() const {
    for (const auto& t : transitions_)
      if (t.driven) return true;
    return false;
  }

  /// Dipole matrix element d_{lower,upper}; zero when no channel connects them.
  CVec3 dipole(int lower, int upper) const {
    for (const auto& t : transitions_)
      if (t.lower == lower && t.upper == upper) return t.dipole;
    return CVec3::Zero();
  }

 private:
  int n_levels_;
  std::vector<bool> excited_;
  std::vector<Transition> transitions_;
};

/// Drive strength and decay half-rates. The Rabi frequency is 2g; the pi and
/// sigma channels decay at 2*gamma0 and 2*gamma.
struct DriveDecayParams {
  double g = 1.0;
  double gamma0 = 0.5;
  double gamma = 0.5;

  double total_rate() const noexcept { return gamma0 + gamma; }

  void validate() const {
    detail::require(std::isfinite(g) && std::isfinite(gamma0) &&
                        std::isfinite(gamma),
                    "drive/decay parameters must be finite");
    detail::require(g >= 0.0, "drive strength g must be nonnegative");
    detail::require(gamma0 >= 0.0 && gamma >= 0.0,
                    "decay rates must be nonnegative");
    detail::require(total_rate() > 0.0,
                    "gamma0 + gamma must be positive (no relaxation otherwise)");
  }
};

// Level labels of the J = 1/2 -> 1/2 scheme. Levels 1 and 3 are excited,
// 2 and 4 are ground; storage is zero-based.
namespace hg {
inline constexpr int kLevel1 = 0;
inline constexpr int kLevel2 = 1;
inline constexpr int kLevel3 = 2;
inline constexpr int kLevel4 = 3;
}  // namespace hg

namespace two_level {
inline constexpr int kExcited = 0;
inline constexpr int kGround = 1;
}  // namespace two_level

inline Vec3 z_hat() { return Vec3::UnitZ(); }

/// Circular basis vector (x - i y)/sqrt(2).
inline CVec3 eps_minus() {
  return CVec3(complex(1.0, 0.0), complex(0.0, -1.0), complex(0.0, 0.0)) /
         std::sqrt(2.0);
}

/// Four-level J = 1/2 -> 1/2 scheme driven on its pi transitions, with the
/// reduced dipole set to one.
inline LevelScheme hg_level_scheme(const DriveDecayParams& params) {
  params.validate();
  using namespace hg;
  const CVec3 z = detail::to_complex(z_hat());
  const CVec3 sigma = eps_minus() / std::sqrt(3.0);
  return LevelScheme(
      4, {kLevel1, kLevel3},
      {
          {kLevel1, kLevel2, -z, 2.0 * params.gamma0, true},
          {kLevel3, kLevel4, z, 2.0 * params.gamma0, true},
          {kLevel1, kLevel4, sigma, 2.0 * params.gamma, false},
          {kLevel3, kLevel2, sigma.conjugate(), 2.0 * params.gamma, false},
      });
}

/// Driven two-level atom with dipole along z decaying at 2*gamma.
inline LevelScheme two_level_scheme(double gamma) {
  detail::require(gamma > 0.0, "two-level decay rate must be positive");
  return LevelScheme(2, {two_level::kExcited},
                     {{two_level::kExcited, two_level::kGround,
                       detail::to_complex(z_hat()), 2.0 * gamma, true}});
}

/// Atom positions (in wavelengths) and the drive propagation direction.
struct Geometry {
  Vec3 r_a = Vec3::Zero();
  Vec3 r_b = Vec3::Zero();
  Vec3 drive_direction = Vec3::UnitY();

  void validate() const {
    detail::require(std::abs(drive_direction.norm() - 1.0) < 1e-12,
                    "drive direction must be a unit vector");
  }
};

/// Atoms on the x axis, `separation` wavelengths apart, driven along y.
inline Geometry default_geometry(double separation) {
  detail::require(separation > 0.0, "atom separation must be positive");
  Geometry geo;
  geo.r_a = Vec3(0.5 * separation, 0.0, 0.0);
  geo.r_b = Vec3(-0.5 * separation, 0.0, 0.0);
  geo.drive_direction = Vec3::UnitY();
  return geo;
}

/// Far-field observation direction with a selected transverse polarization.
class Detector {
 public:
  Detector(const Vec3& direction, const CVec3& polarization)
      : n_(direction), epsilon_(polarization) {
    detail::require(std::abs(n_.norm() - 1.0) < 1e-12,
                    "detector direction must be a unit vector");
    detail::require(std::abs(epsilon_.squaredNorm() - 1.0) < 1e-12,
                    "detector polarization must be normalized");
    detail::require(std::abs(epsilon_.dot(detail::to_complex(n_))) < 1e-12,
                    "detector polarization must be transverse to its direction");
  }

  const Vec3& direction() const noexcept { return n_; }
  const CVec3& polarization() const noexcept { return epsilon_; }

 private:
  Vec3 n_;
  CVec3 epsilon_;
};

/// Orthonormal transverse pair for direction n. e1 lies in the plane of n and
/// z; for n parallel to z the pair is (x, y).
inline std::pair<CVec3, CVec3> transverse_basis(const Vec3& n) {
  detail::require(std::abs(n.norm() - 1.0) < 1e-12,
                  "transverse_basis needs a unit vector");
  const Vec3 z_perp = z_hat() - n * n.z();
  Vec3 e1;
  Vec3 e2;
  if (z_perp.norm() < 1e-12) {
    e1 = Vec3::UnitX();
    e2 = Vec3::UnitY();
  } else {
    e1 = z_perp.normalized();
    e2 = n.cross(e1);
  }
  return {detail::to_complex(e1), detail::to_complex(e2)};
}

inline constexpr double kNullProjection = 1e-9;

/// Normalized transverse projection of an arbitrary polarization onto n.
inline CVec3 project_transverse(const Vec3& n, const CVec3& polarization) {
  const CVec3 nc = detail::to_complex(n);
  const CVec3 projected = polarization - nc * nc.transpose() * polarization;
  detail::require(projected.norm() > kNullProjection,
                  "polarization has no component transverse to the detector "
                  "direction");
  return projected.normalized();
}

/// pi detection: transverse projection of z.
inline CVec3 pi_polarization(const Vec3& n) {
  const Vec3 projected = z_hat() - n * n.z();
  detail::require(projected.norm() > kNullProjection,
                  "pi polarization undefined for a detector along z");
  return detail::to_complex(projected.normalized());
}

/// sigma detection: transverse direction orthogonal to the pi projection,
/// which carries no z component.
inline CVec3 sigma_polarization(const Vec3& n) {
  const Vec3 v = n.cross(z_hat());
  detail::require(v.norm() > kNullProjection,
                  "sigma polarization undefined for a detector along z");
  return detail::to_complex(v.normalized());
}

enum class ScanPlane { xy, xz };

inline Vec3 scan_direction(ScanPlane plane, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return plane == ScanPlane::xy ? Vec3(c, s, 0.0) : Vec3(c, 0.0, s);
}

}  // namespace ionfringe

#endif  // IONFRINGE_ATOM_MODEL_HPP
