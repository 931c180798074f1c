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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ionfringe/farfield.hpp"
#include "ionfringe/scan.hpp"

namespace ionfringe {
namespace {

constexpr double kTol = 1e-12;
const DriveDecayParams kParams{1.0, 0.5, 0.5};

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  return Vec3(normal(rng), normal(rng), normal(rng)).normalized();
}

Detector random_detector(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const Vec3 n = random_direction(rng);
  const CVec3 raw(complex(normal(rng), normal(rng)), complex(normal(rng), normal(rng)),
                  complex(normal(rng), normal(rng)));
  return Detector(n, project_transverse(n, raw));
}

DensityMatrix random_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = complex(normal(rng), normal(rng));
  Matrix m = a * a.adjoint();
  return DensityMatrix(m / m.trace());
}

TEST(FieldOperator, PiDetectorSeesOnlyPiChannels) {
  const auto scheme = hg_level_scheme(kParams);
  const Detector det(Vec3::UnitX(), CVec3::UnitZ());
  const auto op = field_operator(scheme, default_geometry(2.0), det, Atom::A);
  using namespace hg;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool pi_entry = (i == kLevel2 && j == kLevel1) || (i == kLevel4 && j == kLevel3);
      if (!pi_entry) {
        EXPECT_EQ(op.coeff(i, j), complex{});
      }
    }
  EXPECT_LT(std::abs(op.coeff(kLevel2, kLevel1) + 1.0), kTol);
  EXPECT_LT(std::abs(op.coeff(kLevel4, kLevel3) - 1.0), kTol);
}

TEST(FieldOperator, SigmaDetectorSeesOnlySigmaChannels) {
  const auto scheme = hg_level_scheme(kParams);
  const Detector det(Vec3::UnitY(), CVec3::UnitX());
  const auto op = field_operator(scheme, default_geometry(2.0), det, Atom::B);
  using namespace hg;
  EXPECT_EQ(op.coeff(kLevel2, kLevel1), complex{});
  EXPECT_EQ(op.coeff(kLevel4, kLevel3), complex{});
  EXPECT_LT(std::abs(op.coeff(kLevel4, kLevel1) - 1.0 / std::sqrt(6.0)), kTol);
  EXPECT_LT(std::abs(op.coeff(kLevel2, kLevel3) - 1.0 / std::sqrt(6.0)), kTol);

  // circular detection of eps_minus selects the 1 -> 4 channel alone
  const Detector circ(Vec3::UnitZ(), eps_minus());
  const auto op_c = field_operator(scheme, default_geometry(2.0), circ, Atom::A);
  EXPECT_LT(std::abs(op_c.coeff(kLevel4, kLevel1) - 1.0 / std::sqrt(3.0)), kTol);
  EXPECT_LT(std::abs(op_c.coeff(kLevel2, kLevel3)), kTol);
}

TEST(FieldOperator, TwoLevelSingleEntry) {
  const Detector det(Vec3::UnitX(), CVec3::UnitZ());
  const auto op = field_operator(two_level_scheme(1.0), default_geometry(1.0), det, Atom::A);
  EXPECT_EQ(op.coeff.rows(), 2);
  EXPECT_EQ(op.coeff(two_level::kGround, two_level::kExcited), complex(1.0));
  EXPECT_EQ(op.coeff.cwiseAbs().sum(), 1.0);
}

TEST(FieldOperator, PhaseFollowsPosition) {
  const auto geo = default_geometry(1.5);
  const Detector det(Vec3::UnitX(), CVec3::UnitZ());
  const auto scheme = hg_level_scheme(kParams);
  const auto a = field_operator(scheme, geo, det, Atom::A);
  const double arg = kWaveNumber * (Vec3::UnitX() - Vec3::UnitY()).dot(geo.r_a);
  EXPECT_LT(std::abs(a.phase - std::polar(1.0, -arg)), kTol);
}

TEST(FieldOperator, LoweringAndNilpotent) {
  std::mt19937_64 rng(21);
  const auto scheme = hg_level_scheme(kParams);
  const auto geo = default_geometry(2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c1 = field_operator(scheme, geo, random_detector(rng), Atom::A).coeff;
    const auto c2 = field_operator(scheme, geo, random_detector(rng), Atom::A).coeff;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (c1(i, j) != complex{}) {
          EXPECT_TRUE(scheme.is_excited(j));
          EXPECT_FALSE(scheme.is_excited(i));
        }
    EXPECT_EQ((c1 * c2).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(MeanField, SigmaVanishesInSteadyState) {
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  const Vec3 n = Vec3::UnitX();
  const auto op = field_operator(scheme, default_geometry(2.0),
                                 Detector(n, sigma_polarization(n)), Atom::A);
  EXPECT_LT(std::abs(mean_field(op, rho)), kTol);
}

TEST(MeanField, PiProportionalToCoherence) {
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  const Vec3 n = Vec3(1.0, 1.0, 1.0).normalized();
  const Detector det(n, pi_polarization(n));
  const auto op = field_operator(scheme, default_geometry(2.0), det, Atom::A);
  const complex expected =
      op.phase * 2.0 * det.polarization().dot(scheme.dipole(hg::kLevel2, hg::kLevel1)) *
      rho(hg::kLevel1, hg::kLevel2);
  EXPECT_LT(std::abs(mean_field(op, rho) - expected), kTol);
  EXPECT_GT(std::abs(expected), 0.1);
}

TEST(MeanField, MixedGroundStateRadiatesNothing) {
  Matrix m = Matrix::Zero(4, 4);
  m(hg::kLevel2, hg::kLevel2) = m(hg::kLevel4, hg::kLevel4) = 0.5;
  const DensityMatrix rho(m);
  std::mt19937_64 rng(8);
  const auto scheme = hg_level_scheme(kParams);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = field_operator(scheme, default_geometry(2.0), random_detector(rng), Atom::A);
    EXPECT_EQ(std::abs(mean_field(op, rho)), 0.0);
  }
}

TEST(MeanField, DimensionMismatch) {
  const auto op = field_operator(hg_level_scheme(kParams), default_geometry(2.0),
                                 Detector(Vec3::UnitX(), CVec3::UnitZ()), Atom::A);
  EXPECT_THROW(mean_field(op, DensityMatrix::basis_state(2, 0)), Error);
}

TEST(G1, DiagonalForSigmaDetection) {
  // rho11 * (|eps.d21|^2 + |eps.d43|^2 + |eps.d41|^2 + |eps.d23|^2) = rho11 / 3
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  for (double angle : {0.0, 0.7, 2.1}) {
    const Vec3 n = scan_direction(ScanPlane::xy, angle);
    const auto op = field_operator(scheme, default_geometry(2.0),
                                   Detector(n, sigma_polarization(n)), Atom::A);
    EXPECT_NEAR(g1(op, op, rho).real(), rho(0, 0).real() / 3.0, kTol);
    EXPECT_LT(std::abs(g1(op, op, rho).imag()), kTol);
  }
}

TEST(G1, DiagonalForPiDetectionUsesFullPiDipole) {
  // |d21| = |d43| = 1: pi detection with eps = z collects 2 rho11
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  const auto op = field_operator(scheme, default_geometry(2.0),
                                 Detector(Vec3::UnitX(), CVec3::UnitZ()), Atom::A);
  EXPECT_NEAR(g1(op, op, rho).real(), 2.0 * rho(0, 0).real(), kTol);
}

TEST(G1, OrthogonalPolarizationsDecorrelate) {
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  const auto geo = default_geometry(2.0);
  const auto x = field_operator(scheme, geo, Detector(Vec3::UnitZ(), CVec3::UnitX()), Atom::A);
  const auto y = field_operator(scheme, geo, Detector(Vec3::UnitZ(), CVec3::UnitY()), Atom::A);
  const auto z = field_operator(scheme, geo, Detector(Vec3::UnitX(), CVec3::UnitZ()), Atom::A);
  const auto yy = field_operator(scheme, geo, Detector(Vec3::UnitX(), CVec3::UnitY()), Atom::A);
  EXPECT_LT(std::abs(g1(x, y, rho)), kTol);
  EXPECT_LT(std::abs(g1(z, yy, rho)), kTol);
}

TEST(G1, SamePolarizationDifferentDirection) {
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  const auto geo = default_geometry(2.0);
  const auto a = field_operator(scheme, geo, Detector(Vec3::UnitX(), CVec3::UnitZ()), Atom::A);
  const auto b = field_operator(scheme, geo, Detector(Vec3::UnitY(), CVec3::UnitZ()), Atom::A);
  EXPECT_NEAR(std::abs(g1(a, b, rho)), std::abs(g1(a, a, rho)), kTol);
}

TEST(G1, CauchySchwarzAndHermiticity) {
  std::mt19937_64 rng(33);
  const auto scheme = hg_level_scheme(kParams);
  const auto geo = default_geometry(2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_state(rng, 4);
    const auto i = field_operator(scheme, geo, random_detector(rng), Atom::A);
    const auto j = field_operator(scheme, geo, random_detector(rng), Atom::A);
    const complex ij = g1(i, j, rho);
    EXPECT_LE(std::norm(ij), g1(i, i, rho).real() * g1(j, j, rho).real() + kTol);
    EXPECT_LT(std::abs(ij - std::conj(g1(j, i, rho))), kTol);
  }
}

TEST(G1, RejectsMixedAtoms) {
  const auto scheme = hg_level_scheme(kParams);
  const auto geo = default_geometry(2.0);
  const Detector det(Vec3::UnitX(), CVec3::UnitZ());
  EXPECT_THROW(g1(field_operator(scheme, geo, det, Atom::A),
                  field_operator(scheme, geo, det, Atom::B), steady_state_analytic(kParams)),
               Error);
}

TEST(Intensity, SigmaIsFlat) {
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  const auto geo = default_geometry(2.0);
  for (int i = 0; i < 72; ++i) {
    const Vec3 n = scan_direction(ScanPlane::xy, 2.0 * std::numbers::pi * i / 72.0);
    EXPECT_NEAR(intensity(scheme, geo, Detector(n, sigma_polarization(n)), rho, rho),
                2.0 * rho(0, 0).real() / 3.0, kTol);
  }
}

TEST(Intensity, PiFringesFollowClosedForm) {
  // I = 2 rho11 b [1 + V cos(k (n - n_l) . (R_A - R_B))], b = 2 for eps = z
  for (double g : {0.3, 1.0, 4.0}) {
    const DriveDecayParams p{g, 0.5, 0.5};
    const auto scheme = hg_level_scheme(p);
    const auto rho = steady_state_analytic(p);
    const auto geo = default_geometry(1.7);
    const double v = intensity_visibility(p, CVec3::UnitZ());
    for (double angle : {0.1, 0.9, 2.5, 4.0}) {
      const Vec3 n = scan_direction(ScanPlane::xy, angle);
      const double expected =
          4.0 * rho(0, 0).real() * (1.0 + v * std::cos(intensity_phase(geo, n)));
      EXPECT_NEAR(intensity(scheme, geo, Detector(n, CVec3::UnitZ()), rho, rho), expected, kTol);
    }
  }
}

TEST(Intensity, TwoLevelFringePattern) {
  const double g = 0.9, gamma = 0.5;
  const auto scheme = two_level_scheme(gamma);
  const auto rho = steady_state_numeric(build_liouvillian(scheme, {g, 0.0, gamma}));
  const auto geo = default_geometry(2.3);
  const double amp = 2.0 * g * g / (2.0 * g * g + gamma * gamma);
  for (double angle : {0.0, 0.4, 1.2, 3.3}) {
    const Vec3 n = scan_direction(ScanPlane::xy, angle);
    const double expected =
        amp * (1.0 + two_level_visibility(g, gamma) * std::cos(intensity_phase(geo, n)));
    EXPECT_NEAR(intensity(scheme, geo, Detector(n, CVec3::UnitZ()), rho, rho), expected, 1e-11);
  }
}

TEST(Intensity, TranslationInvariantAndNonnegative) {
  std::mt19937_64 rng(4);
  const auto scheme = hg_level_scheme(kParams);
  const auto rho = steady_state_analytic(kParams);
  auto geo = default_geometry(2.0);
  auto shifted = geo;
  shifted.r_a += Vec3(0.3, -1.2, 0.77);
  shifted.r_b += Vec3(0.3, -1.2, 0.77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto det = random_detector(rng);
    const double i0 = intensity(scheme, geo, det, rho, rho);
    EXPECT_GE(i0, 0.0);
    EXPECT_NEAR(i0, intensity(scheme, shifted, det, rho, rho), kTol);
  }
}

TEST(Intensity, SuperpositionFringeAmplitude) {
  // undriven two-level atoms in c_e|e> + c_g|g>: fringe amplitude 2 |c_e c_g|^2
  const auto scheme = two_level_scheme(1.0);
  const auto geo = default_geometry(1.0);
  const Vec3 n_max = Vec3::UnitY() * -1.0;  // phase 0 (n - n_l perpendicular to R_A - R_B)
  for (double theta : {0.0, 0.3, 0.7, 1.1, 1.5707963267948966}) {
    Vector psi(2);
    psi(two_level::kExcited) = std::sin(theta);
    psi(two_level::kGround) = std::cos(theta);
    const auto rho = DensityMatrix::pure(psi);
    const double ce_cg = std::norm(psi(0) * psi(1));
    const double flat = 2.0 * std::norm(psi(0));
    EXPECT_NEAR(intensity(scheme, geo, Detector(n_max, CVec3::UnitZ()), rho, rho),
                flat + 2.0 * ce_cg, kTol);
  }
}

TEST(IntensityVisibility, ClosedForm) {
  EXPECT_EQ(intensity_visibility(kParams, CVec3::UnitX()), 0.0);
  EXPECT_NEAR(intensity_visibility({1e-9, 0.5, 0.5}, CVec3::UnitZ()), 1.0, 1e-15);
  EXPECT_NEAR(intensity_visibility({1.0, 0.5, 0.5}, CVec3::UnitZ()), 1.0 / 3.0, 1e-15);
}

TEST(IntensityVisibility, ScanAgreesForPureChannels) {
  const auto geo = default_geometry(2.0);
  for (double g : {0.2, 1.0, 3.0}) {
    const DriveDecayParams p{g, 0.5, 0.5};
    const auto scheme = hg_level_scheme(p);
    const auto rho = steady_state_analytic(p);
    const AngleScan scan;
    const auto pi = fringe_extrema(
        [&](double a) {
          const Vec3 n = scan_direction(scan.plane, a);
          return intensity(scheme, geo, Detector(n, pi_polarization(n)), rho, rho);
        },
        scan);
    EXPECT_NEAR(pi.visibility(), intensity_visibility(p, CVec3::UnitZ()), 1e-9);
    const auto sigma = fringe_extrema(
        [&](double a) {
          const Vec3 n = scan_direction(scan.plane, a);
          return intensity(scheme, geo, Detector(n, sigma_polarization(n)), rho, rho);
        },
        scan);
    EXPECT_LT(sigma.visibility(), 1e-12);
  }
}

TEST(IntensityVisibility, MixedPolarizationFollowsDipoleWeights) {
  // With the dipole table the pi channels weigh 2|z.eps|^2 against
  // (1 - |z.eps|^2)/3, so the scanned depth is
  // G^2/(2g^2+G^2) * 6|z.eps|^2 / (1 + 5|z.eps|^2)   (sympy oracle)
  const DriveDecayParams p{1.0, 0.5, 0.5};
  const auto scheme = hg_level_scheme(p);
  const auto rho = steady_state_analytic(p);
  const double ez2 = 0.5;
  const CVec3 eps = (CVec3::UnitZ() + CVec3::UnitX()) / std::sqrt(2.0);
  const Detector det(-Vec3::UnitY(), eps);
  // the fringe phase is swept by sliding atom B along y
  const auto scanned = fringe_extrema(
      [&](double s) {
        Geometry geo = default_geometry(1.0);
        geo.r_a = Vec3::Zero();
        geo.r_b = -s * Vec3::UnitY();
        return intensity(scheme, geo, det, rho, rho);
      },
      AngleScan{ScanPlane::xy, 0.0, 1.0, 400});
  const double v34 = intensity_visibility(p, eps);
  const double exact = (1.0 / 3.0) * 6.0 * ez2 / (1.0 + 5.0 * ez2);
  EXPECT_NEAR(v34, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(scanned.visibility(), exact, 1e-9);
}

}  // namespace
}  // namespace ionfringe
