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

#include <map>
#include <random>
#include <utility>

#include <gtest/gtest.h>

#include "ionfringe/dynamics.hpp"

namespace ionfringe {
namespace {

using Index = std::pair<int, int>;  // one-based level labels
using Line = std::map<Index, complex>;

// Right-hand sides of the single-atom density matrix equations, transcribed
// by hand (G = gamma0 + gamma). The 3-4 coherence line carries the damping
// and drive sign required by rho34 = -rho12 in steady state.
std::map<Index, Line> equation_set(double g, double g0, double gs) {
  const double big = g0 + gs;
  const complex ig = kI * g;
  return {
      {{1, 1}, {{{2, 1}, ig}, {{1, 2}, -ig}, {{1, 1}, -2.0 * big}}},
      {{1, 2}, {{{2, 2}, ig}, {{1, 1}, -ig}, {{1, 2}, -big}}},
      {{1, 3}, {{{2, 3}, ig}, {{1, 4}, ig}, {{1, 3}, -2.0 * big}}},
      {{1, 4}, {{{2, 4}, ig}, {{1, 3}, ig}, {{1, 4}, -big}}},
      {{2, 2}, {{{2, 1}, -ig}, {{1, 2}, ig}, {{1, 1}, 2.0 * g0}, {{3, 3}, 2.0 * gs}}},
      {{2, 3}, {{{1, 3}, ig}, {{2, 4}, ig}, {{2, 3}, -big}}},
      {{2, 4}, {{{1, 4}, ig}, {{2, 3}, ig}}},
      {{3, 3}, {{{4, 3}, -ig}, {{3, 4}, ig}, {{3, 3}, -2.0 * big}}},
      {{3, 4}, {{{4, 4}, -ig}, {{3, 3}, ig}, {{3, 4}, -big}}},
      {{4, 4}, {{{3, 3}, 2.0 * g0}, {{1, 1}, 2.0 * gs}, {{4, 3}, ig}, {{3, 4}, -ig}}},
  };
}

Eigen::Index vidx(Index ij) { return vec_index(ij.first - 1, ij.second - 1, 4); }

TEST(BuildLiouvillian, ReproducesEquationSet) {
  const DriveDecayParams params{1.3, 0.4, 0.9};
  const auto l = build_liouvillian(hg_level_scheme(params), params).matrix();
  for (const auto& [target, line] : equation_set(params.g, params.gamma0, params.gamma)) {
    for (int k = 1; k <= 4; ++k)
      for (int m = 1; m <= 4; ++m) {
        const auto it = line.find({k, m});
        const complex expected = it == line.end() ? complex{} : it->second;
        EXPECT_LT(std::abs(l(vidx(target), vidx({k, m})) - expected), 1e-12)
            << "d rho" << target.first << target.second << "/dt, coefficient of rho" << k << m;
      }
  }
}

TEST(BuildLiouvillian, ExcitedPopulationDecay) {
  const DriveDecayParams params{0.7, 0.25, 1.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params).matrix();
  EXPECT_NEAR(l(vidx({1, 1}), vidx({1, 1})).real(), -2.0 * 1.75, 1e-12);
}

TEST(BuildLiouvillian, UndrivenBlocksDecouple) {
  const DriveDecayParams params{0.0, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params).matrix();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int m = 0; m < 4; ++m) {
        if (k == m) continue;
        EXPECT_EQ(l(vec_index(i, i, 4), vec_index(k, m, 4)), complex{});
        EXPECT_EQ(l(vec_index(k, m, 4), vec_index(i, i, 4)), complex{});
      }
}

TEST(BuildLiouvillian, TracePreserving) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const DriveDecayParams params{u(rng), u(rng), u(rng)};
    EXPECT_LT(build_liouvillian(hg_level_scheme(params), params).trace_leakage(), 1e-12);
  }
  const DriveDecayParams p2{0.8, 0.0, 1.0};
  EXPECT_LT(build_liouvillian(two_level_scheme(1.0), p2).trace_leakage(), 1e-12);
}

TEST(BuildLiouvillian, DriveWithoutDrivenTransitionRejected) {
  const LevelScheme scheme(2, {0}, {{0, 1, CVec3::UnitZ(), 1.0, false}});
  EXPECT_THROW(build_liouvillian(scheme, {1.0, 0.5, 0.5}), Error);
}

TEST(SteadyStateAnalytic, ReferenceValues) {
  const auto rho = steady_state_analytic({1.0, 0.5, 0.5});
  using namespace hg;
  EXPECT_NEAR(rho(kLevel1, kLevel1).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(rho(kLevel3, kLevel3).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(rho(kLevel2, kLevel2).real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rho(kLevel4, kLevel4).real(), 1.0 / 3.0, 1e-15);
  EXPECT_LT(std::abs(rho(kLevel1, kLevel2) - kI / 6.0), 1e-15);
  EXPECT_LT(std::abs(rho(kLevel3, kLevel4) + kI / 6.0), 1e-15);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
  EXPECT_THROW(steady_state_analytic({0.0, 0.5, 0.5}), Error);
}

TEST(SteadyStateAnalytic, StrongDriveSaturates) {
  const auto rho = steady_state_analytic({1e4, 0.5, 0.5});
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(rho(i, i).real(), 0.25, 1e-7);
  EXPECT_LT(std::abs(rho(hg::kLevel1, hg::kLevel2)), 1e-4);
}

TEST(SteadyStateAnalytic, AnnihilatedByLiouvillian) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const DriveDecayParams params{u(rng), u(rng), u(rng)};
    const auto l = build_liouvillian(hg_level_scheme(params), params);
    EXPECT_LT(steady_state_residual(l, steady_state_analytic(params).matrix()), 1e-12);
  }
}

TEST(SteadyStateAnalytic, PrintedGroundPopulationBreaksTrace) {
  // 2 rho11 + 2 rho22 -> 0 + 2 * (1 + 1/2) = 3 as g -> 0
  const DriveDecayParams weak{1e-8, 0.5, 0.5};
  EXPECT_NEAR(steady_state_printed(weak).trace().real(), 3.0, 1e-12);
  EXPECT_NEAR(steady_state_printed({1.0, 0.5, 0.5}).trace().real(), 5.0 / 3.0, 1e-12);
  EXPECT_TRUE(density_matrix_defect(steady_state_printed({1.0, 0.5, 0.5})).has_value());
}

TEST(SteadyStateNumeric, MatchesClosedForm) {
  const DriveDecayParams params{1.0, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  const auto rho = steady_state_numeric(l);
  EXPECT_LT((rho.matrix() - steady_state_analytic(params).matrix()).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT(steady_state_residual(l, rho.matrix()), 1e-11);
  using namespace hg;
  for (auto [i, j] : {std::pair{kLevel1, kLevel3}, {kLevel1, kLevel4}, {kLevel2, kLevel3},
                      {kLevel2, kLevel4}})
    EXPECT_LT(std::abs(rho(i, j)), 1e-12);
}

TEST(SteadyStateNumeric, SymmetryOfScheme) {
  const DriveDecayParams params{0.37, 1.2, 0.15};
  const auto rho = steady_state_numeric(build_liouvillian(hg_level_scheme(params), params));
  using namespace hg;
  EXPECT_NEAR(rho(kLevel1, kLevel1).real(), rho(kLevel3, kLevel3).real(), 1e-12);
  EXPECT_NEAR(rho(kLevel2, kLevel2).real(), rho(kLevel4, kLevel4).real(), 1e-12);
  EXPECT_LT(std::abs(rho(kLevel1, kLevel2) + rho(kLevel3, kLevel4)), 1e-12);
}

TEST(SteadyStateNumeric, UndrivenIsDegenerate) {
  const DriveDecayParams params{0.0, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  try {
    steady_state_numeric(l);
    FAIL() << "expected DegenerateSteadyState";
  } catch (const DegenerateSteadyState& e) {
    EXPECT_GT(e.null_dimension(), 1);
    EXPECT_NE(std::string(e.what()).find("not unique"), std::string::npos);
  }
}

TEST(SteadyStateNumeric, TwoLevelAtom) {
  // rho_ee = g^2 / (2 g^2 + gamma^2) for Rabi frequency 2g and decay 2 gamma
  const double g = 0.8, gamma = 0.6;
  const auto rho =
      steady_state_numeric(build_liouvillian(two_level_scheme(gamma), {g, 0.0, gamma}));
  EXPECT_NEAR(rho(two_level::kExcited, two_level::kExcited).real(),
              g * g / (2 * g * g + gamma * gamma), 1e-12);
}

TEST(Evolve, BranchingRatioWithoutDrive) {
  const DriveDecayParams params{0.0, 0.2, 0.8};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  const auto rho = evolve(l, DensityMatrix::basis_state(4, hg::kLevel1), 30.0, 1e-3);
  EXPECT_NEAR(rho(hg::kLevel2, hg::kLevel2).real(), 0.2, 1e-10);
  EXPECT_NEAR(rho(hg::kLevel4, hg::kLevel4).real(), 0.8, 1e-10);
}

TEST(Evolve, SteadyStateIsFixedPoint) {
  const DriveDecayParams params{1.0, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  const auto ss = steady_state_analytic(params);
  const auto rho = evolve(l, ss, 10.0, default_time_step(params));
  EXPECT_LT((rho.matrix() - ss.matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Evolve, RelaxesToClosedForm) {
  const DriveDecayParams params{1.0, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  const auto rho = evolve(l, DensityMatrix::basis_state(4, hg::kLevel2), 50.0,
                          default_time_step(params));
  EXPECT_LT((rho.matrix() - steady_state_analytic(params).matrix()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Evolve, ConservesTraceHermiticityPositivity) {
  const DriveDecayParams params{2.0, 0.3, 0.6};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  Vector psi(4);
  psi << 0.3, complex(0.2, 0.5), complex(-0.4, 0.1), 0.6;
  auto rho = DensityMatrix::pure(psi);
  for (int chunk = 0; chunk < 10; ++chunk) {
    rho = evolve(l, rho, 10.0 / params.total_rate(), default_time_step(params));
    // evolve re-symmetrizes; check the raw propagated vector separately below
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-8);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-7);
  }
}

TEST(Evolve, RawPropagationKeepsHermiticity) {
  const DriveDecayParams params{2.0, 0.3, 0.6};
  const Matrix a = build_liouvillian(hg_level_scheme(params), params).matrix();
  Vector psi(4);
  psi << 0.3, complex(0.2, 0.5), complex(-0.4, 0.1), 0.6;
  psi.normalize();
  Vector v = vectorize(psi * psi.adjoint());
  const double h = default_time_step(params);
  for (int s = 0; s < 20000; ++s) {
    const Vector k1 = a * v, k2 = a * (v + 0.5 * h * k1), k3 = a * (v + 0.5 * h * k2),
                 k4 = a * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const Matrix m = unvectorize(v, 4);
  EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-8);
}

TEST(Evolve, StepHalvingConverged) {
  const DriveDecayParams params{1.5, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  const auto rho0 = DensityMatrix::basis_state(4, hg::kLevel2);
  const double dt = default_time_step(params);
  const auto coarse = evolve(l, rho0, 5.0, dt);
  const auto fine = evolve(l, rho0, 5.0, 0.5 * dt);
  EXPECT_LT((coarse.matrix() - fine.matrix()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Evolve, RejectsBadInput) {
  const DriveDecayParams params{1.0, 0.5, 0.5};
  const auto l = build_liouvillian(hg_level_scheme(params), params);
  const auto rho0 = DensityMatrix::basis_state(4, 1);
  EXPECT_THROW(evolve(l, rho0, 1.0, 0.0), Error);
  EXPECT_THROW(evolve(l, rho0, -1.0, 0.1), Error);
  EXPECT_THROW(evolve(l, DensityMatrix::basis_state(2, 1), 1.0, 0.1), Error);
  EXPECT_THROW(DensityMatrix(Matrix::Identity(4, 4)), Error);
}

TEST(Vectorization, ColumnMajorLayout) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vectorize(m);
  EXPECT_EQ(v(vec_index(0, 1, 2)), complex(2.0));
  EXPECT_EQ(v(vec_index(1, 0, 2)), complex(3.0));
  EXPECT_EQ(unvectorize(v, 2), m);
}

}  // namespace
}  // namespace ionfringe
