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

#ifndef IONFRINGE_QUANTUM_JUMP_HPP
#define IONFRINGE_QUANTUM_JUMP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/dynamics.hpp"
#include "ionfringe/types.hpp"

namespace ionfringe {

struct QuantumJumpOptions {
  int n_traj = 2000;
  double t_total = 200.0;
  std::uint64_t seed = 1;
  /// Spacing of the sampling grid; <= 0 selects 0.01 / Gamma.
  double sample_dt = 0.0;
  /// Initial transient dropped from the time average; < 0 selects ten
  /// relaxation times of the slowest Liouvillian mode (at least 20 / Gamma),
  /// capped at t_total / 2.
  double discard = -1.0;
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Trajectory-averaged steady state with per-entry standard errors taken
/// from the spread of the per-trajectory time averages.
struct QuantumJumpEstimate {
  Matrix mean;
  Eigen::MatrixXd stderr_real;
  Eigen::MatrixXd stderr_imag;
  int n_traj = 0;
  long samples_per_trajectory = 0;

  DensityMatrix state() const { return DensityMatrix(mean); }
};

/// Smallest nonzero decay rate -Re(lambda) among the Liouvillian eigenvalues.
inline double slowest_relaxation_rate(const Liouvillian& l) {
  Eigen::ComplexEigenSolver<Matrix> es(l.matrix(), false);
  double slowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double rate = -es.eigenvalues()(i).real();
    if (rate > 1e-9) slowest = std::min(slowest, rate);
  }
  return slowest;
}

namespace detail {

class JumpTrajectory {
 public:
  JumpTrajectory(const Matrix& h_eff, const std::vector<Matrix>& jumps,
                 const Matrix& step_propagator, std::uint64_t seed,
                 std::uint64_t index)
      : h_eff_(h_eff), jumps_(jumps), step_(step_propagator) {
    decay_ = Matrix::Zero(h_eff.rows(), h_eff.cols());
    for (const auto& j : jumps_) decay_ += j.adjoint() * j;
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
    threshold_ = draw();
  }

  std::size_t pick_index(std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_);
  }

  /// Propagates psi (unnormalized, with norm^2 above the jump threshold) by
  /// `dt`, applying every jump that falls inside the interval.
  void advance(Vector& psi, double dt) {
    double remaining = dt;
    bool full_step = true;
    while (remaining > 0.0) {
      next_.noalias() = (full_step ? step_ : propagator(remaining)) * psi;
      if (next_.squaredNorm() > threshold_) {
        psi.swap(next_);
        return;
      }
      const double s = jump_time(psi, remaining);
      psi = propagator(s) * psi;
      jump(psi);
      remaining -= s;
      full_step = false;
    }
  }

 private:
  double draw() {
    double u = 0.0;
    while (u == 0.0) u = uniform_(rng_);
    return u;
  }

  Matrix propagator(double s) const { return (-kI * s * h_eff_).exp(); }

  // Root of |exp(-i H s) psi|^2 = threshold on (0, upper], by Newton steps
  // kept inside a shrinking bracket.
  double jump_time(const Vector& psi, double upper) const {
    double lo = 0.0;
    double hi = upper;
    double s = 0.5 * upper;
    for (int iter = 0; iter < 100; ++iter) {
      const Vector phi = propagator(s) * psi;
      const double f = phi.squaredNorm() - threshold_;
      if (std::abs(f) < 1e-14 * threshold_) break;
      if (f > 0.0)
        lo = s;
      else
        hi = s;
      const double slope = -(phi.adjoint() * decay_ * phi)(0, 0).real();
      double next = slope < 0.0 ? s - f / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (hi - lo < 1e-15 * upper) break;
      s = next;
    }
    return s;
  }

  void jump(Vector& psi) {
    std::vector<double> weights;
    weights.reserve(jumps_.size());
    for (const auto& j : jumps_) weights.push_back((j * psi).squaredNorm());
    std::discrete_distribution<std::size_t> pick(weights.begin(),
                                                 weights.end());
    const std::size_t k = pick(rng_);
    psi = jumps_[k] * psi;
    psi.normalize();
    threshold_ = draw();
  }

  const Matrix& h_eff_;
  const std::vector<Matrix>& jumps_;
  const Matrix& step_;
  Matrix decay_;
  Vector next_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  double threshold_ = 1.0;
};

}  // namespace detail

/// Quantum-jump unraveling of the master equation, time-averaged in the
/// stationary regime. Each trajectory starts in a ground level drawn
/// uniformly. Trajectory k draws from a stream seeded by (seed, k),
/// so the result does not depend on the thread count.
inline QuantumJumpEstimate quantum_jump_estimate(
    const LevelScheme& scheme, const DriveDecayParams& params,
    const QuantumJumpOptions& options) {
  params.validate();
  detail::require(options.n_traj >= 1, "need at least one trajectory");
  const double big = params.total_rate();
  const double dt = options.sample_dt > 0.0 ? options.sample_dt : 0.01 / big;
  const double discard = options.discard >= 0.0
                             ? options.discard
                             : std::min(std::max(20.0 / big,
                                                 10.0 / slowest_relaxation_rate(
                                                            build_liouvillian(
                                                                scheme, params))),
                                        0.5 * options.t_total);
  detail::require(options.t_total > discard,
                  "t_total must exceed the discarded transient");

  const int n = scheme.n_levels();
  const std::vector<Matrix> jumps = jump_operators(scheme);
  Matrix h_eff = hamiltonian(scheme, params);
  for (const auto& j : jumps) h_eff -= 0.5 * kI * (j.adjoint() * j);
  const Matrix step = (-kI * dt * h_eff).exp();

  std::vector<int> ground_levels;
  for (int i = 0; i < n; ++i)
    if (!scheme.is_excited(i)) ground_levels.push_back(i);
  detail::require(!ground_levels.empty(), "scheme has no ground level");

  const long n_steps = static_cast<long>(std::floor(options.t_total / dt + 1e-9));
  const long first_sample = static_cast<long>(std::ceil(discard / dt - 1e-9));
  const long n_samples = n_steps - first_sample + 1;

  std::vector<Matrix> averages(static_cast<std::size_t>(options.n_traj));
  auto run = [&](int k) {
    detail::JumpTrajectory traj(h_eff, jumps, step, options.seed,
                                static_cast<std::uint64_t>(k));
    Vector psi = Vector::Zero(n);
    psi(ground_levels[traj.pick_index(ground_levels.size())]) = 1.0;
    Matrix acc = Matrix::Zero(n, n);
    for (long s = 0; s <= n_steps; ++s) {
      if (s > 0) traj.advance(psi, dt);
      if (s >= first_sample) acc += (psi * psi.adjoint()) / psi.squaredNorm();
    }
    averages[static_cast<std::size_t>(k)] = acc / static_cast<double>(n_samples);
  };

  unsigned workers = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(options.n_traj));
  if (workers == 1) {
    for (int k = 0; k < options.n_traj; ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int k = static_cast<int>(w); k < options.n_traj;
             k += static_cast<int>(workers))
          run(k);
      });
    for (auto& t : pool) t.join();
  }

  QuantumJumpEstimate est;
  est.n_traj = options.n_traj;
  est.samples_per_trajectory = n_samples;
  est.mean = Matrix::Zero(n, n);
  for (const auto& a : averages) est.mean += a;
  est.mean /= static_cast<double>(options.n_traj);
  Eigen::MatrixXd var_re = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd var_im = Eigen::MatrixXd::Zero(n, n);
  for (const auto& a : averages) {
    const Matrix d = a - est.mean;
    var_re += d.real().cwiseAbs2();
    var_im += d.imag().cwiseAbs2();
  }
  const double denom = options.n_traj > 1
                           ? static_cast<double>(options.n_traj - 1) *
                                 static_cast<double>(options.n_traj)
                           : 1.0;
  est.stderr_real = (var_re / denom).cwiseSqrt();
  est.stderr_imag = (var_im / denom).cwiseSqrt();
  est.mean = 0.5 * (est.mean + est.mean.adjoint()).eval();
  return est;
}

}  // namespace ionfringe

#endif  // IONFRINGE_QUANTUM_JUMP_HPP
