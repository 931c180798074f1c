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

#ifndef IONFRINGE_DYNAMICS_HPP
#define IONFRINGE_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/types.hpp"

namespace ionfringe {

/// Returns a description of the first violated density-matrix invariant, or
/// nothing when `m` is Hermitian, unit-trace and positive semidefinite.
inline std::optional<std::string> density_matrix_defect(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return "matrix is not square";
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    return "matrix is not Hermitian";
  if (std::abs(m.trace() - 1.0) > 1e-10)
    return "trace differs from one (trace = " +
           std::to_string(m.trace().real()) + ")";
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) return "matrix has negative eigenvalues";
  return std::nullopt;
}

/// Hermitian, unit-trace, positive semidefinite state of one or two atoms.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (auto defect = density_matrix_defect(m_))
      throw Error("invalid density matrix: " + *defect);
  }

  /// Pure state |level><level|.
  static DensityMatrix basis_state(int dim, int level) {
    detail::require(level >= 0 && level < dim, "basis level out of range");
    Matrix m = Matrix::Zero(dim, dim);
    m(level, level) = 1.0;
    return DensityMatrix(std::move(m));
  }

  /// Pure state built from an (unnormalized) amplitude vector.
  static DensityMatrix pure(const Vector& psi) {
    const double norm = psi.norm();
    detail::require(norm > 0.0, "pure state needs a nonzero vector");
    const Vector u = psi / norm;
    return DensityMatrix(u * u.adjoint());
  }

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  complex operator()(int i, int j) const { return m_(i, j); }

 private:
  Matrix m_;
};

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

// Column-major vectorization: element (i, j) of a dim x dim matrix sits at
// index i + j * dim.
inline Vector vectorize(const Matrix& m) {
  return m.reshaped();
}

inline Matrix unvectorize(const Vector& v, int dim) {
  detail::require(v.size() == static_cast<Eigen::Index>(dim) * dim,
                  "vector length does not match dimension");
  return v.reshaped(dim, dim);
}

inline Eigen::Index vec_index(int i, int j, int dim) {
  return static_cast<Eigen::Index>(i) + static_cast<Eigen::Index>(j) * dim;
}

/// Superoperator acting on the column-major vectorized density matrix.
class Liouvillian {
 public:
  Liouvillian(Matrix superop, int dim) : l_(std::move(superop)), dim_(dim) {
    detail::require(l_.rows() == static_cast<Eigen::Index>(dim) * dim &&
                        l_.cols() == l_.rows(),
                    "superoperator size does not match dimension");
  }

  int dim() const noexcept { return dim_; }
  const Matrix& matrix() const noexcept { return l_; }

  Matrix apply(const Matrix& rho) const {
    detail::require(rho.rows() == dim_ && rho.cols() == dim_,
                    "density matrix dimension does not match Liouvillian");
    return unvectorize(l_ * vectorize(rho), dim_);
  }

  /// Largest |trace(L E_ij)| over basis matrices E_ij.
  double trace_leakage() const {
    double worst = 0.0;
    for (Eigen::Index col = 0; col < l_.cols(); ++col) {
      complex sum = 0.0;
      for (int i = 0; i < dim_; ++i) sum += l_(vec_index(i, i, dim_), col);
      worst = std::max(worst, std::abs(sum));
    }
    return worst;
  }

 private:
  Matrix l_;
  int dim_;
};

/// Lindblad generator -i[H, .] + sum_k (J rho J^dag - {J^dag J, rho}/2).
inline Liouvillian lindbladian(const Matrix& hamiltonian,
                               const std::vector<Matrix>& jumps) {
  const auto n = hamiltonian.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix l = -kI * (Eigen::kroneckerProduct(id, hamiltonian) -
                    Eigen::kroneckerProduct(hamiltonian.transpose(), id))
                       .eval();
  for (const auto& j : jumps) {
    const Matrix jdj = j.adjoint() * j;
    l += Eigen::kroneckerProduct(j.conjugate(), j).eval();
    l -= 0.5 * Eigen::kroneckerProduct(id, jdj).eval();
    l -= 0.5 * Eigen::kroneckerProduct(jdj.transpose(), id).eval();
  }
  return Liouvillian(std::move(l), static_cast<int>(n));
}

/// Resonant drive Hamiltonian (rotating frame). The coupling on a driven
/// transition is g times the z component of its dipole, which gives
/// H_12 = -g and H_34 = +g for the J = 1/2 -> 1/2 scheme.
inline Matrix hamiltonian(const LevelScheme& scheme,
                          const DriveDecayParams& params) {
  const int n = scheme.n_levels();
  Matrix h = Matrix::Zero(n, n);
  for (const auto& t : scheme.transitions()) {
    if (!t.driven) continue;
    const complex coupling = params.g * t.dipole.z();
    h(t.upper, t.lower) += coupling;
    h(t.lower, t.upper) += std::conj(coupling);
  }
  return h;
}

/// sqrt(rate) |lower><upper| for every channel with nonzero rate.
inline std::vector<Matrix> jump_operators(const LevelScheme& scheme) {
  const int n = scheme.n_levels();
  std::vector<Matrix> jumps;
  for (const auto& t : scheme.transitions()) {
    if (t.decay_rate == 0.0) continue;
    Matrix j = Matrix::Zero(n, n);
    j(t.lower, t.upper) = std::sqrt(t.decay_rate);
    jumps.push_back(std::move(j));
  }
  return jumps;
}

inline Liouvillian build_liouvillian(const LevelScheme& scheme,
                                     const DriveDecayParams& params) {
  params.validate();
  detail::require(params.g == 0.0 || scheme.has_driven_transition(),
                  "a drive is applied but no transition is driven");
  return lindbladian(hamiltonian(scheme, params), jump_operators(scheme));
}

inline double default_time_step(const DriveDecayParams& params) {
  return 1e-3 / params.total_rate();
}

/// Fixed-step fourth-order Runge-Kutta on d(vec rho)/dt = L vec rho. The
/// step is shrunk so that an integer number of steps lands on t_final.
inline DensityMatrix evolve(const Liouvillian& l, const DensityMatrix& rho0,
                            double t_final, double dt) {
  detail::require(dt > 0.0, "time step must be positive");
  detail::require(t_final >= 0.0, "final time must be nonnegative");
  detail::require(rho0.dim() == l.dim(),
                  "initial state dimension does not match Liouvillian");
  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  Vector v = vectorize(rho0.matrix());
  if (steps > 0) {
    const double h = t_final / static_cast<double>(steps);
    const Matrix& a = l.matrix();
    Vector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
    for (long s = 0; s < steps; ++s) {
      k1.noalias() = a * v;
      k2.noalias() = a * (v + 0.5 * h * k1);
      k3.noalias() = a * (v + 0.5 * h * k2);
      k4.noalias() = a * (v + h * k3);
      v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  Matrix m = unvectorize(v, l.dim());
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

/// Unique trace-one null vector of L.
///
/// The null-space dimension is read off the singular values; more than one
/// (near-)zero singular value raises DegenerateSteadyState. The state itself
/// comes from a least-squares solve of L vec rho = 0 augmented by the trace
/// condition.
inline DensityMatrix steady_state_numeric(const Liouvillian& l) {
  const Matrix& a = l.matrix();
  const int dim = l.dim();
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv(0));
  int null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < cutoff) ++null_dim;
  if (null_dim != 1)
    throw DegenerateSteadyState(
        "steady state is not unique: Liouvillian null space has dimension " +
            std::to_string(null_dim) +
            (null_dim > 1 ? " (undriven atom: any ground-state mixture is "
                            "stationary)"
                          : ""),
        null_dim);

  const Eigen::Index n2 = a.rows();
  Matrix aug(n2 + 1, n2);
  aug.topRows(n2) = a;
  aug.row(n2).setZero();
  for (int i = 0; i < dim; ++i) aug(n2, vec_index(i, i, dim)) = 1.0;
  Vector rhs = Vector::Zero(n2 + 1);
  rhs(n2) = 1.0;
  const Vector v = aug.colPivHouseholderQr().solve(rhs);
  Matrix m = unvectorize(v, dim);
  m = 0.5 * (m + m.adjoint());
  m /= m.trace();
  return DensityMatrix(std::move(m));
}

inline double steady_state_residual(const Liouvillian& l, const Matrix& rho) {
  return (l.matrix() * vectorize(rho)).norm();
}

/// Closed-form steady state of the driven J = 1/2 -> 1/2 scheme.
///
/// rho11 = rho33 = g^2 / (2(2g^2 + G^2)),
/// rho22 = rho44 = (g^2 + G^2) / (2(2g^2 + G^2)),
/// rho12 = -rho34 = i g G / (2(2g^2 + G^2)), all other coherences zero,
/// with G = gamma0 + gamma.
inline DensityMatrix steady_state_analytic(const DriveDecayParams& params) {
  params.validate();
  detail::require(params.g > 0.0, "analytic steady state needs g > 0");
  using namespace hg;
  const double g = params.g;
  const double big = params.total_rate();
  const double den = 2.0 * (2.0 * g * g + big * big);
  Matrix m = Matrix::Zero(4, 4);
  m(kLevel1, kLevel1) = m(kLevel3, kLevel3) = g * g / den;
  m(kLevel2, kLevel2) = m(kLevel4, kLevel4) = (g * g + big * big) / den;
  m(kLevel1, kLevel2) = kI * g * big / den;
  m(kLevel3, kLevel4) = -m(kLevel1, kLevel2);
  m(kLevel2, kLevel1) = std::conj(m(kLevel1, kLevel2));
  m(kLevel4, kLevel3) = std::conj(m(kLevel3, kLevel4));
  return DensityMatrix(std::move(m));
}

/// Ground-state population 1 - (3g^2 - G^2) / (2(2g^2 + G^2)) as it appears
/// in the literature. It does not give a unit trace; kept only so that the
/// validation report can show it failing.
inline double printed_ground_population(const DriveDecayParams& params) {
  const double g2 = params.g * params.g;
  const double big2 = params.total_rate() * params.total_rate();
  return 1.0 - 0.5 * (3.0 * g2 - big2) / (2.0 * g2 + big2);
}

/// steady_state_analytic with the printed ground population substituted.
/// Returned as a raw matrix because it is not a valid state.
inline Matrix steady_state_printed(const DriveDecayParams& params) {
  Matrix m = steady_state_analytic(params).matrix();
  const double p = printed_ground_population(params);
  m(hg::kLevel2, hg::kLevel2) = p;
  m(hg::kLevel4, hg::kLevel4) = p;
  return m;
}

}  // namespace ionfringe

#endif  // IONFRINGE_DYNAMICS_HPP
