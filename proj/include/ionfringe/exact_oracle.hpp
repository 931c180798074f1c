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

#ifndef IONFRINGE_EXACT_ORACLE_HPP
#define IONFRINGE_EXACT_ORACLE_HPP

#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/dynamics.hpp"
#include "ionfringe/farfield.hpp"
#include "ionfringe/types.hpp"

// Brute-force two-atom evaluation in the full product Hilbert space. Atom A
// is the outer Kronecker factor: |a b> sits at index a * n + b.

namespace ionfringe {

/// Generator of two independent, non-interacting copies of the single-atom
/// dynamics, built from H (x) 1 + 1 (x) H and lifted jump operators.
inline Liouvillian product_liouvillian(const LevelScheme& scheme,
                                       const DriveDecayParams& params) {
  params.validate();
  const int n = scheme.n_levels();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix h = hamiltonian(scheme, params);
  const Matrix h_ab = Eigen::kroneckerProduct(h, id).eval() +
                      Eigen::kroneckerProduct(id, h).eval();
  std::vector<Matrix> jumps;
  for (const auto& j : jump_operators(scheme)) {
    jumps.push_back(Eigen::kroneckerProduct(j, id).eval());
    jumps.push_back(Eigen::kroneckerProduct(id, j).eval());
  }
  return lindbladian(h_ab, jumps);
}

/// Two-atom E^(+) = phase_A (C (x) 1) + phase_B (1 (x) C).
inline Matrix two_atom_field(const LevelScheme& scheme, const Geometry& geometry,
                             const Detector& detector) {
  geometry.validate();
  const int n = scheme.n_levels();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix c = field_coefficients(scheme, detector);
  return geometric_phase(geometry, detector.direction(), Atom::A) *
             Eigen::kroneckerProduct(c, id).eval() +
         geometric_phase(geometry, detector.direction(), Atom::B) *
             Eigen::kroneckerProduct(id, c).eval();
}

namespace detail {
inline void check_two_atom(const LevelScheme& scheme, const Matrix& rho_ab) {
  const auto n = scheme.n_levels();
  require(rho_ab.rows() == n * n && rho_ab.cols() == n * n,
          "two-atom state dimension does not match the level scheme");
}
}  // namespace detail

/// tr(rho E^(-) E^(+)).
inline double intensity_exact(const LevelScheme& scheme,
                              const Geometry& geometry, const Detector& det,
                              const Matrix& rho_ab) {
  detail::check_two_atom(scheme, rho_ab);
  const Matrix e = two_atom_field(scheme, geometry, det);
  return (rho_ab * e.adjoint() * e).trace().real();
}

inline double intensity_exact(const LevelScheme& scheme,
                              const Geometry& geometry, const Detector& det,
                              const DensityMatrix& rho_ab) {
  return intensity_exact(scheme, geometry, det, rho_ab.matrix());
}

/// tr(rho E1^(-) E2^(-) E2^(+) E1^(+)), no factorization assumed.
inline double g2_exact(const LevelScheme& scheme, const Geometry& geometry,
                       const Detector& det_1, const Detector& det_2,
                       const DensityMatrix& rho_ab) {
  detail::check_two_atom(scheme, rho_ab.matrix());
  const Matrix e1 = two_atom_field(scheme, geometry, det_1);
  const Matrix e2 = two_atom_field(scheme, geometry, det_2);
  const Matrix lowered = e2 * e1;
  return (rho_ab.matrix() * lowered.adjoint() * lowered).trace().real();
}

/// State after a photon is registered at det_1.
struct ConditionedState {
  Matrix unnormalized;  // E1^(+) rho E1^(-)
  double rate = 0.0;    // its trace, the detection rate
  DensityMatrix normalized;
};

inline ConditionedState conditioned_state(const LevelScheme& scheme,
                                          const Geometry& geometry,
                                          const Detector& det_1,
                                          const DensityMatrix& rho_ab) {
  detail::check_two_atom(scheme, rho_ab.matrix());
  const Matrix e1 = two_atom_field(scheme, geometry, det_1);
  Matrix post = e1 * rho_ab.matrix() * e1.adjoint();
  const double rate = post.trace().real();
  detail::require(rate > 1e-14,
                  "detection rate at the conditioning detector is zero");
  Matrix normalized = post / rate;
  normalized = 0.5 * (normalized + normalized.adjoint()).eval();
  return {std::move(post), rate, DensityMatrix(std::move(normalized))};
}

/// Reduced state of one atom from a two-atom matrix.
inline Matrix partial_trace(const Matrix& rho_ab, int n, Atom keep) {
  detail::require(rho_ab.rows() == n * n && rho_ab.cols() == n * n,
                  "partial trace dimension mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out(i, j) += keep == Atom::A ? rho_ab(i * n + k, j * n + k)
                                     : rho_ab(k * n + i, k * n + j);
  return out;
}

/// Frobenius distance between rho_ab and the product of its marginals; zero
/// exactly for uncorrelated atoms.
inline double correlation_norm(const Matrix& rho_ab, int n) {
  const Matrix a = partial_trace(rho_ab, n, Atom::A);
  const Matrix b = partial_trace(rho_ab, n, Atom::B);
  return (rho_ab - Eigen::kroneckerProduct(a, b).eval()).norm();
}

inline double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

}  // namespace ionfringe

#endif  // IONFRINGE_EXACT_ORACLE_HPP
