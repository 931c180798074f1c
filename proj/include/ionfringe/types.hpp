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

#ifndef IONFRINGE_TYPES_HPP
#define IONFRINGE_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ionfringe {

using complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr complex kI{0.0, 1.0};

// Positions are measured in wavelengths, so the wave number is 2 pi.
inline constexpr double kWaveNumber = 2.0 * std::numbers::pi;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the steady state of a Liouvillian is not unique.
class DegenerateSteadyState : public Error {
 public:
  DegenerateSteadyState(const std::string& what, int null_dimension)
      : Error(what), null_dimension_(null_dimension) {}
  int null_dimension() const noexcept { return null_dimension_; }

 private:
  int null_dimension_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

inline CVec3 to_complex(const Vec3& v) { return v.cast<complex>(); }

}  // namespace detail

}  // namespace ionfringe

#endif  // IONFRINGE_TYPES_HPP
