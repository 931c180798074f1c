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

#ifndef IONFRINGE_IONFRINGE_HPP
#define IONFRINGE_IONFRINGE_HPP

#include "ionfringe/atom_model.hpp"
#include "ionfringe/correlations.hpp"
#include "ionfringe/dynamics.hpp"
#include "ionfringe/exact_oracle.hpp"
#include "ionfringe/farfield.hpp"
#include "ionfringe/quantum_jump.hpp"
#include "ionfringe/scan.hpp"
#include "ionfringe/types.hpp"

#endif  // IONFRINGE_IONFRINGE_HPP
