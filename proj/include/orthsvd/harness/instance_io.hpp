// Copyright 2026 The orthsvd Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Instance files. One JSON object:
//
//   {"n": 2, "q": "identity", "a": [1, 0], "b": [0, 1]}
//
// "q" is "identity", "permutation:i0,i1,..." (row r has its 1 in column
// i_r), or a row-major array of n*n numbers. Numbers are written as the
// shortest decimal that round-trips.

#ifndef ORTHSVD_HARNESS_INSTANCE_IO_HPP_
#define ORTHSVD_HARNESS_INSTANCE_IO_HPP_

#include <string>

#include "orthsvd/core.hpp"

namespace orthsvd {

RankOneUpdatedOrthogonal<double> ParseInstance(
    const std::string& text, double orthogonality_tol = kDefaultOrthogonalityTol);

RankOneUpdatedOrthogonal<double> LoadInstance(
    const std::string& path, double orthogonality_tol = kDefaultOrthogonalityTol);

/// Permutation matrices are written in the compact "permutation:" form.
std::string SerializeInstance(const RankOneUpdatedOrthogonal<double>& m);

}  // namespace orthsvd

#endif  // ORTHSVD_HARNESS_INSTANCE_IO_HPP_
