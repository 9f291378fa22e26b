// Copyright 2026 The graphonctl Authors
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

#pragma once

#include <Eigen/Core>

namespace graphon::linalg {

/// Eigenpairs of a real symmetric matrix with deterministic ordering:
/// descending |value|, positive before negative on ties, then eigenvectors
/// compared lexicographically. Each eigenvector is unit-length with its
/// first non-negligible entry positive.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // columns
};

SymmetricEigen ordered_eigen(const Eigen::MatrixXd& symmetric);

/// Drops eigenpairs with |value| <= relative_threshold · max|value|.
SymmetricEigen nonzero_part(const SymmetricEigen& eig, double relative_threshold = 1e-12);

/// Dense matrix exponential (scaling and squaring with Padé approximants).
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

bool is_symmetric(const Eigen::MatrixXd& m, double tolerance = 0.0);

}  // namespace graphon::linalg
