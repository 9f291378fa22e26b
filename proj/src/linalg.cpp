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

#include "graphon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "graphon/error.hpp"

namespace graphon::linalg {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kSignTolerance = 1e-12;

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kSignTolerance) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

}  // namespace

SymmetricEigen ordered_eigen(const Eigen::MatrixXd& symmetric) {
  require(symmetric.rows() == symmetric.cols(), "eigendecomposition needs a square matrix");
  const Eigen::Index n = symmetric.rows();
  if (n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) fail(ErrorCode::kNumeric, "symmetric eigensolver did not converge");

  Eigen::MatrixXd vecs = solver.eigenvectors();
  const Eigen::VectorXd& vals = solver.eigenvalues();
  for (Eigen::Index j = 0; j < n; ++j) fix_sign(vecs.col(j));

  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(vals[a]), mb = std::abs(vals[b]);
    if (std::abs(ma - mb) > kTieTolerance * scale) return ma > mb;
    const bool pa = vals[a] >= 0, pb = vals[b] >= 0;
    if (pa != pb) return pa;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(vecs(i, a) - vecs(i, b)) > kSignTolerance) return vecs(i, a) > vecs(i, b);
    }
    return false;
  });

  SymmetricEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = vals[order[static_cast<std::size_t>(j)]];
    out.vectors.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

SymmetricEigen nonzero_part(const SymmetricEigen& eig, double relative_threshold) {
  if (eig.values.size() == 0) return eig;
  const double cutoff = relative_threshold * eig.values.cwiseAbs().maxCoeff();
  Eigen::Index keep = 0;
  while (keep < eig.values.size() && std::abs(eig.values[keep]) > cutoff) ++keep;
  return {eig.values.head(keep), eig.vectors.leftCols(keep)};
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols(), "matrix exponential needs a square matrix");
  Eigen::MatrixXd out = m.exp();
  if (!out.allFinite()) fail(ErrorCode::kNumeric, "matrix exponential overflowed");
  return out;
}

bool is_symmetric(const Eigen::MatrixXd& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tolerance) return false;
    }
  }
  return true;
}

}  // namespace graphon::linalg
