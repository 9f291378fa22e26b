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

#include <cstddef>
#include <variant>

#include <Eigen/Core>

namespace graphon {

/// Index of the block of the uniform partition P^n that contains x. The last
/// block is closed, so x == 1 maps to n - 1.
std::size_t block_index(std::size_t n, double x);

/// Function on [0,1] that is constant on each block of a uniform partition.
class PiecewiseConstantFunction {
 public:
  explicit PiecewiseConstantFunction(Eigen::VectorXd values);

  static PiecewiseConstantFunction constant(std::size_t n, double value);
  static PiecewiseConstantFunction indicator(std::size_t n, std::size_t block);

  std::size_t partition_size() const { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }

  double operator()(double x) const { return values_[block_index(partition_size(), x)]; }
  double l2_norm() const;

  /// Same function expressed on a finer partition of size `n` (n must be a
  /// multiple of the current size).
  PiecewiseConstantFunction refined(std::size_t n) const;

 private:
  Eigen::VectorXd values_;
};

enum class TrigKind { kConstant, kCos, kSin };

/// Real trigonometric polynomial
///   f(x) = c0 + sum_{k=1..n} (a_k cos 2πkx + b_k sin 2πkx).
///
/// Coefficient vectors use the interleaved basis [1, cos1, sin1, cos2, sin2,
/// ...] of length 2n+1 whenever a flat vector is needed.
class TrigSeries {
 public:
  TrigSeries() : TrigSeries(0.0, Eigen::VectorXd(), Eigen::VectorXd()) {}
  TrigSeries(double constant, Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs);

  /// Unit-norm basis element: 1, √2 cos 2πk·, or √2 sin 2πk·.
  static TrigSeries mode(TrigKind kind, std::size_t harmonic);
  static TrigSeries from_basis(const Eigen::VectorXd& coeffs);

  std::size_t order() const { return static_cast<std::size_t>(cos_.size()); }
  double constant() const { return constant_; }
  const Eigen::VectorXd& cos_coeffs() const { return cos_; }
  const Eigen::VectorXd& sin_coeffs() const { return sin_; }

  /// Flat coefficients padded (or truncated) to `order` harmonics.
  Eigen::VectorXd basis_coefficients(std::size_t order) const;
  Eigen::VectorXd basis_coefficients() const { return basis_coefficients(order()); }

  /// Complex harmonic coefficients c_k, k = -n..n, such that
  /// f(x) = sum c_k e^{2πikx}. Index k + n holds c_k.
  Eigen::VectorXcd complex_coefficients() const;

  TrigSeries truncated(std::size_t order) const;

  double operator()(double x) const;
  double l2_norm() const;

 private:
  double constant_;
  Eigen::VectorXd cos_;
  Eigen::VectorXd sin_;
};

/// Diagonal of the Gram matrix of the interleaved trigonometric basis:
/// <1,1> = 1, <cos,cos> = <sin,sin> = 1/2.
Eigen::VectorXd trig_gram_diagonal(std::size_t order);

/// Integrals of each trigonometric basis function over each block of P^n;
/// rows follow the interleaved basis, columns the blocks.
Eigen::MatrixXd trig_block_integrals(std::size_t order, std::size_t n);

/// Overlap lengths |P_i ∩ Q_j| between the uniform partitions of sizes n and m.
Eigen::MatrixXd partition_overlap(std::size_t n, std::size_t m);

using Function = std::variant<PiecewiseConstantFunction, TrigSeries>;

double evaluate(const Function& f, double x);
double inner(const Function& f, const Function& g);
double l2_norm(const Function& f);

/// a·f + b·g. Piecewise-constant operands on different partitions are lifted
/// to their common refinement; mixing families is rejected.
Function lincomb(double a, const Function& f, double b, const Function& g);
Function scaled(double a, const Function& f);
Function zero_like(const Function& f);
bool all_finite(const Function& f);

}  // namespace graphon
