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
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "graphon/function.hpp"

namespace graphon {

/// Whether a constructor enforces the [-1,1] range (or the sinusoidal
/// coefficient budget). Algebra results are built unchecked.
enum class Validation { kChecked, kUnchecked };

/// Graphon constant on the blocks P_i × P_j of the uniform partition P^N.
class StepGraphon {
 public:
  explicit StepGraphon(Eigen::MatrixXd coeffs, Validation validation = Validation::kChecked);

  static StepGraphon zero(std::size_t n);
  static StepGraphon constant(std::size_t n, double value);

  std::size_t size() const { return static_cast<std::size_t>(coeffs_.rows()); }
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }
  double operator()(double x, double y) const;

  /// Entries lie in [-1,1] (graphon set Ĝ¹).
  bool in_unit_range() const;
  /// Entries lie in [0,1] (graphon set Ĝ⁰).
  bool nonnegative_unit() const;

  StepGraphon refined(std::size_t n) const;

 private:
  Eigen::MatrixXd coeffs_;
};

/// a0 + sum_k b_k cos(2πk(φ − θ)).
class SinusoidalGraphon {
 public:
  SinusoidalGraphon(double a0, Eigen::VectorXd b, Validation validation = Validation::kChecked);

  double a0() const { return a0_; }
  const Eigen::VectorXd& b() const { return b_; }
  std::size_t harmonics() const { return static_cast<std::size_t>(b_.size()); }
  double operator()(double phi, double theta) const;

 private:
  double a0_;
  Eigen::VectorXd b_;
};

/// Finite trigonometric kernel sum_{a,b} C_ab φ_a(x) φ_b(y) over the
/// interleaved basis [1, cos1, sin1, ...] of order n, C symmetric. This is the
/// family of Fourier-approximated spectral sums; sinusoidal graphons embed
/// with a diagonal core.
class FourierGraphon {
 public:
  FourierGraphon(std::size_t order, Eigen::MatrixXd core);

  static FourierGraphon zero(std::size_t order);
  static FourierGraphon from_sinusoidal(const SinusoidalGraphon& g);

  std::size_t order() const { return order_; }
  const Eigen::MatrixXd& core() const { return core_; }
  Eigen::MatrixXd core_padded(std::size_t order) const;
  double operator()(double x, double y) const;

 private:
  std::size_t order_;
  Eigen::MatrixXd core_;
};

/// Kernel samples at the block midpoints of an M×M grid. Interpreted as the
/// step function of those samples; a quadrature oracle only.
class SampledGraphon {
 public:
  explicit SampledGraphon(Eigen::MatrixXd grid);

  static SampledGraphon from_kernel(const std::function<double(double, double)>& kernel,
                                    std::size_t resolution);

  std::size_t resolution() const { return static_cast<std::size_t>(grid_.rows()); }
  const Eigen::MatrixXd& grid() const { return grid_; }
  double operator()(double x, double y) const;

 private:
  Eigen::MatrixXd grid_;
};

using Graphon = std::variant<StepGraphon, SinusoidalGraphon, FourierGraphon, SampledGraphon>;

std::string family_name(const Graphon& g);
double evaluate(const Graphon& g, double x, double y);
SampledGraphon sample_on_grid(const Graphon& g, std::size_t resolution);

/// [g f](x) = ∫ g(x,y) f(y) dy.
Function apply(const Graphon& g, const Function& f);

/// [g h](x,y) = ∫ g(x,z) h(z,y) dz.
Graphon compose(const Graphon& g, const Graphon& h);

/// g^m for m >= 1. m = 0 would be the identity operator, which is not a
/// graphon, and is rejected.
Graphon power(const Graphon& g, int m);

/// Bounded operator identity·I + kernel.
struct BoundedOperator {
  double identity = 1.0;
  Graphon kernel;
};

Function apply(const BoundedOperator& op, const Function& f);
BoundedOperator compose(const BoundedOperator& a, const BoundedOperator& b);

/// e^{g t} = I + U_t.
BoundedOperator exponential(const Graphon& g, double t);

double l2_norm(const Graphon& g);
double l2_distance(const Graphon& g, const Graphon& h);
/// ∫∫ g h. Sampled graphons take part as step functions of their samples.
double kernel_inner(const Graphon& g, const Graphon& h);

double operator_norm(const Graphon& g);

struct CutNorm {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

/// Cut norm of a step graphon: exact by enumeration for N <= exact_limit,
/// otherwise a bracket from a local-search lower bound and the operator-norm
/// sandwich ‖g‖op²/8 <= ‖g‖□ <= ‖g‖op.
CutNorm cut_norm(const Graphon& g, std::size_t exact_limit = 20);

}  // namespace graphon
