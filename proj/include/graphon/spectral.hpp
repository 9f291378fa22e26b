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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "graphon/function.hpp"
#include "graphon/graphon.hpp"

namespace graphon {

struct Eigenpair {
  double value;
  Function function;  // unit L2 norm
};

/// Non-zero eigenpairs of a graphon operator ordered by descending |λ|
/// (positive first on ties).
struct SpectralDecomposition {
  std::vector<Eigenpair> pairs;
  Graphon source;
  double source_l2_squared = 0.0;

  std::size_t rank() const { return pairs.size(); }
  std::vector<double> eigenvalues() const;
  /// μ_1 >= μ_2 >= ... >= 0
  std::vector<double> nonnegative_sequence() const;
  /// μ'_1 <= μ'_2 <= ... <= 0
  std::vector<double> nonpositive_sequence() const;
};

/// Step and trigonometric (sinusoidal, Fourier) graphons only; sampled grids
/// are oracles and are rejected.
SpectralDecomposition decompose(const Graphon& g);

/// Rank-m spectral sum Σ_{ℓ<=m} λ_ℓ f_ℓ(x) f_ℓ(y) in the source's family.
Graphon truncate(const SpectralDecomposition& d, std::size_t m);

/// ‖A − A_m‖₂ = sqrt(‖A‖₂² − Σ_{ℓ<=m} λ_ℓ²).
double truncation_error(const SpectralDecomposition& d, std::size_t m);

/// Fourier series of f up to `order` harmonics, from exact block integrals.
TrigSeries fourier_project(const Function& f, std::size_t order);

struct FourierApproximation {
  FourierGraphon kernel;                  // A_pm
  std::vector<TrigSeries> eigenfunctions; // p_ℓ
  double truncation_term = 0.0;           // ‖A − A_m‖₂
  double fourier_term = 0.0;              // ‖A_m − A_pm‖₂
  double bound = 0.0;                     // sum of the two
};

FourierApproximation fourier_truncate(const SpectralDecomposition& d, std::size_t m, std::size_t order);

struct OperatorFunction {
  enum class Kind { kPower, kExponential };
  Kind kind = Kind::kPower;
  int exponent = 1;

  static OperatorFunction power(int n) { return {Kind::kPower, n}; }
  static OperatorFunction exponential() { return {Kind::kExponential, 1}; }
};

/// n·cⁿ·δ for powers (L2 norm), c·e^c·δ for the exponential (operator norm).
double operator_function_bound(const OperatorFunction& f, double c, double delta);

struct OperatorFunctionBound {
  double c = 0.0;      // max(‖g‖₂, ‖g_pm‖₂, 1)
  double delta = 0.0;  // ‖g − g_pm‖₂
  double bound = 0.0;
};

OperatorFunctionBound operator_function_error(const Graphon& g, const Graphon& g_pm, const OperatorFunction& f);

/// ‖gⁿ − g_pmⁿ‖₂ or ‖e^g − e^{g_pm}‖op measured on midpoint samples at the
/// given resolution.
double measured_operator_function_discrepancy(const Graphon& g, const Graphon& g_pm, const OperatorFunction& f,
                                              std::size_t resolution = 512);

using AdjacencySampler = std::function<Eigen::MatrixXd(std::size_t n, std::uint64_t seed)>;

struct ConvergenceRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> sampled;  // k largest μ_i(A_n)/n, then k smallest μ'_i(A_n)/n
  std::vector<double> limit;    // matching sequences of the limit graphon
  double error = 0.0;           // max abs difference
};

std::vector<ConvergenceRow> eigenvalue_convergence_experiment(const AdjacencySampler& sampler,
                                                              const SpectralDecomposition& limit,
                                                              std::span<const std::size_t> sizes,
                                                              std::span<const std::uint64_t> seeds, std::size_t k);

}  // namespace graphon
