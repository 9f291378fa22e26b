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
#include <vector>

#include <Eigen/Core>

#include "graphon/function.hpp"
#include "graphon/graphon.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

/// Self-adjoint operator s·I + Σ_ℓ c_ℓ f_ℓ f_ℓᵀ over a fixed orthonormal set
/// of directions, i.e. z ↦ s z + Σ c_ℓ <z, f_ℓ> f_ℓ.
struct SpectralOperator {
  double scalar = 0.0;
  std::vector<double> coeffs;
  std::vector<Function> directions;

  Function apply(const Function& z) const;

  /// Eigenvalue on f_ℓ.
  double eigenvalue(std::size_t l) const { return scalar + coeffs[l]; }
  /// min(s, s + min c): the bottom of the spectrum (s is attained on the
  /// orthogonal complement of the directions).
  double spectral_lower_bound() const;

  /// Product with another operator over the same directions.
  SpectralOperator then(const SpectralOperator& other) const;

  /// Matrix form on piecewise-constant functions of n blocks (directions
  /// must be piecewise-constant on that partition).
  Eigen::MatrixXd matrix(std::size_t n) const;
};

using GramianOperator = SpectralOperator;

/// ẋ = (α₀I + A)x + (β₀I + Σ_{k=1..d} β_k A^k)u on [0, T].
class GraphonSystem {
 public:
  GraphonSystem(double alpha0, double beta0, Graphon a, std::vector<double> input_poly, double horizon);

  double alpha0() const { return alpha0_; }
  double beta0() const { return beta0_; }
  const Graphon& graphon() const { return a_; }
  const std::vector<double>& input_poly() const { return input_poly_; }
  double horizon() const { return horizon_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }

  /// η_ℓ = Σ_{k=0..d} β_k λ_ℓ^k with β_0 included.
  const std::vector<double>& eta() const { return eta_; }

  /// e^{𝔸t} in spectral form.
  SpectralOperator drift_exponential(double t) const;
  /// 𝔹 in spectral form.
  SpectralOperator input_operator() const;

  /// 𝔸x and 𝔹u evaluated through the graphon operator itself.
  Function drift(const Function& x) const;
  Function input(const Function& u) const;

 private:
  double alpha0_;
  double beta0_;
  Graphon a_;
  std::vector<double> input_poly_;
  double horizon_;
  SpectralDecomposition spectrum_;
  std::vector<double> eta_;
};

/// ∫₀ᵀ e^{rate·t} dt, with the rate → 0 limit T.
double exp_integral(double rate, double horizon);

struct Trajectory {
  std::vector<double> times;
  std::vector<Function> states;
};

using ControlSignal = std::function<Function(double t)>;

/// RK4 on a uniform grid of ceil(T/step) intervals ending exactly at T.
/// An empty control signal means u ≡ 0.
Trajectory simulate(const GraphonSystem& sys, const Function& x0, const ControlSignal& u, double step);

GramianOperator gramian(const GraphonSystem& sys);
GramianOperator gramian_inverse(const GraphonSystem& sys);

struct MinEnergyControl {
  ControlSignal signal;  // u_t = −𝔹 e^{𝔸(T−t)} W_T⁻¹ e^{𝔸T} x₀
  double energy = 0.0;   // <e^{𝔸T}x₀, W_T⁻¹ e^{𝔸T}x₀>
};

MinEnergyControl min_energy_control(const GraphonSystem& sys, const Function& x0);

/// ∫₀ᵀ ‖u_t‖₂² dt by composite Simpson with `intervals` (rounded up to even).
double control_energy(const ControlSignal& u, double horizon, std::size_t intervals);

struct ControllabilityVerdict {
  double spectral_lower_bound = 0.0;
  bool beta0_nonzero = false;
  bool exactly_controllable = false;
};

ControllabilityVerdict exact_controllability_check(const GraphonSystem& sys, double tolerance = 1e-12);

/// Gramian of a step system in matrix form by composite Simpson integration
/// of e^{𝔸t}𝔹𝔹ᵀe^{𝔸ᵀt}, independent of the spectral closed form.
Eigen::MatrixXd gramian_quadrature_matrix(const GraphonSystem& sys, std::size_t intervals);

}  // namespace graphon
