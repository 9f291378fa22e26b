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
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "graphon/function.hpp"
#include "graphon/graphon.hpp"
#include "graphon/linalg.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

using WeightSchedule = std::function<double(double t)>;

/// Meta-population SIS model on a contact network
///   ṗⁱ = −α pⁱ + η Σⱼ a_ij pʲ (1 − pⁱ) + β₀ uⁱ
/// with the quadratic cost Σᵢ ∫ q_t (pⁱ)² + (uⁱ)² + (uⁱ − (1/N)Σⱼ a_ij uʲ)² + q_T (p_Tⁱ)².
class EpidemicModel {
 public:
  EpidemicModel(Eigen::MatrixXd contact, double alpha, double eta, double beta0, double q_t, double q_T,
                double horizon);

  std::size_t size() const { return static_cast<std::size_t>(contact_.rows()); }
  const Eigen::MatrixXd& contact() const { return contact_; }
  StepGraphon contact_graphon() const { return StepGraphon(contact_, Validation::kUnchecked); }

  double alpha() const { return alpha_; }
  double eta() const { return eta_; }
  /// η̄ = ηN
  double eta_bar() const { return eta_ * static_cast<double>(size()); }
  void set_eta(double eta);
  void set_eta_bar(double eta_bar);

  double beta0() const { return beta0_; }
  double q_T() const { return q_T_; }
  double horizon() const { return horizon_; }

  /// Running state weight; constant unless replaced.
  double q_t(double t) const { return q_t_(t); }
  const WeightSchedule& state_weight() const { return q_t_; }
  void set_state_weight(WeightSchedule q_t);

  /// Non-zero eigenpairs (μ_ℓ, v_ℓ) of the unscaled adjacency.
  const linalg::SymmetricEigen& spectrum() const { return spectrum_; }

 private:
  Eigen::MatrixXd contact_;
  double alpha_;
  double eta_;
  double beta0_;
  WeightSchedule q_t_;
  double q_T_;
  double horizon_;
  linalg::SymmetricEigen spectrum_;
};

struct StabilityVerdict {
  double lambda_max = 0.0;
  bool stable = false;  // α >= η λmax
};

StabilityVerdict stability_threshold(const EpidemicModel& m);

struct RiccatiParams {
  double alpha0 = 0.0;
  double eta_bar = 0.0;
  double beta0 = 1.0;
  WeightSchedule q_t;
  double q_T = 0.0;
  double horizon = 1.0;
  std::size_t steps = 10000;
  double tolerance = 1e-7;  // step-halving acceptance threshold
};

RiccatiParams riccati_params(const EpidemicModel& m);

/// Scalar Riccati trajectories on a uniform grid. Direction ℓ solves
///   −Π̇ = 2(−α₀ + η̄λ_ℓ)Π − β₀²Π²/r_ℓ + q_t,  r_ℓ = λ_ℓ² − 2λ_ℓ + 2,
/// and the auxiliary trajectory Π̆ is the same equation at λ = 0.
struct RiccatiSolution {
  std::vector<double> times;
  std::vector<double> breve;
  std::vector<double> breve_rate;               // dΠ̆/dt at the nodes
  std::vector<std::vector<double>> pi;          // [ℓ][k]
  std::vector<std::vector<double>> pi_rate;
  std::vector<double> eigenvalues;              // λ_ℓ
  std::vector<double> input_weights;            // r_ℓ
  double beta0 = 0.0;
  double error_estimate = 0.0;                  // max |Π_h − Π_{h/2}| on the grid

  std::size_t directions() const { return pi.size(); }
  double breve_at(double t) const;
  double pi_at(std::size_t l, double t) const;
};

/// Backward RK4 for the given eigenvalues, directions integrated concurrently.
RiccatiSolution solve_riccati(const std::vector<double>& eigenvalues, const RiccatiParams& params);

/// λ_ℓ = μ_ℓ/N from the adjacency.
RiccatiSolution solve_riccati_finite(const EpidemicModel& m);
RiccatiSolution solve_riccati_finite(const EpidemicModel& m, const RiccatiParams& params);

/// λ_ℓ from the graphon decomposition.
RiccatiSolution solve_riccati_graphon(const SpectralDecomposition& d, const RiccatiParams& params);

/// u = −[(β₀/2)Π̆ p + Σ_ℓ (β₀Π^ℓ/r_ℓ − β₀Π̆/2)(pᵀv_ℓ)v_ℓ]
Eigen::VectorXd optimal_control_finite(const EpidemicModel& m, const RiccatiSolution& sol, const Eigen::VectorXd& p,
                                       double t);

/// u = −[(β₀/2)Π̆ p + Σ_ℓ (β₀Π^ℓ/r_ℓ − β₀Π̆/2)<p, f_ℓ>f_ℓ]
Function optimal_control_graphon(const SpectralDecomposition& d, const RiccatiSolution& sol, const Function& p,
                                 double t);

using FeedbackLaw = std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& p)>;

FeedbackLaw spectral_feedback(const EpidemicModel& m, const RiccatiSolution& sol);

struct EpidemicTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> controls;  // evaluated at the grid nodes
  bool left_validity_range = false;       // some state left [−0.1, 1.1]
};

/// RK4 with ceil(T/step) uniform steps. An empty law means u = 0.
EpidemicTrajectory simulate_nonlinear(const EpidemicModel& m, const Eigen::VectorXd& p0, const FeedbackLaw& law,
                                      double step);
/// ṗ = −α p + ηA p + β₀u
EpidemicTrajectory simulate_linearized(const EpidemicModel& m, const Eigen::VectorXd& p0, const FeedbackLaw& law,
                                       double step);

/// Trapezoidal running cost plus the terminal term.
double closed_loop_cost(const EpidemicModel& m, const EpidemicTrajectory& traj);

/// Eigenstate pᵀv_ℓ v_ℓ and eigencontrol uᵀv_ℓ v_ℓ are stored through their
/// coefficients; the auxiliary parts are the residuals.
struct ProjectionReport {
  std::vector<double> times;
  Eigen::MatrixXd directions;                        // columns v_ℓ
  std::vector<Eigen::VectorXd> state_coefficients;   // [k] -> (pᵀv_ℓ)_ℓ
  std::vector<Eigen::VectorXd> control_coefficients;
  std::vector<Eigen::VectorXd> auxiliary_states;
  std::vector<Eigen::VectorXd> auxiliary_controls;

  Eigen::VectorXd eigenstate(std::size_t l, std::size_t k) const;
  Eigen::VectorXd eigencontrol(std::size_t l, std::size_t k) const;
  /// Σ_ℓ eigenstates + auxiliary state at time index k.
  Eigen::VectorXd reconstruct_state(std::size_t k) const;
  Eigen::VectorXd reconstruct_control(std::size_t k) const;
};

ProjectionReport project_trajectories(const EpidemicTrajectory& traj, const linalg::SymmetricEigen& spectrum);

}  // namespace graphon
