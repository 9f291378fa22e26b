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

#include "graphon/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphon/error.hpp"
#include "graphon/parallel.hpp"

namespace graphon {

namespace {

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kValidityLow = -0.1;
constexpr double kValidityHigh = 1.1;
constexpr std::size_t kMaxRiccatiSteps = std::size_t{1} << 22;

WeightSchedule constant_weight(double q) {
  return [q](double) { return q; };
}

double input_weight(double lambda) { return lambda * lambda - 2.0 * lambda + 2.0; }

struct ScalarRiccati {
  double linear;     // 2(−α₀ + η̄λ)
  double quadratic;  // β₀²/r
  const WeightSchedule* q;

  // F(t, Π) with −Π̇ = F
  double operator()(double t, double pi) const { return linear * pi - quadratic * pi * pi + (*q)(t); }
};

struct ScalarPath {
  std::vector<double> values;
  std::vector<double> rates;
};

// Backward RK4 from Π_T over `steps` uniform intervals; values in ascending
// time order.
ScalarPath integrate_backward(const ScalarRiccati& f, double terminal, double horizon, std::size_t steps) {
  const double h = horizon / static_cast<double>(steps);
  ScalarPath path{std::vector<double>(steps + 1), std::vector<double>(steps + 1)};
  double pi = terminal;
  path.values[steps] = pi;
  for (std::size_t k = steps; k > 0; --k) {
    const double t = static_cast<double>(k) * h;
    const double k1 = f(t, pi);
    const double k2 = f(t - 0.5 * h, pi + 0.5 * h * k1);
    const double k3 = f(t - 0.5 * h, pi + 0.5 * h * k2);
    const double k4 = f(t - h, pi + h * k3);
    pi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(pi)) {
      path.values.clear();
      return path;
    }
    path.values[k - 1] = pi;
  }
  for (std::size_t k = 0; k <= steps; ++k) {
    path.rates[k] = -f(static_cast<double>(k) * h, path.values[k]);
  }
  return path;
}

double hermite(const std::vector<double>& times, const std::vector<double>& values, const std::vector<double>& rates,
               double t) {
  const std::size_t steps = times.size() - 1;
  const double horizon = times.back();
  require(t >= -1e-12 && t <= horizon * (1.0 + 1e-12) + 1e-12, "time outside the Riccati grid");
  const double h = horizon / static_cast<double>(steps);
  auto k = static_cast<std::size_t>(std::clamp(t / h, 0.0, static_cast<double>(steps)));
  if (k >= steps) k = steps - 1;
  const double s = std::clamp((t - times[k]) / h, 0.0, 1.0);
  if (s == 0.0) return values[k];
  if (s == 1.0) return values[k + 1];
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * values[k] + (s3 - 2 * s2 + s) * h * rates[k] + (-2 * s3 + 3 * s2) * values[k + 1] +
         (s3 - s2) * h * rates[k + 1];
}

std::string direction_name(std::size_t index, std::size_t count, double lambda) {
  if (index == count) return "auxiliary direction";
  return "eigendirection " + std::to_string(index + 1) + " (lambda = " + std::to_string(lambda) + ")";
}

}  // namespace

EpidemicModel::EpidemicModel(Eigen::MatrixXd contact, double alpha, double eta, double beta0, double q_t, double q_T,
                             double horizon)
    : contact_(std::move(contact)),
      alpha_(alpha),
      eta_(eta),
      beta0_(beta0),
      q_t_(constant_weight(q_t)),
      q_T_(q_T),
      horizon_(horizon) {
  require(contact_.rows() > 0 && contact_.rows() == contact_.cols(), "contact matrix must be square and non-empty");
  require(contact_.allFinite(), "contact matrix must be finite");
  require(linalg::is_symmetric(contact_), "contact matrix must be symmetric");
  require((contact_.array() >= 0.0).all(), "contact weights must be nonnegative");
  require(std::isfinite(alpha_) && std::isfinite(eta_) && std::isfinite(beta0_), "model rates must be finite");
  require(q_t >= 0.0 && q_T >= 0.0, "cost weights must be nonnegative");
  require(horizon_ > 0.0 && std::isfinite(horizon_), "horizon must be positive");
  spectrum_ = linalg::nonzero_part(linalg::ordered_eigen(contact_), kZeroEigenvalue);
}

void EpidemicModel::set_eta(double eta) {
  require(std::isfinite(eta), "eta must be finite");
  eta_ = eta;
}

void EpidemicModel::set_eta_bar(double eta_bar) { set_eta(eta_bar / static_cast<double>(size())); }

void EpidemicModel::set_state_weight(WeightSchedule q_t) {
  require(static_cast<bool>(q_t), "state weight schedule must be callable");
  q_t_ = std::move(q_t);
}

StabilityVerdict stability_threshold(const EpidemicModel& m) {
  StabilityVerdict v;
  const auto eig = linalg::ordered_eigen(m.contact());
  v.lambda_max = eig.values.maxCoeff();
  v.stable = m.alpha() >= m.eta() * v.lambda_max;
  return v;
}

RiccatiParams riccati_params(const EpidemicModel& m) {
  RiccatiParams p;
  p.alpha0 = m.alpha();
  p.eta_bar = m.eta_bar();
  p.beta0 = m.beta0();
  p.q_t = m.state_weight();
  p.q_T = m.q_T();
  p.horizon = m.horizon();
  return p;
}

double RiccatiSolution::breve_at(double t) const { return hermite(times, breve, breve_rate, t); }

double RiccatiSolution::pi_at(std::size_t l, double t) const { return hermite(times, pi[l], pi_rate[l], t); }

RiccatiSolution solve_riccati(const std::vector<double>& eigenvalues, const RiccatiParams& params) {
  require(params.horizon > 0.0 && std::isfinite(params.horizon), "horizon must be positive");
  require(params.steps >= 1, "Riccati integration needs at least one step");
  require(params.q_T >= 0.0, "terminal weight must be nonnegative");
  const WeightSchedule q = params.q_t ? params.q_t : constant_weight(0.0);

  const std::size_t count = eigenvalues.size();
  std::vector<ScalarRiccati> equations;
  equations.reserve(count + 1);
  for (const double lambda : eigenvalues) {
    equations.push_back({2.0 * (-params.alpha0 + params.eta_bar * lambda),
                         params.beta0 * params.beta0 / input_weight(lambda), &q});
  }
  equations.push_back({-2.0 * params.alpha0, params.beta0 * params.beta0 / 2.0, &q});

  std::size_t steps = params.steps;
  std::vector<ScalarPath> coarse(count + 1);
  double estimate = 0.0;
  for (;;) {
    std::vector<double> errors(count + 1, 0.0);
    parallel_for(count + 1, [&](std::size_t l) {
      const double lambda = l < count ? eigenvalues[l] : 0.0;
      coarse[l] = integrate_backward(equations[l], params.q_T, params.horizon, steps);
      const ScalarPath fine = integrate_backward(equations[l], params.q_T, params.horizon, 2 * steps);
      if (coarse[l].values.empty() || fine.values.empty()) {
        fail(ErrorCode::kNumeric, "Riccati solution blew up before t = 0 in " + direction_name(l, count, lambda));
      }
      double err = 0.0;
      for (std::size_t k = 0; k <= steps; ++k) err = std::max(err, std::abs(coarse[l].values[k] - fine.values[2 * k]));
      errors[l] = err;
    });
    estimate = *std::max_element(errors.begin(), errors.end());
    if (estimate < params.tolerance) break;
    if (2 * steps > kMaxRiccatiSteps) {
      fail(ErrorCode::kNumeric, "Riccati integration did not meet the step-halving tolerance");
    }
    steps *= 2;
  }

  RiccatiSolution sol;
  sol.times.resize(steps + 1);
  const double h = params.horizon / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) sol.times[k] = static_cast<double>(k) * h;
  sol.times[steps] = params.horizon;
  sol.breve = std::move(coarse[count].values);
  sol.breve_rate = std::move(coarse[count].rates);
  for (std::size_t l = 0; l < count; ++l) {
    sol.pi.push_back(std::move(coarse[l].values));
    sol.pi_rate.push_back(std::move(coarse[l].rates));
    sol.input_weights.push_back(input_weight(eigenvalues[l]));
  }
  sol.eigenvalues = eigenvalues;
  sol.beta0 = params.beta0;
  sol.error_estimate = estimate;
  return sol;
}

RiccatiSolution solve_riccati_finite(const EpidemicModel& m) { return solve_riccati_finite(m, riccati_params(m)); }

RiccatiSolution solve_riccati_finite(const EpidemicModel& m, const RiccatiParams& params) {
  const auto n = static_cast<double>(m.size());
  std::vector<double> lambdas;
  for (Eigen::Index j = 0; j < m.spectrum().values.size(); ++j) lambdas.push_back(m.spectrum().values[j] / n);
  return solve_riccati(lambdas, params);
}

RiccatiSolution solve_riccati_graphon(const SpectralDecomposition& d, const RiccatiParams& params) {
  return solve_riccati(d.eigenvalues(), params);
}

Eigen::VectorXd optimal_control_finite(const EpidemicModel& m, const RiccatiSolution& sol, const Eigen::VectorXd& p,
                                       double t) {
  const auto& v = m.spectrum().vectors;
  require(p.size() == static_cast<Eigen::Index>(m.size()), "state dimension does not match the network");
  require(static_cast<Eigen::Index>(sol.directions()) == v.cols(),
          "Riccati solution and network spectrum have different ranks");
  const double breve = sol.breve_at(t);
  Eigen::VectorXd u = (0.5 * sol.beta0 * breve) * p;
  for (std::size_t l = 0; l < sol.directions(); ++l) {
    const auto col = v.col(static_cast<Eigen::Index>(l));
    const double gain = sol.beta0 * sol.pi_at(l, t) / sol.input_weights[l] - 0.5 * sol.beta0 * breve;
    u.noalias() += (gain * col.dot(p)) * col;
  }
  return -u;
}

Function optimal_control_graphon(const SpectralDecomposition& d, const RiccatiSolution& sol, const Function& p,
                                 double t) {
  require(d.rank() == sol.directions(), "Riccati solution and decomposition have different ranks");
  const double breve = sol.breve_at(t);
  Function u = scaled(0.5 * sol.beta0 * breve, p);
  for (std::size_t l = 0; l < sol.directions(); ++l) {
    const double gain = sol.beta0 * sol.pi_at(l, t) / sol.input_weights[l] - 0.5 * sol.beta0 * breve;
    u = lincomb(1.0, u, gain * inner(p, d.pairs[l].function), d.pairs[l].function);
  }
  return scaled(-1.0, u);
}

FeedbackLaw spectral_feedback(const EpidemicModel& m, const RiccatiSolution& sol) {
  return [m, sol](double t, const Eigen::VectorXd& p) { return optimal_control_finite(m, sol, p, t); };
}

namespace {

template <typename Drift>
EpidemicTrajectory integrate(const EpidemicModel& m, const Eigen::VectorXd& p0, const FeedbackLaw& law, double step,
                             Drift drift) {
  require(p0.size() == static_cast<Eigen::Index>(m.size()), "initial state dimension does not match the network");
  require(step > 0.0, "integration step must be positive");
  const double horizon = m.horizon();
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / step - 1e-9)));
  const double h = horizon / static_cast<double>(n);
  const double b0 = m.beta0();

  auto control = [&](double t, const Eigen::VectorXd& p) -> Eigen::VectorXd {
    if (!law) return Eigen::VectorXd::Zero(p.size());
    return law(t, p);
  };
  auto rhs = [&](double t, const Eigen::VectorXd& p) -> Eigen::VectorXd {
    Eigen::VectorXd dp = drift(p);
    if (law) dp += b0 * law(t, p);
    return dp;
  };
  auto outside = [](const Eigen::VectorXd& p) {
    return (p.array() < kValidityLow).any() || (p.array() > kValidityHigh).any();
  };

  EpidemicTrajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.controls.reserve(n + 1);
  Eigen::VectorXd p = p0;
  traj.times.push_back(0.0);
  traj.states.push_back(p);
  traj.controls.push_back(control(0.0, p));
  traj.left_validity_range = outside(p);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * h;
    const Eigen::VectorXd k1 = rhs(t, p);
    const Eigen::VectorXd k2 = rhs(t + 0.5 * h, p + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(t + 0.5 * h, p + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(t + h, p + h * k3);
    p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!p.allFinite()) fail(ErrorCode::kNumeric, "epidemic state became non-finite at t = " + std::to_string(t + h));
    const double t_next = k + 1 == n ? horizon : t + h;
    traj.times.push_back(t_next);
    traj.states.push_back(p);
    traj.controls.push_back(control(t_next, p));
    traj.left_validity_range = traj.left_validity_range || outside(p);
  }
  return traj;
}

}  // namespace

EpidemicTrajectory simulate_nonlinear(const EpidemicModel& m, const Eigen::VectorXd& p0, const FeedbackLaw& law,
                                      double step) {
  require((p0.array() >= 0.0).all() && (p0.array() <= 1.0).all(), "initial infected fractions must lie in [0,1]");
  const Eigen::MatrixXd& a = m.contact();
  const double alpha = m.alpha();
  const double eta = m.eta();
  return integrate(m, p0, law, step, [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
    return -alpha * p + eta * (a * p).cwiseProduct(Eigen::VectorXd::Ones(p.size()) - p);
  });
}

EpidemicTrajectory simulate_linearized(const EpidemicModel& m, const Eigen::VectorXd& p0, const FeedbackLaw& law,
                                       double step) {
  const Eigen::MatrixXd a = m.eta() * m.contact();
  const double alpha = m.alpha();
  return integrate(m, p0, law, step, [&](const Eigen::VectorXd& p) -> Eigen::VectorXd { return a * p - alpha * p; });
}

double closed_loop_cost(const EpidemicModel& m, const EpidemicTrajectory& traj) {
  require(!traj.times.empty() && traj.states.size() == traj.times.size() && traj.controls.size() == traj.times.size(),
          "trajectory grids do not match");
  const auto n = static_cast<double>(m.size());
  auto running = [&](std::size_t k) {
    const Eigen::VectorXd& p = traj.states[k];
    const Eigen::VectorXd& u = traj.controls[k];
    const Eigen::VectorXd coupled = u - m.contact() * u / n;
    return m.q_t(traj.times[k]) * p.squaredNorm() + u.squaredNorm() + coupled.squaredNorm();
  };
  double cost = 0.0;
  double previous = running(0);
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    const double current = running(k);
    cost += 0.5 * (traj.times[k] - traj.times[k - 1]) * (previous + current);
    previous = current;
  }
  return cost + m.q_T() * traj.states.back().squaredNorm();
}

Eigen::VectorXd ProjectionReport::eigenstate(std::size_t l, std::size_t k) const {
  const auto j = static_cast<Eigen::Index>(l);
  return state_coefficients[k][j] * directions.col(j);
}

Eigen::VectorXd ProjectionReport::eigencontrol(std::size_t l, std::size_t k) const {
  const auto j = static_cast<Eigen::Index>(l);
  return control_coefficients[k][j] * directions.col(j);
}

Eigen::VectorXd ProjectionReport::reconstruct_state(std::size_t k) const {
  return directions * state_coefficients[k] + auxiliary_states[k];
}

Eigen::VectorXd ProjectionReport::reconstruct_control(std::size_t k) const {
  return directions * control_coefficients[k] + auxiliary_controls[k];
}

ProjectionReport project_trajectories(const EpidemicTrajectory& traj, const linalg::SymmetricEigen& spectrum) {
  ProjectionReport r;
  r.times = traj.times;
  r.directions = spectrum.vectors;
  const bool with_controls = traj.controls.size() == traj.states.size();
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const Eigen::VectorXd& p = traj.states[k];
    require(p.size() == r.directions.rows(), "state dimension does not match the spectrum");
    Eigen::VectorXd c = r.directions.transpose() * p;
    r.auxiliary_states.push_back(p - r.directions * c);
    r.state_coefficients.push_back(std::move(c));
    const Eigen::VectorXd u = with_controls ? traj.controls[k] : Eigen::VectorXd::Zero(p.size());
    Eigen::VectorXd cu = r.directions.transpose() * u;
    r.auxiliary_controls.push_back(u - r.directions * cu);
    r.control_coefficients.push_back(std::move(cu));
  }
  return r;
}

}  // namespace graphon
