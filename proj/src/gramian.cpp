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

#include "graphon/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "graphon/error.hpp"
#include "graphon/linalg.hpp"

namespace graphon {

namespace {

constexpr double kZeroRate = 1e-12;

}  // namespace

Function SpectralOperator::apply(const Function& z) const {
  Function out = scaled(scalar, z);
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    if (coeffs[l] == 0.0) continue;
    out = lincomb(1.0, out, coeffs[l] * inner(z, directions[l]), directions[l]);
  }
  return out;
}

double SpectralOperator::spectral_lower_bound() const {
  double low = scalar;
  for (const double c : coeffs) low = std::min(low, scalar + c);
  return low;
}

SpectralOperator SpectralOperator::then(const SpectralOperator& other) const {
  require(coeffs.size() == other.coeffs.size(), "spectral operators must share their directions");
  SpectralOperator out{scalar * other.scalar, std::vector<double>(coeffs.size()), directions};
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    out.coeffs[l] = eigenvalue(l) * other.eigenvalue(l) - out.scalar;
  }
  return out;
}

Eigen::MatrixXd SpectralOperator::matrix(std::size_t n) const {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = scalar * Eigen::MatrixXd::Identity(dim, dim);
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    const auto* f = std::get_if<PiecewiseConstantFunction>(&directions[l]);
    require(f != nullptr && f->partition_size() == n, "matrix form needs piecewise-constant directions on the same partition");
    // <z, f> f = (1/n)(fᵀz) f in block coordinates
    m.noalias() += (coeffs[l] / static_cast<double>(n)) * f->values() * f->values().transpose();
  }
  return m;
}

GraphonSystem::GraphonSystem(double alpha0, double beta0, Graphon a, std::vector<double> input_poly, double horizon)
    : alpha0_(alpha0),
      beta0_(beta0),
      a_(std::move(a)),
      input_poly_(std::move(input_poly)),
      horizon_(horizon),
      spectrum_(decompose(a_)) {
  require(std::isfinite(alpha0_) && std::isfinite(beta0_), "system coefficients must be finite");
  require(horizon_ > 0.0 && std::isfinite(horizon_), "horizon must be positive");
  eta_.reserve(spectrum_.rank());
  for (const auto& p : spectrum_.pairs) {
    double eta = 0.0;
    for (auto it = input_poly_.rbegin(); it != input_poly_.rend(); ++it) eta = (eta + *it) * p.value;
    eta_.push_back(eta + beta0_);
  }
}

SpectralOperator GraphonSystem::drift_exponential(double t) const {
  SpectralOperator op{std::exp(alpha0_ * t), {}, {}};
  for (const auto& p : spectrum_.pairs) {
    op.coeffs.push_back(std::exp((alpha0_ + p.value) * t) - op.scalar);
    op.directions.push_back(p.function);
  }
  return op;
}

SpectralOperator GraphonSystem::input_operator() const {
  SpectralOperator op{beta0_, {}, {}};
  for (std::size_t l = 0; l < spectrum_.rank(); ++l) {
    op.coeffs.push_back(eta_[l] - beta0_);
    op.directions.push_back(spectrum_.pairs[l].function);
  }
  return op;
}

Function GraphonSystem::drift(const Function& x) const {
  return lincomb(alpha0_, x, 1.0, graphon::apply(a_, x));
}

Function GraphonSystem::input(const Function& u) const {
  if (input_poly_.empty()) return scaled(beta0_, u);
  // Horner: β1 A u + β2 A² u + ... = A(β1 u + A(β2 u + ...))
  Function acc = scaled(input_poly_.back(), u);
  acc = graphon::apply(a_, acc);
  for (auto it = std::next(input_poly_.rbegin()); it != input_poly_.rend(); ++it) {
    acc = graphon::apply(a_, lincomb(1.0, acc, *it, u));
  }
  return lincomb(beta0_, u, 1.0, acc);
}

double exp_integral(double rate, double horizon) {
  if (std::abs(rate) < kZeroRate) return horizon;
  return std::expm1(rate * horizon) / rate;
}

Trajectory simulate(const GraphonSystem& sys, const Function& x0, const ControlSignal& u, double step) {
  require(step > 0.0, "integration step must be positive");
  const double horizon = sys.horizon();
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / step - 1e-9)));
  const double h = horizon / static_cast<double>(n);

  auto rhs = [&](double t, const Function& x) {
    Function dx = sys.drift(x);
    if (u) dx = lincomb(1.0, dx, 1.0, sys.input(u(t)));
    return dx;
  };

  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  Function x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * h;
    const Function k1 = rhs(t, x);
    const Function k2 = rhs(t + 0.5 * h, lincomb(1.0, x, 0.5 * h, k1));
    const Function k3 = rhs(t + 0.5 * h, lincomb(1.0, x, 0.5 * h, k2));
    const Function k4 = rhs(t + h, lincomb(1.0, x, h, k3));
    x = lincomb(1.0, x, h / 6.0, lincomb(1.0, lincomb(1.0, k1, 2.0, k2), 1.0, lincomb(2.0, k3, 1.0, k4)));
    if (!all_finite(x)) {
      fail(ErrorCode::kNumeric, "state became non-finite at t = " + std::to_string(t + h));
    }
    traj.times.push_back(k + 1 == n ? horizon : t + h);
    traj.states.push_back(x);
  }
  return traj;
}

GramianOperator gramian(const GraphonSystem& sys) {
  const double t = sys.horizon();
  const double b0 = sys.beta0();
  GramianOperator w{b0 * b0 * exp_integral(2.0 * sys.alpha0(), t), {}, {}};
  for (std::size_t l = 0; l < sys.spectrum().rank(); ++l) {
    const auto& p = sys.spectrum().pairs[l];
    const double eta = sys.eta()[l];
    w.coeffs.push_back(eta * eta * exp_integral(2.0 * (sys.alpha0() + p.value), t) - w.scalar);
    w.directions.push_back(p.function);
  }
  return w;
}

GramianOperator gramian_inverse(const GraphonSystem& sys) {
  if (sys.beta0() == 0.0) {
    fail(ErrorCode::kNotControllable,
         "beta0 = 0 makes the input operator compact; exact controllability is impossible over a finite horizon");
  }
  const GramianOperator w = gramian(sys);
  GramianOperator inv{1.0 / w.scalar, {}, w.directions};
  for (std::size_t l = 0; l < w.coeffs.size(); ++l) {
    const double eig = w.eigenvalue(l);
    if (!(eig > 0.0)) {
      fail(ErrorCode::kNotControllable,
           "Gramian is singular in eigendirection " + std::to_string(l + 1) + " (eta = 0)");
    }
    inv.coeffs.push_back(1.0 / eig - inv.scalar);
  }
  return inv;
}

MinEnergyControl min_energy_control(const GraphonSystem& sys, const Function& x0) {
  const GramianOperator w_inv = gramian_inverse(sys);
  const double t_end = sys.horizon();
  const Function free_end = sys.drift_exponential(t_end).apply(x0);
  const Function costate = w_inv.apply(free_end);

  MinEnergyControl out;
  out.energy = inner(free_end, costate);
  auto shared_sys = std::make_shared<const GraphonSystem>(sys);
  out.signal = [shared_sys, costate, t_end](double t) {
    // 𝔹 and e^{𝔸s} are self-adjoint and commute
    const SpectralOperator op = shared_sys->input_operator().then(shared_sys->drift_exponential(t_end - t));
    return scaled(-1.0, op.apply(costate));
  };
  return out;
}

double control_energy(const ControlSignal& u, double horizon, std::size_t intervals) {
  require(intervals >= 2, "Simpson integration needs at least two intervals");
  if (intervals % 2 == 1) ++intervals;
  const double h = horizon / static_cast<double>(intervals);
  double sum = 0.0;
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double norm = l2_norm(u(static_cast<double>(k) * h));
    const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += weight * norm * norm;
  }
  return sum * h / 3.0;
}

ControllabilityVerdict exact_controllability_check(const GraphonSystem& sys, double tolerance) {
  ControllabilityVerdict v;
  v.spectral_lower_bound = gramian(sys).spectral_lower_bound();
  v.beta0_nonzero = sys.beta0() != 0.0;
  v.exactly_controllable = v.beta0_nonzero && v.spectral_lower_bound > tolerance;
  return v;
}

Eigen::MatrixXd gramian_quadrature_matrix(const GraphonSystem& sys, std::size_t intervals) {
  const auto* step = std::get_if<StepGraphon>(&sys.graphon());
  if (step == nullptr) fail(ErrorCode::kUnsupportedRepresentation, "matrix-form Gramian needs a step-graphon system");
  require(intervals >= 2, "Simpson integration needs at least two intervals");
  if (intervals % 2 == 1) ++intervals;
  const auto n = static_cast<Eigen::Index>(step->size());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a = step->coeffs() / static_cast<double>(n);
  Eigen::MatrixXd b = sys.beta0() * id;
  Eigen::MatrixXd a_pow = id;
  for (const double beta : sys.input_poly()) {
    a_pow = a_pow * a;
    b += beta * a_pow;
  }
  const Eigen::MatrixXd drift = sys.alpha0() * id + a;
  const double h = sys.horizon() / static_cast<double>(intervals);
  const Eigen::MatrixXd e_step = linalg::expm(h * drift);
  const Eigen::MatrixXd bbt = b * b.transpose();

  Eigen::MatrixXd e = id;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w.noalias() += weight * (e * bbt * e.transpose());
    e = e_step * e;
  }
  return w * (h / 3.0);
}

}  // namespace graphon
