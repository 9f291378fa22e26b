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

#include "graphon/function.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "graphon/error.hpp"

namespace graphon {

namespace {

constexpr std::size_t kMaxRefinement = std::size_t{1} << 16;

std::size_t common_refinement(std::size_t n, std::size_t m) {
  const std::size_t l = std::lcm(n, m);
  if (l > kMaxRefinement) {
    fail(ErrorCode::kIncompatibleDiscretization,
         "partitions of size " + std::to_string(n) + " and " + std::to_string(m) +
             " have no common refinement below " + std::to_string(kMaxRefinement) + " blocks");
  }
  return l;
}

[[noreturn]] void mixed_families() {
  fail(ErrorCode::kIncompatibleDiscretization,
       "cannot combine a piecewise-constant function with a trigonometric series");
}

}  // namespace

std::size_t block_index(std::size_t n, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "evaluation point " + std::to_string(x) + " outside [0,1]");
  }
  const auto i = static_cast<std::size_t>(std::floor(x * static_cast<double>(n)));
  return i >= n ? n - 1 : i;
}

PiecewiseConstantFunction::PiecewiseConstantFunction(Eigen::VectorXd values)
    : values_(std::move(values)) {
  require(values_.size() > 0, "piecewise-constant function needs at least one block");
}

PiecewiseConstantFunction PiecewiseConstantFunction::constant(std::size_t n, double value) {
  return PiecewiseConstantFunction(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), value));
}

PiecewiseConstantFunction PiecewiseConstantFunction::indicator(std::size_t n, std::size_t block) {
  require(block < n, "indicator block out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  v[static_cast<Eigen::Index>(block)] = 1.0;
  return PiecewiseConstantFunction(std::move(v));
}

double PiecewiseConstantFunction::l2_norm() const {
  return std::sqrt(values_.squaredNorm() / static_cast<double>(values_.size()));
}

PiecewiseConstantFunction PiecewiseConstantFunction::refined(std::size_t n) const {
  const std::size_t current = partition_size();
  require(n % current == 0, "refinement size must be a multiple of the partition size");
  const std::size_t factor = n / current;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    v[static_cast<Eigen::Index>(i)] = values_[static_cast<Eigen::Index>(i / factor)];
  }
  return PiecewiseConstantFunction(std::move(v));
}

TrigSeries::TrigSeries(double constant, Eigen::VectorXd cos_coeffs, Eigen::VectorXd sin_coeffs)
    : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const Eigen::Index n = std::max(cos_.size(), sin_.size());
  if (cos_.size() < n) cos_.conservativeResizeLike(Eigen::VectorXd::Zero(n));
  if (sin_.size() < n) sin_.conservativeResizeLike(Eigen::VectorXd::Zero(n));
}

TrigSeries TrigSeries::mode(TrigKind kind, std::size_t harmonic) {
  if (kind == TrigKind::kConstant) return TrigSeries(1.0, {}, {});
  require(harmonic >= 1, "trigonometric mode harmonic must be >= 1");
  const auto n = static_cast<Eigen::Index>(harmonic);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  (kind == TrigKind::kCos ? c : s)[n - 1] = std::numbers::sqrt2;
  return TrigSeries(0.0, std::move(c), std::move(s));
}

TrigSeries TrigSeries::from_basis(const Eigen::VectorXd& coeffs) {
  require(coeffs.size() % 2 == 1, "trigonometric basis vector must have odd length");
  const Eigen::Index n = (coeffs.size() - 1) / 2;
  Eigen::VectorXd c(n), s(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    c[k] = coeffs[1 + 2 * k];
    s[k] = coeffs[2 + 2 * k];
  }
  return TrigSeries(coeffs[0], std::move(c), std::move(s));
}

Eigen::VectorXd TrigSeries::basis_coefficients(std::size_t order) const {
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n + 1);
  out[0] = constant_;
  for (Eigen::Index k = 0; k < std::min(n, cos_.size()); ++k) {
    out[1 + 2 * k] = cos_[k];
    out[2 + 2 * k] = sin_[k];
  }
  return out;
}

Eigen::VectorXcd TrigSeries::complex_coefficients() const {
  const Eigen::Index n = cos_.size();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(2 * n + 1);
  c[n] = constant_;
  // a cos + b sin = (a - ib)/2 e^{+} + (a + ib)/2 e^{-}
  for (Eigen::Index k = 1; k <= n; ++k) {
    c[n + k] = std::complex<double>(cos_[k - 1], -sin_[k - 1]) / 2.0;
    c[n - k] = std::complex<double>(cos_[k - 1], sin_[k - 1]) / 2.0;
  }
  return c;
}

TrigSeries TrigSeries::truncated(std::size_t order) const {
  return from_basis(basis_coefficients(order));
}

double TrigSeries::operator()(double x) const {
  double v = constant_;
  for (Eigen::Index k = 0; k < cos_.size(); ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k + 1) * x;
    v += cos_[k] * std::cos(w) + sin_[k] * std::sin(w);
  }
  return v;
}

double TrigSeries::l2_norm() const {
  return std::sqrt(constant_ * constant_ + 0.5 * (cos_.squaredNorm() + sin_.squaredNorm()));
}

Eigen::VectorXd trig_gram_diagonal(std::size_t order) {
  Eigen::VectorXd g = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(2 * order + 1), 0.5);
  g[0] = 1.0;
  return g;
}

Eigen::MatrixXd trig_block_integrals(std::size_t order, std::size_t n) {
  const auto rows = static_cast<Eigen::Index>(2 * order + 1);
  const auto cols = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd out(rows, cols);
  const double width = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double lo = static_cast<double>(i) * width;
    const double hi = static_cast<double>(i + 1) * width;
    out(0, i) = width;
    for (std::size_t k = 1; k <= order; ++k) {
      const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
      const auto r = static_cast<Eigen::Index>(2 * k - 1);
      out(r, i) = (std::sin(w * hi) - std::sin(w * lo)) / w;
      out(r + 1, i) = (std::cos(w * lo) - std::cos(w * hi)) / w;
    }
  }
  return out;
}

Eigen::MatrixXd partition_overlap(std::size_t n, std::size_t m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  // Work on the integer grid of resolution n*m so breakpoints compare exactly.
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(m));
  std::size_t i = 0, j = 0, pos = 0;
  while (i < n && j < m) {
    const std::size_t end_i = (i + 1) * m;
    const std::size_t end_j = (j + 1) * n;
    const std::size_t end = std::min(end_i, end_j);
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += static_cast<double>(end - pos) * scale;
    pos = end;
    if (end_i == end) ++i;
    if (end_j == end) ++j;
  }
  return out;
}

double evaluate(const Function& f, double x) {
  return std::visit([x](const auto& g) { return g(x); }, f);
}

double inner(const Function& f, const Function& g) {
  if (const auto* pf = std::get_if<PiecewiseConstantFunction>(&f)) {
    const auto* pg = std::get_if<PiecewiseConstantFunction>(&g);
    if (pg == nullptr) mixed_families();
    const std::size_t n = pf->partition_size(), m = pg->partition_size();
    if (n == m) return pf->values().dot(pg->values()) / static_cast<double>(n);
    return pf->values().dot(partition_overlap(n, m) * pg->values());
  }
  const auto& tf = std::get<TrigSeries>(f);
  const auto* tg = std::get_if<TrigSeries>(&g);
  if (tg == nullptr) mixed_families();
  const std::size_t order = std::max(tf.order(), tg->order());
  return tf.basis_coefficients(order)
      .cwiseProduct(trig_gram_diagonal(order))
      .dot(tg->basis_coefficients(order));
}

double l2_norm(const Function& f) {
  return std::visit([](const auto& g) { return g.l2_norm(); }, f);
}

Function lincomb(double a, const Function& f, double b, const Function& g) {
  if (const auto* pf = std::get_if<PiecewiseConstantFunction>(&f)) {
    const auto* pg = std::get_if<PiecewiseConstantFunction>(&g);
    if (pg == nullptr) mixed_families();
    if (pf->partition_size() == pg->partition_size()) {
      return PiecewiseConstantFunction(a * pf->values() + b * pg->values());
    }
    const std::size_t l = common_refinement(pf->partition_size(), pg->partition_size());
    return PiecewiseConstantFunction(a * pf->refined(l).values() + b * pg->refined(l).values());
  }
  const auto& tf = std::get<TrigSeries>(f);
  const auto* tg = std::get_if<TrigSeries>(&g);
  if (tg == nullptr) mixed_families();
  const std::size_t order = std::max(tf.order(), tg->order());
  return TrigSeries::from_basis(a * tf.basis_coefficients(order) + b * tg->basis_coefficients(order));
}

Function scaled(double a, const Function& f) {
  if (const auto* pf = std::get_if<PiecewiseConstantFunction>(&f)) {
    return PiecewiseConstantFunction(a * pf->values());
  }
  return TrigSeries::from_basis(a * std::get<TrigSeries>(f).basis_coefficients());
}

Function zero_like(const Function& f) { return scaled(0.0, f); }

bool all_finite(const Function& f) {
  if (const auto* pf = std::get_if<PiecewiseConstantFunction>(&f)) return pf->values().allFinite();
  return std::get<TrigSeries>(f).basis_coefficients().allFinite();
}

}  // namespace graphon
