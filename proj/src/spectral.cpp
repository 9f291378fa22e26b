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

#include "graphon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "graphon/error.hpp"
#include "graphon/linalg.hpp"
#include "graphon/parallel.hpp"

namespace graphon {

namespace {

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kRadicandSlack = 1e-12;

void sort_pairs(std::vector<Eigenpair>& pairs) {
  double scale = 1.0;
  for (const auto& p : pairs) scale = std::max(scale, std::abs(p.value));
  std::stable_sort(pairs.begin(), pairs.end(), [scale](const Eigenpair& a, const Eigenpair& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (std::abs(ma - mb) > 1e-12 * scale) return ma > mb;
    return a.value >= 0 && b.value < 0;
  });
}

void drop_zeros(std::vector<Eigenpair>& pairs) {
  double largest = 0.0;
  for (const auto& p : pairs) largest = std::max(largest, std::abs(p.value));
  std::erase_if(pairs, [cutoff = kZeroEigenvalue * largest](const Eigenpair& p) { return std::abs(p.value) <= cutoff; });
}

SpectralDecomposition decompose_blocks(const StepGraphon& g) {
  const auto n = static_cast<double>(g.size());
  const linalg::SymmetricEigen eig = linalg::nonzero_part(linalg::ordered_eigen(g.coeffs()), kZeroEigenvalue);
  SpectralDecomposition d{{}, g, std::pow(l2_norm(Graphon(g)), 2)};
  d.pairs.reserve(static_cast<std::size_t>(eig.values.size()));
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    // ‖S_v‖₂² = 1/N for a unit vector v, hence the √N rescaling
    d.pairs.push_back({eig.values[j] / n, PiecewiseConstantFunction(std::sqrt(n) * eig.vectors.col(j))});
  }
  return d;
}

SpectralDecomposition decompose_sinusoidal(const SinusoidalGraphon& g) {
  SpectralDecomposition d{{}, g, std::pow(l2_norm(Graphon(g)), 2)};
  d.pairs.push_back({g.a0(), TrigSeries::mode(TrigKind::kConstant, 0)});
  for (std::size_t k = 1; k <= g.harmonics(); ++k) {
    const double lambda = 0.5 * g.b()[static_cast<Eigen::Index>(k - 1)];
    d.pairs.push_back({lambda, TrigSeries::mode(TrigKind::kCos, k)});
    d.pairs.push_back({lambda, TrigSeries::mode(TrigKind::kSin, k)});
  }
  drop_zeros(d.pairs);
  sort_pairs(d.pairs);
  return d;
}

SpectralDecomposition decompose_fourier(const FourierGraphon& g) {
  const Eigen::VectorXd s = trig_gram_diagonal(g.order()).cwiseSqrt();
  Eigen::MatrixXd k = s.asDiagonal() * g.core() * s.asDiagonal();
  k = 0.5 * (k + k.transpose());
  const linalg::SymmetricEigen eig = linalg::nonzero_part(linalg::ordered_eigen(k), kZeroEigenvalue);
  SpectralDecomposition d{{}, g, std::pow(l2_norm(Graphon(g)), 2)};
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    d.pairs.push_back({eig.values[j], TrigSeries::from_basis(eig.vectors.col(j).cwiseQuotient(s))});
  }
  return d;
}

std::vector<double> signed_sequence(const std::vector<double>& values, bool nonnegative) {
  std::vector<double> out;
  for (const double v : values) {
    if (nonnegative ? v >= 0 : v <= 0) out.push_back(v);
  }
  if (nonnegative) {
    std::sort(out.begin(), out.end(), std::greater<>());
  } else {
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::vector<double> padded_head(const std::vector<double>& v, std::size_t k) {
  std::vector<double> out(k, 0.0);
  std::copy_n(v.begin(), std::min(k, v.size()), out.begin());
  return out;
}

}  // namespace

std::vector<double> SpectralDecomposition::eigenvalues() const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.value);
  return out;
}

std::vector<double> SpectralDecomposition::nonnegative_sequence() const {
  return signed_sequence(eigenvalues(), true);
}

std::vector<double> SpectralDecomposition::nonpositive_sequence() const {
  return signed_sequence(eigenvalues(), false);
}

SpectralDecomposition decompose(const Graphon& g) {
  if (const auto* s = std::get_if<StepGraphon>(&g)) return decompose_blocks(*s);
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) return decompose_sinusoidal(*s);
  if (const auto* s = std::get_if<FourierGraphon>(&g)) return decompose_fourier(*s);
  fail(ErrorCode::kUnsupportedRepresentation, "sampled graphons are quadrature oracles and cannot be decomposed");
}

Graphon truncate(const SpectralDecomposition& d, std::size_t m) {
  if (m > d.rank()) {
    fail(ErrorCode::kInvalidArgument, "truncation rank " + std::to_string(m) + " exceeds the " +
                                          std::to_string(d.rank()) + " available eigenpairs");
  }
  if (const auto* s = std::get_if<StepGraphon>(&d.source)) {
    const auto n = static_cast<Eigen::Index>(s->size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t l = 0; l < m; ++l) {
      const auto& v = std::get<PiecewiseConstantFunction>(d.pairs[l].function).values();
      c.noalias() += d.pairs[l].value * v * v.transpose();
    }
    return StepGraphon(std::move(c), Validation::kUnchecked);
  }
  std::size_t order = 0;
  for (const auto& p : d.pairs) order = std::max(order, std::get<TrigSeries>(p.function).order());
  const auto dim = static_cast<Eigen::Index>(2 * order + 1);
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t l = 0; l < m; ++l) {
    const Eigen::VectorXd c = std::get<TrigSeries>(d.pairs[l].function).basis_coefficients(order);
    core.noalias() += d.pairs[l].value * c * c.transpose();
  }
  if (std::holds_alternative<SinusoidalGraphon>(d.source)) {
    // diagonally constant iff the core is diagonal with matching cos/sin entries
    const Eigen::MatrixXd off = core - Eigen::MatrixXd(core.diagonal().asDiagonal());
    bool diagonal_constant = off.cwiseAbs().maxCoeff() <= 1e-14;
    Eigen::VectorXd b(static_cast<Eigen::Index>(order));
    for (Eigen::Index k = 0; k < b.size() && diagonal_constant; ++k) {
      const double c = core(1 + 2 * k, 1 + 2 * k), s = core(2 + 2 * k, 2 + 2 * k);
      diagonal_constant = std::abs(c - s) <= 1e-14 * std::max(1.0, std::abs(c));
      b[k] = c;
    }
    if (diagonal_constant) return SinusoidalGraphon(core(0, 0), std::move(b), Validation::kUnchecked);
  }
  return FourierGraphon(order, std::move(core));
}

double truncation_error(const SpectralDecomposition& d, std::size_t m) {
  if (m > d.rank()) fail(ErrorCode::kInvalidArgument, "truncation rank exceeds the available eigenpairs");
  // ‖A‖² − Σ_{ℓ≤m} λ² split as the residual of the whole spectrum plus the
  // discarded tail, so no cancellation happens near full rank.
  double kept = 0.0;
  for (const Eigenpair& p : d.pairs) kept += p.value * p.value;
  double residual = d.source_l2_squared - kept;
  const double slack = kRadicandSlack * std::max(1.0, d.source_l2_squared);
  if (residual < -slack) {
    fail(ErrorCode::kNumeric, "truncation error radicand " + std::to_string(residual) +
                                  " is negative: eigenvalues inconsistent with the L2 norm");
  }
  if (std::abs(residual) <= slack) residual = 0.0;
  double tail = 0.0;
  for (std::size_t l = d.rank(); l-- > m;) tail += d.pairs[l].value * d.pairs[l].value;
  return std::sqrt(residual + tail);
}

TrigSeries fourier_project(const Function& f, std::size_t order) {
  if (const auto* t = std::get_if<TrigSeries>(&f)) return t->truncated(order);
  const auto& p = std::get<PiecewiseConstantFunction>(f);
  const Eigen::MatrixXd ints = trig_block_integrals(order, p.partition_size());
  return TrigSeries::from_basis((ints * p.values()).cwiseQuotient(trig_gram_diagonal(order)));
}

FourierApproximation fourier_truncate(const SpectralDecomposition& d, std::size_t m, std::size_t order) {
  require(order >= 1, "Fourier order must be >= 1");
  if (m > d.rank()) fail(ErrorCode::kInvalidArgument, "truncation rank exceeds the available eigenpairs");
  const auto dim = static_cast<Eigen::Index>(2 * order + 1);
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<TrigSeries> projected;
  projected.reserve(m);
  for (std::size_t l = 0; l < m; ++l) {
    projected.push_back(fourier_project(d.pairs[l].function, order));
    const Eigen::VectorXd c = projected.back().basis_coefficients(order);
    core.noalias() += d.pairs[l].value * c * c.transpose();
  }
  FourierApproximation out{FourierGraphon(order, std::move(core)), std::move(projected)};
  out.truncation_term = truncation_error(d, m);
  out.fourier_term = m == 0 ? 0.0 : l2_distance(truncate(d, m), Graphon(out.kernel));
  out.bound = out.truncation_term + out.fourier_term;
  return out;
}

double operator_function_bound(const OperatorFunction& f, double c, double delta) {
  require(c > 0.0 && delta >= 0.0, "bound needs c > 0 and a non-negative discrepancy");
  if (f.kind == OperatorFunction::Kind::kExponential) return c * std::exp(c) * delta;
  require(f.exponent >= 1, "power must be >= 1");
  return f.exponent * std::pow(c, f.exponent) * delta;
}

OperatorFunctionBound operator_function_error(const Graphon& g, const Graphon& g_pm, const OperatorFunction& f) {
  OperatorFunctionBound out;
  // The inequalities need some c dominating both norms; below 1 the printed
  // forms lose a factor of c and no longer hold.
  out.c = std::max({l2_norm(g), l2_norm(g_pm), 1.0});
  out.delta = l2_distance(g, g_pm);
  out.bound = operator_function_bound(f, out.c, out.delta);
  return out;
}

double measured_operator_function_discrepancy(const Graphon& g, const Graphon& g_pm, const OperatorFunction& f,
                                              std::size_t resolution) {
  SampledGraphon a = sample_on_grid(g, resolution);
  SampledGraphon b = sample_on_grid(g_pm, resolution);
  if (f.kind == OperatorFunction::Kind::kPower) {
    return l2_distance(power(Graphon(a), f.exponent), power(Graphon(b), f.exponent));
  }
  const double m = static_cast<double>(resolution);
  auto sym_exp = [m](const Eigen::MatrixXd& grid) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (grid + grid.transpose()) / m);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNumeric, "eigensolver did not converge");
    return Eigen::MatrixXd(solver.eigenvectors() * solver.eigenvalues().array().exp().matrix().asDiagonal() *
                           solver.eigenvectors().transpose());
  };
  const Eigen::MatrixXd diff = sym_exp(a.grid()) - sym_exp(b.grid());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (diff + diff.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<ConvergenceRow> eigenvalue_convergence_experiment(const AdjacencySampler& sampler,
                                                              const SpectralDecomposition& limit,
                                                              std::span<const std::size_t> sizes,
                                                              std::span<const std::uint64_t> seeds, std::size_t k) {
  std::vector<double> reference = padded_head(limit.nonnegative_sequence(), k);
  const std::vector<double> neg = padded_head(limit.nonpositive_sequence(), k);
  reference.insert(reference.end(), neg.begin(), neg.end());

  std::vector<ConvergenceRow> rows(sizes.size() * seeds.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    ConvergenceRow& row = rows[idx];
    row.n = sizes[idx / seeds.size()];
    row.seed = seeds[idx % seeds.size()];
    const Eigen::MatrixXd adjacency = sampler(row.n, row.seed);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNumeric, "eigensolver did not converge");
    std::vector<double> scaled(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      scaled[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)] / static_cast<double>(row.n);
    }
    row.sampled = padded_head(signed_sequence(scaled, true), k);
    const std::vector<double> sneg = padded_head(signed_sequence(scaled, false), k);
    row.sampled.insert(row.sampled.end(), sneg.begin(), sneg.end());
    row.limit = reference;
    for (std::size_t i = 0; i < row.sampled.size(); ++i) {
      row.error = std::max(row.error, std::abs(row.sampled[i] - row.limit[i]));
    }
  });
  return rows;
}

}  // namespace graphon
