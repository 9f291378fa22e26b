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

#include "graphon/graphon.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "graphon/error.hpp"
#include "graphon/linalg.hpp"

namespace graphon {

namespace {

constexpr double kRangeSlack = 1e-12;
constexpr std::size_t kMaxStepRefinement = 4096;

[[noreturn]] void unsupported(const std::string& what) {
  fail(ErrorCode::kUnsupportedRepresentation, what);
}

Eigen::VectorXd sqrt_gram(std::size_t order) { return trig_gram_diagonal(order).cwiseSqrt(); }

// Operator matrix of a Fourier kernel in the orthonormal trigonometric basis.
Eigen::MatrixXd orthonormal_matrix(const FourierGraphon& g) {
  const Eigen::VectorXd s = sqrt_gram(g.order());
  return s.asDiagonal() * g.core() * s.asDiagonal();
}

FourierGraphon from_orthonormal(std::size_t order, const Eigen::MatrixXd& k) {
  const Eigen::VectorXd inv = sqrt_gram(order).cwiseInverse();
  return FourierGraphon(order, inv.asDiagonal() * k * inv.asDiagonal());
}

bool is_trig(const Graphon& g) {
  return std::holds_alternative<SinusoidalGraphon>(g) || std::holds_alternative<FourierGraphon>(g);
}

FourierGraphon as_fourier(const Graphon& g) {
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) return FourierGraphon::from_sinusoidal(*s);
  return std::get<FourierGraphon>(g);
}

// Step or sampled graphons as a (possibly unchecked) step function.
const Eigen::MatrixXd* block_matrix(const Graphon& g) {
  if (const auto* s = std::get_if<StepGraphon>(&g)) return &s->coeffs();
  if (const auto* s = std::get_if<SampledGraphon>(&g)) return &s->grid();
  return nullptr;
}

std::size_t step_lcm(std::size_t n, std::size_t m) {
  const std::size_t l = std::lcm(n, m);
  if (l > kMaxStepRefinement) {
    fail(ErrorCode::kIncompatibleDiscretization,
         "step graphons of size " + std::to_string(n) + " and " + std::to_string(m) +
             " have no common refinement below " + std::to_string(kMaxStepRefinement));
  }
  return l;
}

Eigen::MatrixXd refine_matrix(const Eigen::MatrixXd& a, std::size_t n) {
  const auto cur = static_cast<std::size_t>(a.rows());
  if (cur == n) return a;
  const std::size_t f = n / cur;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a(static_cast<Eigen::Index>(i / f), static_cast<Eigen::Index>(j / f));
    }
  }
  return out;
}

double max_abs_eigen_or_singular(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (linalg::is_symmetric(m, 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNumeric, "eigensolver did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()[0];
}

Graphon with_block_matrix(const Graphon& like, Eigen::MatrixXd m) {
  if (std::holds_alternative<SampledGraphon>(like)) return SampledGraphon(std::move(m));
  return StepGraphon(std::move(m), Validation::kUnchecked);
}

// a·g + b·h within one family.
Graphon kernel_lincomb(double a, const Graphon& g, double b, const Graphon& h) {
  if (std::holds_alternative<StepGraphon>(g) && std::holds_alternative<StepGraphon>(h)) {
    const auto& x = std::get<StepGraphon>(g).coeffs();
    const auto& y = std::get<StepGraphon>(h).coeffs();
    const std::size_t l = step_lcm(static_cast<std::size_t>(x.rows()), static_cast<std::size_t>(y.rows()));
    return StepGraphon(a * refine_matrix(x, l) + b * refine_matrix(y, l), Validation::kUnchecked);
  }
  if (std::holds_alternative<SampledGraphon>(g) && std::holds_alternative<SampledGraphon>(h)) {
    const auto& x = std::get<SampledGraphon>(g).grid();
    const auto& y = std::get<SampledGraphon>(h).grid();
    if (x.rows() != y.rows()) fail(ErrorCode::kIncompatibleDiscretization, "sampled graphons differ in resolution");
    return SampledGraphon(a * x + b * y);
  }
  if (is_trig(g) && is_trig(h)) {
    if (std::holds_alternative<SinusoidalGraphon>(g) && std::holds_alternative<SinusoidalGraphon>(h)) {
      const auto& x = std::get<SinusoidalGraphon>(g);
      const auto& y = std::get<SinusoidalGraphon>(h);
      const Eigen::Index k = std::max(x.b().size(), y.b().size());
      Eigen::VectorXd bx = Eigen::VectorXd::Zero(k), by = Eigen::VectorXd::Zero(k);
      bx.head(x.b().size()) = x.b();
      by.head(y.b().size()) = y.b();
      return SinusoidalGraphon(a * x.a0() + b * y.a0(), a * bx + b * by, Validation::kUnchecked);
    }
    const FourierGraphon x = as_fourier(g), y = as_fourier(h);
    const std::size_t order = std::max(x.order(), y.order());
    return FourierGraphon(order, a * x.core_padded(order) + b * y.core_padded(order));
  }
  unsupported("cannot combine " + family_name(g) + " and " + family_name(h) + " kernels without explicit sampling");
}

}  // namespace

// --- StepGraphon -----------------------------------------------------------

StepGraphon::StepGraphon(Eigen::MatrixXd coeffs, Validation validation) : coeffs_(std::move(coeffs)) {
  require(coeffs_.rows() > 0 && coeffs_.rows() == coeffs_.cols(), "step graphon needs a non-empty square matrix");
  if (validation == Validation::kUnchecked) return;
  require(coeffs_.allFinite(), "step graphon coefficients must be finite");
  require(linalg::is_symmetric(coeffs_, kRangeSlack), "step graphon coefficients must be symmetric");
  require(in_unit_range(), "step graphon coefficients must lie in [-1,1]");
}

StepGraphon StepGraphon::zero(std::size_t n) {
  return StepGraphon(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

StepGraphon StepGraphon::constant(std::size_t n, double value) {
  return StepGraphon(Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), value));
}

double StepGraphon::operator()(double x, double y) const {
  const std::size_t n = size();
  return coeffs_(static_cast<Eigen::Index>(block_index(n, x)), static_cast<Eigen::Index>(block_index(n, y)));
}

bool StepGraphon::in_unit_range() const { return coeffs_.cwiseAbs().maxCoeff() <= 1.0 + kRangeSlack; }

bool StepGraphon::nonnegative_unit() const {
  return coeffs_.minCoeff() >= -kRangeSlack && coeffs_.maxCoeff() <= 1.0 + kRangeSlack;
}

StepGraphon StepGraphon::refined(std::size_t n) const {
  require(n % size() == 0, "refinement size must be a multiple of the block count");
  return StepGraphon(refine_matrix(coeffs_, n), Validation::kUnchecked);
}

// --- SinusoidalGraphon ------------------------------------------------------

SinusoidalGraphon::SinusoidalGraphon(double a0, Eigen::VectorXd b, Validation validation)
    : a0_(a0), b_(std::move(b)) {
  if (validation == Validation::kUnchecked) return;
  require(std::isfinite(a0_) && b_.allFinite(), "sinusoidal coefficients must be finite");
  require(std::abs(a0_) + b_.cwiseAbs().sum() <= 1.0 + kRangeSlack,
          "sinusoidal graphon needs |a0| + sum|b_k| <= 1");
}

double SinusoidalGraphon::operator()(double phi, double theta) const {
  double v = a0_;
  for (Eigen::Index k = 0; k < b_.size(); ++k) {
    v += b_[k] * std::cos(2.0 * std::numbers::pi * static_cast<double>(k + 1) * (phi - theta));
  }
  return v;
}

// --- FourierGraphon ---------------------------------------------------------

FourierGraphon::FourierGraphon(std::size_t order, Eigen::MatrixXd core) : order_(order), core_(std::move(core)) {
  const auto dim = static_cast<Eigen::Index>(2 * order + 1);
  require(core_.rows() == dim && core_.cols() == dim, "Fourier kernel core must be (2n+1)x(2n+1)");
}

FourierGraphon FourierGraphon::zero(std::size_t order) {
  const auto dim = static_cast<Eigen::Index>(2 * order + 1);
  return FourierGraphon(order, Eigen::MatrixXd::Zero(dim, dim));
}

FourierGraphon FourierGraphon::from_sinusoidal(const SinusoidalGraphon& g) {
  // cos 2πk(x−y) = cos·cos + sin·sin
  const std::size_t order = g.harmonics();
  Eigen::VectorXd d(static_cast<Eigen::Index>(2 * order + 1));
  d[0] = g.a0();
  for (std::size_t k = 0; k < order; ++k) {
    d[static_cast<Eigen::Index>(1 + 2 * k)] = g.b()[static_cast<Eigen::Index>(k)];
    d[static_cast<Eigen::Index>(2 + 2 * k)] = g.b()[static_cast<Eigen::Index>(k)];
  }
  return FourierGraphon(order, d.asDiagonal());
}

Eigen::MatrixXd FourierGraphon::core_padded(std::size_t order) const {
  require(order >= order_, "cannot pad a Fourier kernel to a lower order");
  const auto dim = static_cast<Eigen::Index>(2 * order + 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  out.topLeftCorner(core_.rows(), core_.cols()) = core_;
  return out;
}

double FourierGraphon::operator()(double x, double y) const {
  const auto dim = static_cast<Eigen::Index>(2 * order_ + 1);
  Eigen::VectorXd px(dim), py(dim);
  px[0] = py[0] = 1.0;
  for (std::size_t k = 1; k <= order_; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    const auto r = static_cast<Eigen::Index>(2 * k - 1);
    px[r] = std::cos(w * x);
    px[r + 1] = std::sin(w * x);
    py[r] = std::cos(w * y);
    py[r + 1] = std::sin(w * y);
  }
  return px.dot(core_ * py);
}

// --- SampledGraphon ---------------------------------------------------------

SampledGraphon::SampledGraphon(Eigen::MatrixXd grid) : grid_(std::move(grid)) {
  require(grid_.rows() > 0 && grid_.rows() == grid_.cols(), "sampled graphon needs a non-empty square grid");
}

SampledGraphon SampledGraphon::from_kernel(const std::function<double(double, double)>& kernel,
                                           std::size_t resolution) {
  require(resolution > 0, "sampling resolution must be positive");
  const auto m = static_cast<Eigen::Index>(resolution);
  Eigen::MatrixXd grid(m, m);
  const double h = 1.0 / static_cast<double>(resolution);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      grid(i, j) = kernel((static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h);
      grid(j, i) = i == j ? grid(i, j) : kernel((static_cast<double>(j) + 0.5) * h, (static_cast<double>(i) + 0.5) * h);
    }
  }
  return SampledGraphon(std::move(grid));
}

double SampledGraphon::operator()(double x, double y) const {
  const std::size_t n = resolution();
  return grid_(static_cast<Eigen::Index>(block_index(n, x)), static_cast<Eigen::Index>(block_index(n, y)));
}

// --- free functions ---------------------------------------------------------

std::string family_name(const Graphon& g) {
  switch (g.index()) {
    case 0: return "step";
    case 1: return "sinusoidal";
    case 2: return "fourier";
    default: return "sampled";
  }
}

double evaluate(const Graphon& g, double x, double y) {
  return std::visit([x, y](const auto& k) { return k(x, y); }, g);
}

SampledGraphon sample_on_grid(const Graphon& g, std::size_t resolution) {
  return SampledGraphon::from_kernel([&g](double x, double y) { return evaluate(g, x, y); }, resolution);
}

Function apply(const Graphon& g, const Function& f) {
  if (const Eigen::MatrixXd* a = block_matrix(g)) {
    const auto* pf = std::get_if<PiecewiseConstantFunction>(&f);
    if (pf == nullptr) {
      fail(ErrorCode::kIncompatibleDiscretization, "a " + family_name(g) + " graphon acts on piecewise-constant functions only");
    }
    const auto n = static_cast<std::size_t>(a->rows());
    if (pf->partition_size() == n) return PiecewiseConstantFunction((*a * pf->values()) / static_cast<double>(n));
    // block integrals of f over the graphon's partition
    const Eigen::VectorXd integrals = partition_overlap(n, pf->partition_size()) * pf->values();
    return PiecewiseConstantFunction(*a * integrals);
  }
  const auto* tf = std::get_if<TrigSeries>(&f);
  if (tf == nullptr) {
    fail(ErrorCode::kIncompatibleDiscretization, "a " + family_name(g) + " graphon acts on trigonometric series only");
  }
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) {
    const auto k = static_cast<Eigen::Index>(std::min(s->harmonics(), tf->order()));
    Eigen::VectorXd c = Eigen::VectorXd::Zero(k), d = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      c[i] = 0.5 * s->b()[i] * tf->cos_coeffs()[i];
      d[i] = 0.5 * s->b()[i] * tf->sin_coeffs()[i];
    }
    return TrigSeries(s->a0() * tf->constant(), std::move(c), std::move(d));
  }
  const auto& fg = std::get<FourierGraphon>(g);
  const Eigen::VectorXd coeffs = tf->basis_coefficients(fg.order());
  return TrigSeries::from_basis(fg.core() * trig_gram_diagonal(fg.order()).cwiseProduct(coeffs));
}

Graphon compose(const Graphon& g, const Graphon& h) {
  if (std::holds_alternative<StepGraphon>(g) && std::holds_alternative<StepGraphon>(h)) {
    const auto& x = std::get<StepGraphon>(g).coeffs();
    const auto& y = std::get<StepGraphon>(h).coeffs();
    const std::size_t l = step_lcm(static_cast<std::size_t>(x.rows()), static_cast<std::size_t>(y.rows()));
    return StepGraphon(refine_matrix(x, l) * refine_matrix(y, l) / static_cast<double>(l), Validation::kUnchecked);
  }
  if (std::holds_alternative<SampledGraphon>(g) && std::holds_alternative<SampledGraphon>(h)) {
    const auto& x = std::get<SampledGraphon>(g).grid();
    const auto& y = std::get<SampledGraphon>(h).grid();
    if (x.rows() != y.rows()) fail(ErrorCode::kIncompatibleDiscretization, "sampled graphons differ in resolution");
    return SampledGraphon(x * y / static_cast<double>(x.rows()));
  }
  if (std::holds_alternative<SinusoidalGraphon>(g) && std::holds_alternative<SinusoidalGraphon>(h)) {
    const auto& x = std::get<SinusoidalGraphon>(g);
    const auto& y = std::get<SinusoidalGraphon>(h);
    const Eigen::Index k = std::min(x.b().size(), y.b().size());
    // ∫ cos 2πk(x−z) cos 2πk(z−y) dz = ½ cos 2πk(x−y); distinct harmonics vanish
    return SinusoidalGraphon(x.a0() * y.a0(), 0.5 * x.b().head(k).cwiseProduct(y.b().head(k)), Validation::kUnchecked);
  }
  if (is_trig(g) && is_trig(h)) {
    const FourierGraphon x = as_fourier(g), y = as_fourier(h);
    const std::size_t order = std::max(x.order(), y.order());
    return FourierGraphon(order, x.core_padded(order) * trig_gram_diagonal(order).asDiagonal() * y.core_padded(order));
  }
  unsupported("cannot compose " + family_name(g) + " with " + family_name(h) + " without explicit sampling");
}

Graphon power(const Graphon& g, int m) {
  if (m == 0) {
    fail(ErrorCode::kInvalidArgument,
         "power 0 is the identity operator, which is neither a graphon nor compact");
  }
  require(m > 0, "graphon power must be a positive integer");
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) {
    // A^m = a0^m + sum (b_k/2)^{m-1} b_k cos(...)
    Eigen::VectorXd b(s->b().size());
    for (Eigen::Index k = 0; k < b.size(); ++k) b[k] = std::pow(0.5 * s->b()[k], m - 1) * s->b()[k];
    return SinusoidalGraphon(std::pow(s->a0(), m), std::move(b), Validation::kUnchecked);
  }
  Graphon out = g;
  for (int i = 1; i < m; ++i) out = compose(out, g);
  return out;
}

Function apply(const BoundedOperator& op, const Function& f) {
  return lincomb(op.identity, f, 1.0, apply(op.kernel, f));
}

BoundedOperator compose(const BoundedOperator& a, const BoundedOperator& b) {
  // (aI + K)(bI + H) = ab I + (aH + bK + KH)
  const Graphon linear = kernel_lincomb(a.identity, b.kernel, b.identity, a.kernel);
  return {a.identity * b.identity, kernel_lincomb(1.0, linear, 1.0, compose(a.kernel, b.kernel))};
}

BoundedOperator exponential(const Graphon& g, double t) {
  if (const Eigen::MatrixXd* a = block_matrix(g)) {
    const auto n = static_cast<double>(a->rows());
    const Eigen::MatrixXd e = linalg::expm((t / n) * *a);
    // the block operator is (1/n)·coeffs, so U_t has coefficients n(e^{tA/n} − I)
    const Eigen::MatrixXd u = n * (e - Eigen::MatrixXd::Identity(a->rows(), a->cols()));
    return {1.0, with_block_matrix(g, u)};
  }
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) {
    Eigen::VectorXd b(s->b().size());
    for (Eigen::Index k = 0; k < b.size(); ++k) b[k] = 2.0 * std::expm1(0.5 * s->b()[k] * t);
    return {1.0, SinusoidalGraphon(std::expm1(s->a0() * t), std::move(b), Validation::kUnchecked)};
  }
  const auto& fg = std::get<FourierGraphon>(g);
  const Eigen::MatrixXd k = orthonormal_matrix(fg);
  const Eigen::MatrixXd u = linalg::expm(t * k) - Eigen::MatrixXd::Identity(k.rows(), k.cols());
  return {1.0, from_orthonormal(fg.order(), u)};
}

double l2_norm(const Graphon& g) {
  if (const Eigen::MatrixXd* a = block_matrix(g)) return a->norm() / static_cast<double>(a->rows());
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) {
    return std::sqrt(s->a0() * s->a0() + 0.5 * s->b().squaredNorm());
  }
  return orthonormal_matrix(std::get<FourierGraphon>(g)).norm();
}

double kernel_inner(const Graphon& g, const Graphon& h) {
  const Eigen::MatrixXd* a = block_matrix(g);
  const Eigen::MatrixXd* b = block_matrix(h);
  if (a != nullptr && b != nullptr) {
    if (a->rows() == b->rows()) return a->cwiseProduct(*b).sum() / static_cast<double>(a->rows() * a->rows());
    const Eigen::MatrixXd o = partition_overlap(static_cast<std::size_t>(a->rows()), static_cast<std::size_t>(b->rows()));
    return (o.transpose() * *a * o).cwiseProduct(*b).sum();
  }
  if (a == nullptr && b == nullptr) {
    const FourierGraphon x = as_fourier(g), y = as_fourier(h);
    const std::size_t order = std::max(x.order(), y.order());
    const Eigen::VectorXd s = sqrt_gram(order);
    return (s.asDiagonal() * x.core_padded(order) * s.asDiagonal())
        .cwiseProduct(s.asDiagonal() * y.core_padded(order) * s.asDiagonal())
        .sum();
  }
  const Eigen::MatrixXd& blocks = a != nullptr ? *a : *b;
  const FourierGraphon trig = as_fourier(a != nullptr ? h : g);
  const Eigen::MatrixXd ints = trig_block_integrals(trig.order(), static_cast<std::size_t>(blocks.rows()));
  return blocks.cwiseProduct(ints.transpose() * trig.core() * ints).sum();
}

double l2_distance(const Graphon& g, const Graphon& h) {
  const Eigen::MatrixXd* a = block_matrix(g);
  const Eigen::MatrixXd* b = block_matrix(h);
  if ((a != nullptr) == (b != nullptr)) {
    if (a != nullptr && a->rows() != b->rows()) {
      const std::size_t l = step_lcm(static_cast<std::size_t>(a->rows()), static_cast<std::size_t>(b->rows()));
      return (refine_matrix(*a, l) - refine_matrix(*b, l)).norm() / static_cast<double>(l);
    }
    if (a != nullptr) return (*a - *b).norm() / static_cast<double>(a->rows());
    return l2_norm(kernel_lincomb(1.0, g, -1.0, h));
  }
  const double gg = kernel_inner(g, g), hh = kernel_inner(h, h), gh = kernel_inner(g, h);
  return std::sqrt(std::max(0.0, gg + hh - 2.0 * gh));
}

double operator_norm(const Graphon& g) {
  if (const Eigen::MatrixXd* a = block_matrix(g)) {
    return max_abs_eigen_or_singular(*a) / static_cast<double>(a->rows());
  }
  if (const auto* s = std::get_if<SinusoidalGraphon>(&g)) {
    double best = std::abs(s->a0());
    for (Eigen::Index k = 0; k < s->b().size(); ++k) best = std::max(best, 0.5 * std::abs(s->b()[k]));
    return best;
  }
  return max_abs_eigen_or_singular(orthonormal_matrix(std::get<FourierGraphon>(g)));
}

namespace {

// Best |sum_{i∈S, j∈T} a_ij| for T chosen optimally given the column sums r.
double best_given_rows(const Eigen::VectorXd& r) {
  double pos = 0.0, neg = 0.0;
  for (Eigen::Index j = 0; j < r.size(); ++j) (r[j] > 0 ? pos : neg) += r[j];
  return std::max(pos, -neg);
}

double cut_enumerate(const Eigen::MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(a.cols());
  double best = 0.0;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
    const int bit = std::countr_zero(step);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    gray ^= mask;
    if (gray & mask) {
      r += a.row(bit).transpose();
    } else {
      r -= a.row(bit).transpose();
    }
    best = std::max(best, best_given_rows(r));
  }
  return best;
}

// Alternating maximisation of |1_Sᵀ A 1_T| seeded from sign patterns.
double cut_local_search(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const linalg::SymmetricEigen eig = linalg::ordered_eigen(0.5 * (a + a.transpose()));
  std::vector<Eigen::VectorXd> seeds;
  seeds.push_back(Eigen::VectorXd::Ones(n));
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(n, 4); ++j) {
    seeds.push_back((eig.vectors.col(j).array() > 0).cast<double>().matrix());
    seeds.push_back((eig.vectors.col(j).array() < 0).cast<double>().matrix());
  }
  double best = 0.0;
  for (const Eigen::VectorXd& seed : seeds) {
    for (const double sign : {1.0, -1.0}) {
      Eigen::VectorXd s = seed;
      double value = -1.0;
      for (int iter = 0; iter < 100; ++iter) {
        const Eigen::VectorXd cols = sign * (a.transpose() * s);
        const Eigen::VectorXd t = (cols.array() > 0).cast<double>().matrix();
        const Eigen::VectorXd rows = sign * (a * t);
        s = (rows.array() > 0).cast<double>().matrix();
        const double v = sign * s.dot(a * t);
        if (v <= value + 1e-15) break;
        value = v;
      }
      best = std::max(best, value);
    }
  }
  return best;
}

}  // namespace

CutNorm cut_norm(const Graphon& g, std::size_t exact_limit) {
  const auto* step = std::get_if<StepGraphon>(&g);
  if (step == nullptr) unsupported("cut norm is implemented for step graphons only, got " + family_name(g));
  require(exact_limit <= 30, "exact cut-norm enumeration limited to N <= 30");
  const Eigen::MatrixXd& a = step->coeffs();
  const double scale = 1.0 / static_cast<double>(a.rows() * a.rows());
  if (step->size() <= exact_limit) {
    const double v = cut_enumerate(a) * scale;
    return {v, v, true};
  }
  const double op = operator_norm(g);
  return {std::max(op * op / 8.0, cut_local_search(a) * scale), op, false};
}

}  // namespace graphon
