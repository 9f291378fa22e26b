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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "graphon/error.hpp"
#include "graphon/graphon.hpp"
#include "oracles.hpp"

using namespace graphon;

namespace {

const StepGraphon kHalf(Eigen::MatrixXd::Constant(1, 1, 0.5));
const StepGraphon kCycle((Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());

Eigen::MatrixXd coeffs(const Graphon& g) { return std::get<StepGraphon>(g).coeffs(); }

PiecewiseConstantFunction pwc(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  std::size_t i = 0;
  for (double d : v) x[i++] = d;
  return PiecewiseConstantFunction(x);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("construction validates the unit box") {
  CHECK(code_of([] { StepGraphon(Eigen::MatrixXd::Constant(2, 2, 1.5)); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { StepGraphon((Eigen::MatrixXd(2, 2) << 0, 1, 0.5, 0).finished()); }) ==
        ErrorCode::kInvalidArgument);
  CHECK_NOTHROW(StepGraphon(Eigen::MatrixXd::Constant(2, 2, 1.5), Validation::kUnchecked));
  CHECK_THROWS_AS(SinusoidalGraphon(0.6, Eigen::VectorXd::Constant(1, 0.5)), Error);
  CHECK(kCycle.nonnegative_unit());
  CHECK(!StepGraphon(Eigen::MatrixXd::Constant(1, 1, -0.5)).nonnegative_unit());
  CHECK(kCycle(0.2, 0.7) == 1.0);
  CHECK(kCycle(1.0, 1.0) == 0.0);
}

TEST_CASE("apply: spec examples") {
  const Function one = PiecewiseConstantFunction::constant(1, 1.0);
  CHECK(std::get<PiecewiseConstantFunction>(graphon::apply(kHalf, one)).values()[0] == doctest::Approx(0.5));

  const SinusoidalGraphon s(0.5, Eigen::VectorXd::Constant(1, 0.3));
  const TrigSeries f(1.0, Eigen::VectorXd::Constant(1, 4.0), Eigen::VectorXd::Constant(1, 2.0));
  const auto out = std::get<TrigSeries>(graphon::apply(s, f));
  CHECK(out.constant() == doctest::Approx(0.5));
  CHECK(out.cos_coeffs()[0] == doctest::Approx(0.15 * 4));
  CHECK(out.sin_coeffs()[0] == doctest::Approx(0.15 * 2));

  const auto v = std::get<PiecewiseConstantFunction>(graphon::apply(kCycle, pwc({1, -1}))).values();
  CHECK(v[0] == doctest::Approx(-0.5));
  CHECK(v[1] == doctest::Approx(0.5));
}

TEST_CASE("apply on a refining partition integrates exactly") {
  // f refined to 4 blocks behaves as on 2 blocks
  const auto v = std::get<PiecewiseConstantFunction>(graphon::apply(kCycle, PiecewiseConstantFunction(pwc({1, -1}).refined(4))));
  CHECK(v.values()[0] == doctest::Approx(-0.5));
  CHECK(v.values()[1] == doctest::Approx(0.5));
}

TEST_CASE("apply rejects incompatible discretizations") {
  const SinusoidalGraphon s(0.5, Eigen::VectorXd::Constant(1, 0.3));
  CHECK(code_of([&] { (void)graphon::apply(s, PiecewiseConstantFunction::constant(2, 1)); }) ==
        ErrorCode::kIncompatibleDiscretization);
  CHECK(code_of([&] { (void)graphon::apply(kCycle, TrigSeries::mode(TrigKind::kConstant, 0)); }) ==
        ErrorCode::kIncompatibleDiscretization);
}

TEST_CASE("compose: spec examples") {
  CHECK(coeffs(compose(kHalf, kHalf))(0, 0) == doctest::Approx(0.25));
  const SinusoidalGraphon c(0.0, Eigen::VectorXd::Constant(1, 1.0));
  const auto cc = std::get<SinusoidalGraphon>(compose(c, c));
  CHECK(cc.a0() == 0.0);
  CHECK(cc.b()[0] == doctest::Approx(0.5));
  // quadrature oracle for ∫cos 2π(x−z) cos 2π(z−y) dz
  const double x = 0.13, y = 0.71;
  double s = 0.0;
  const int m = 4096;
  for (int i = 0; i < m; ++i) {
    const double z = (i + 0.5) / m;
    s += std::cos(2 * std::numbers::pi * (x - z)) * std::cos(2 * std::numbers::pi * (z - y));
  }
  CHECK(cc(x, y) == doctest::Approx(s / m).epsilon(1e-10));

  const Eigen::MatrixXd sq = coeffs(compose(kCycle, kCycle));
  CHECK(sq(0, 0) == doctest::Approx(0.5));
  CHECK(sq(0, 1) == doctest::Approx(0.0));
  CHECK(sq(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("compose refuses to mix step and sinusoidal kernels") {
  const SinusoidalGraphon s(0.5, Eigen::VectorXd::Constant(1, 0.3));
  CHECK(code_of([&] { (void)compose(kCycle, s); }) == ErrorCode::kUnsupportedRepresentation);
}

TEST_CASE("power: spec examples") {
  const auto p = std::get<SinusoidalGraphon>(power(SinusoidalGraphon(0.5, Eigen::VectorXd::Constant(1, 0.3)), 2));
  CHECK(p.a0() == doctest::Approx(0.25));
  CHECK(p.b()[0] == doctest::Approx(0.045));
  CHECK(coeffs(power(kCycle, 1)) == kCycle.coeffs());
  const Eigen::MatrixXd c3 = coeffs(power(kCycle, 3));
  CHECK(c3(0, 1) == doctest::Approx(0.25));
  CHECK(c3(0, 0) == doctest::Approx(0.0));
  try {
    (void)power(kCycle, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("compact") != std::string::npos);
  }
}

TEST_CASE("exponential: spec examples") {
  const BoundedOperator e0 = exponential(kCycle, 0.0);
  CHECK(e0.identity == 1.0);
  CHECK(coeffs(e0.kernel).cwiseAbs().maxCoeff() < 1e-15);

  const BoundedOperator u = exponential(SinusoidalGraphon(1.0, Eigen::VectorXd()), 1.0);
  CHECK(evaluate(u.kernel, 0.2, 0.9) == doctest::Approx(std::exp(1.0) - 1.0));

  const Function one = PiecewiseConstantFunction::constant(1, 1.0);
  const Function r = graphon::apply(exponential(kHalf, 2.0), one);
  CHECK(evaluate(r, 0.5) == doctest::Approx(std::exp(1.0)));

  // x_t = e^{tG/N} x_0 for the 2-cycle
  const Function x = graphon::apply(exponential(kCycle, 0.8), pwc({1, 0}));
  CHECK(evaluate(x, 0.1) == doctest::Approx(std::cosh(0.4)));
  CHECK(evaluate(x, 0.9) == doctest::Approx(std::sinh(0.4)));
}

TEST_CASE("norms: spec examples") {
  CHECK(l2_norm(kHalf) == doctest::Approx(0.5));
  CHECK(l2_norm(SinusoidalGraphon(0.5, Eigen::VectorXd::Constant(1, 0.3))) == doctest::Approx(std::sqrt(0.295)));
  CHECK(oracle::l2_distance([](double x, double y) { return 0.5 + 0.3 * std::cos(2 * std::numbers::pi * (x - y)); },
                            [](double, double) { return 0.0; }, 1024) == doctest::Approx(std::sqrt(0.295)));
  CHECK(l2_norm(kCycle) == doctest::Approx(std::sqrt(0.5)));
  CHECK(operator_norm(kHalf) == doctest::Approx(0.5));
  CHECK(operator_norm(SinusoidalGraphon(0.1, Eigen::VectorXd::Constant(1, 0.6))) == doctest::Approx(0.3));
  CHECK(operator_norm(kCycle) == doctest::Approx(0.5));
}

TEST_CASE("cut norm: spec examples") {
  const CutNorm c1 = cut_norm(kHalf);
  CHECK(c1.exact);
  CHECK(c1.lower == doctest::Approx(0.5));
  // S = T = [0,1] integrates the whole kernel: (0 + 1 + 1 + 0)/4
  const CutNorm c2 = cut_norm(kCycle);
  CHECK(c2.lower == doctest::Approx(0.5));
  CHECK(c2.upper == doctest::Approx(0.5));
  CHECK(code_of([] { (void)cut_norm(SinusoidalGraphon(0.1, Eigen::VectorXd())); }) ==
        ErrorCode::kUnsupportedRepresentation);
}

TEST_CASE("cut norm brackets beyond the enumeration limit") {
  oracle::Gen gen(3);
  const StepGraphon g(gen.symmetric(24, -1, 1));
  const CutNorm c = cut_norm(g);
  CHECK(!c.exact);
  const double op = operator_norm(g);
  CHECK(c.upper == doctest::Approx(op));
  CHECK(c.lower >= op * op / 8 - 1e-12);
  CHECK(c.lower <= c.upper);
}

TEST_CASE("property: cut norm lies in the operator-norm sandwich") {
  oracle::Gen gen(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = gen.index(1, 10);
    const StepGraphon g(gen.symmetric(n, -1, 1));
    const CutNorm c = cut_norm(g);
    REQUIRE(c.exact);
    const double op = operator_norm(g);
    CHECK(c.lower <= op + 1e-12);
    CHECK(op <= std::sqrt(8 * c.lower) + 1e-12);
    // brute force over all indicator pairs
    double best = 0.0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      for (std::uint32_t t = 0; t < (1u << n); ++t) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if ((s >> i & 1) && (t >> j & 1)) sum += g.coeffs()(i, j);
          }
        }
        best = std::max(best, std::abs(sum) / double(n * n));
      }
      if (n > 7) break;  // full double enumeration only for small n
    }
    if (n <= 7) CHECK(c.lower == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("property: apply is self-adjoint") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = gen.index(1, 12);
    const StepGraphon g(gen.symmetric(n, -1, 1));
    const Function f = PiecewiseConstantFunction(gen.vector(n, -1, 1));
    const Function h = PiecewiseConstantFunction(gen.vector(n, -1, 1));
    CHECK(std::abs(inner(f, graphon::apply(g, h)) - inner(graphon::apply(g, f), h)) < 1e-10);
  }
}

TEST_CASE("property: operator norm never exceeds the L2 norm") {
  oracle::Gen gen(6);
  for (int trial = 0; trial < 30; ++trial) {
    const StepGraphon g(gen.symmetric(gen.index(1, 12), -1, 1));
    CHECK(operator_norm(g) <= l2_norm(g) + 1e-12);
    const double a0 = gen.uniform(-0.5, 0.5);
    const SinusoidalGraphon s(a0, gen.vector(2, -0.25, 0.25));
    CHECK(operator_norm(s) <= l2_norm(s) + 1e-12);
  }
}

TEST_CASE("property: power equals repeated composition and stays symmetric") {
  oracle::Gen gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.index(1, 8);
    const StepGraphon g(gen.symmetric(n, -1, 1));
    const int m = static_cast<int>(gen.index(1, 5));
    Graphon acc = g;
    for (int k = 1; k < m; ++k) acc = compose(acc, g);
    const Eigen::MatrixXd p = coeffs(power(g, m));
    CHECK((p - coeffs(acc)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd u = coeffs(exponential(g, 0.7).kernel);
    CHECK((u - u.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("property: exponential semigroup e^{gt} e^{-gt} = I") {
  oracle::Gen gen(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.index(1, 8);
    const StepGraphon g(gen.symmetric(n, -1, 1));
    const double t = gen.uniform(-2, 2);
    const BoundedOperator id = compose(exponential(g, t), exponential(g, -t));
    const Function f = PiecewiseConstantFunction(gen.vector(n, -1, 1));
    const Function back = graphon::apply(id, f);
    CHECK(l2_norm(lincomb(1.0, back, -1.0, f)) < 1e-8);

    const SinusoidalGraphon s(gen.uniform(-0.4, 0.4), gen.vector(2, -0.3, 0.3));
    const TrigSeries ft(gen.uniform(-1, 1), gen.vector(3, -1, 1), gen.vector(3, -1, 1));
    const Function back_t = graphon::apply(compose(exponential(s, t), exponential(s, -t)), ft);
    CHECK(l2_norm(lincomb(1.0, back_t, -1.0, ft)) < 1e-8);
  }
}

TEST_CASE("property: sinusoidal closed forms match midpoint quadrature at M = 2048") {
  const SinusoidalGraphon s(0.4, (Eigen::VectorXd(2) << 0.3, -0.2).finished());
  const auto kern = [&](double x, double y) { return s(x, y); };
  const std::size_t m = 2048;
  const SampledGraphon grid = SampledGraphon::from_kernel(kern, m);
  // square: closed form against grid product
  const Graphon sq = power(s, 2);
  const Eigen::MatrixXd grid_sq = grid.grid() * grid.grid() / double(m);
  double s2 = 0.0;
  for (std::size_t i = 0; i < m; i += 8) {
    for (std::size_t j = 0; j < m; j += 8) {
      s2 += std::pow(evaluate(sq, (i + 0.5) / m, (j + 0.5) / m) - grid_sq(i, j), 2);
    }
  }
  CHECK(std::sqrt(s2) / (m / 8.0) < 1e-4);
  CHECK(std::abs(l2_norm(s) - l2_norm(grid)) < 1e-4);
  // the grid is a step function, so its distance shrinks like 1/M
  CHECK(l2_distance(s, grid) < 1e-3);
  // exponential kernel U_1 against the grid matrix exponential
  const SampledGraphon u = std::get<SampledGraphon>(exponential(grid, 1.0).kernel);
  const Graphon uc = exponential(s, 1.0).kernel;
  CHECK(oracle::l2_distance([&](double x, double y) { return evaluate(uc, x, y); },
                            [&](double x, double y) { return u(x, y); }, 256) < 1e-4);
}

TEST_CASE("kernel inner products across families are exact") {
  const SinusoidalGraphon s(0.4, (Eigen::VectorXd(1) << 0.3).finished());
  oracle::Gen gen(12);
  const StepGraphon g(gen.symmetric(3, -1, 1));
  // midpoint oracle at high resolution
  double q = 0.0;
  const int m = 1200;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) q += s((i + 0.5) / m, (j + 0.5) / m) * g((i + 0.5) / m, (j + 0.5) / m);
  }
  CHECK(kernel_inner(s, g) == doctest::Approx(q / m / m).epsilon(1e-5));
  CHECK(l2_distance(s, g) == doctest::Approx(oracle::l2_distance([&](double x, double y) { return s(x, y); },
                                                                 [&](double x, double y) { return g(x, y); }, 1200))
                                 .epsilon(1e-5));
}
