// Copyright 2026 The lattice-obstacle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lob/solvers.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "lob/instances.hpp"

namespace lob {
namespace {

QuadraticEnergy tridiag3(LatticeVec b = LatticeVec::zeros(3)) {
  return QuadraticEnergy(3, {{0, 0, 2}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2}, {1, 2, -1}, {2, 1, -1}, {2, 2, 2}},
                         std::move(b));
}

QuadraticEnergy scalar(double a, double b) { return QuadraticEnergy(1, {{0, 0, a}}, LatticeVec{b}); }

TEST(PsorTest, TridiagonalLowerObstacleExample) {
  OrderInterval box(LatticeVec{0.5, 1, 0.5}, LatticeVec{10, 10, 10});
  auto s = solve_psor(tridiag3(), box, {.tol = 1e-12});
  ASSERT_TRUE(s.converged);
  EXPECT_EQ(s.u, (LatticeVec{0.5, 1, 0.5}));
  EXPECT_EQ(s.grad, (LatticeVec{0, 1, 0}));
  EXPECT_EQ(s.active_lower, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(s.active_upper.empty());
  EXPECT_TRUE(s.free_set.empty());
  EXPECT_EQ(s.kkt_residual, 0.0);

  auto oracle = brute_force_active_set(tridiag3(), box);
  EXPECT_EQ(oracle.u, s.u);
}

TEST(PsorTest, SingletonIntervalTakesOneSweep) {
  LatticeVec p{0.3, -0.2, 0.7};
  auto s = solve_psor(tridiag3(LatticeVec{1, -1, 0.5}), OrderInterval(p, p));
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.iterations, 1u);
  EXPECT_EQ(s.u, p);
}

TEST(PsorTest, InactiveObstacles) {
  OrderInterval box(LatticeVec::constant(3, -1), LatticeVec::constant(3, 1));
  auto s = solve_psor(tridiag3(), box, {.initial = LatticeVec{0.9, -0.4, 0.2}});
  ASSERT_TRUE(s.converged);
  EXPECT_LE(max_norm(s.u), 1e-9);
  EXPECT_EQ(s.free_set.size(), 3u);
}

TEST(PsorTest, Errors) {
  // PSD matrix with a zero diagonal entry.
  QuadraticEnergy zero_diag(2, {{1, 1, 1.0}});
  OrderInterval box(LatticeVec{0, 0}, LatticeVec{1, 1});
  EXPECT_THROW(solve_psor(zero_diag, box), SolverError);
  EXPECT_THROW(solve_psor(tridiag3(), box), DimensionError);
  EXPECT_THROW(solve_psor(tridiag3(), OrderInterval::unbounded(3), {.omega = 2.0}), PreconditionError);
  // Positive coupling, not diagonally dominant.
  QuadraticEnergy coupled(2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  EXPECT_THROW(solve_psor(coupled, box), PreconditionError);
}

TEST(PsorTest, MaxIterReturnsUnconverged) {
  Rng rng(1);
  auto e = random_submodular_quadratic(rng, 20);
  auto s = solve_psor(e, OrderInterval::unbounded(20), {.tol = 1e-12, .max_iter = 1});
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations, 1u);
  EXPECT_GT(s.kkt_residual, 1e-12);
}

TEST(PsorTest, MonotoneFromUpperObstacle) {
  // Projected Gauss–Seidel (ω = 1) started at hi is componentwise non-increasing
  // for M-matrices.
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.between(2, 30);
    auto e = random_submodular_quadratic(rng, n);
    auto box = random_box(rng, n, false);
    std::vector<double> prev = box.hi().vec();
    bool monotone = true, inside = true;
    SolverOptions opt{.tol = 1e-10, .omega = 1.0, .initial = box.hi()};
    opt.observer = [&](std::size_t, const LatticeVec& u) {
      // Rounding near the fixed point can add an ulp or two.
      for (std::size_t i = 0; i < n; ++i) monotone = monotone && u[i] <= prev[i] + 1e-14 * (1.0 + std::abs(prev[i]));
      inside = inside && box.contains(u);
      prev = u.vec();
    };
    auto s = solve_psor(e, box, opt);
    EXPECT_TRUE(s.converged);
    EXPECT_TRUE(monotone) << "trial " << trial;
    EXPECT_TRUE(inside);
  }
}

TEST(ProjectedGradientTest, AgreesWithPsorOnQuadratic) {
  OrderInterval box(LatticeVec{0.5, 1, 0.5}, LatticeVec{10, 10, 10});
  auto pg = solve_projected_gradient(tridiag3(), box, {.tol = 1e-10});
  ASSERT_TRUE(pg.converged);
  EXPECT_LE(max_norm(pg.u - LatticeVec{0.5, 1, 0.5}), 1e-7);
}

TEST(ProjectedGradientTest, SymmetricBoxGivesZero) {
  OrderInterval box(LatticeVec::constant(3, -2), LatticeVec::constant(3, 2));
  auto s = solve_projected_gradient(tridiag3(), box, {.tol = 1e-10, .initial = LatticeVec{1.5, -1, 0.25}});
  ASSERT_TRUE(s.converged);
  EXPECT_LE(max_norm(s.u), 1e-9);
}

TEST(ProjectedGradientTest, RejectsSubquadraticKernelAtTies) {
  KernelEnergy e(2, {{0, 1, 1.0}}, {}, 1.5);
  EXPECT_THROW(solve_projected_gradient(e, OrderInterval(LatticeVec{0, 0}, LatticeVec{1, 1})), PreconditionError);
}

TEST(ProjectedGradientTest, EnergyDescentEveryStep) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.between(3, 20);
    Energy e = trial % 2 == 0 ? Energy(fractional_kernel_1d(n, 1.0 / (n + 1), rng.uniform(0.2, 0.8), 3.0, 4))
                              : Energy(random_submodular_quadratic(rng, n));
    auto box = random_smooth_box(rng, n);
    double prev = energy_value(e, clamp(LatticeVec::zeros(n), box));
    bool descent = true;
    SolverOptions opt{.tol = 1e-6, .max_iter = 200000};
    opt.observer = [&](std::size_t, const LatticeVec& u) {
      const double f = energy_value(e, u);
      descent = descent && f <= prev + 1e-12;
      prev = f;
    };
    auto s = solve_projected_gradient(e, box, opt);
    EXPECT_TRUE(s.converged) << "trial " << trial << " n " << n << " res " << s.kkt_residual << " it " << s.iterations;
    EXPECT_TRUE(descent);
  }
}

TEST(ProjectedGradientTest, FractionalCubicGolden) {
  std::ifstream in(std::string(LOB_GOLDEN_DIR) + "/fractional_p3.json");
  ASSERT_TRUE(in.good());
  const auto golden = nlohmann::json::parse(in);
  const auto& inst = golden["instance"];
  auto e = fractional_kernel_1d(inst["n"], inst["h"], inst["s"], inst["p"], inst["collar"]);
  OrderInterval box(LatticeVec(inst["lo"].get<std::vector<double>>()), LatticeVec(inst["hi"].get<std::vector<double>>()));
  const double tol = golden["tol"];
  auto s = solve_projected_gradient(e, box, {.tol = tol, .max_iter = 1000000});
  ASSERT_TRUE(s.converged);
  EXPECT_TRUE(leq(box.lo(), s.u));
  EXPECT_LE(max_norm(s.u - clamp(s.u - s.grad, box)), tol);
  const LatticeVec expected(golden["u"].get<std::vector<double>>());
  EXPECT_LE(max_norm(s.u - expected), 1e-7);
}

TEST(BruteForceTest, ScalarClosedForms) {
  auto inside = brute_force_active_set(scalar(2, -1), OrderInterval(LatticeVec{0}, LatticeVec{10}));
  EXPECT_DOUBLE_EQ(inside.u[0], 0.5);
  EXPECT_EQ(inside.free_set, (std::vector<std::size_t>{0}));
  auto clamped = brute_force_active_set(scalar(2, -1), OrderInterval(LatticeVec{1}, LatticeVec{2}));
  EXPECT_EQ(clamped.u[0], 1.0);
  EXPECT_EQ(clamped.grad[0], 1.0);
  EXPECT_EQ(clamped.active_lower, (std::vector<std::size_t>{0}));
}

TEST(BruteForceTest, SizeLimit) {
  Rng rng(4);
  auto e = random_submodular_quadratic(rng, 13);
  EXPECT_THROW(brute_force_active_set(e, random_box(rng, 13)), SizeError);
}

TEST(BruteForceTest, SingularFreeBlockSkipped) {
  // Neumann Laplacian on two nodes: the all-free pattern is singular.
  QuadraticEnergy e(2, {{0, 0, 1}, {0, 1, -1}, {1, 0, -1}, {1, 1, 1}}, LatticeVec{0.5, -0.5});
  auto s = brute_force_active_set(e, OrderInterval(LatticeVec{0, 0}, LatticeVec{1, 1}));
  EXPECT_LE(s.kkt_residual, 1e-12);
  auto p = solve_psor(e, OrderInterval(LatticeVec{0, 0}, LatticeVec{1, 1}), {.tol = 1e-12});
  EXPECT_NEAR(energy_value(e, s.u), energy_value(e, p.u), 1e-10);
}

TEST(BruteForceTest, PsorOracleEquivalence) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.between(1, 10);
    auto e = random_submodular_quadratic(rng, n);
    auto box = random_box(rng, n);
    auto p = solve_psor(e, box, {.tol = 1e-11});
    ASSERT_TRUE(p.converged);
    auto o = brute_force_active_set(e, box);
    EXPECT_LE(max_norm(p.u - o.u), 1e-7) << "trial " << trial;
  }
}

TEST(KktResidualTest, Cases) {
  OrderInterval box(LatticeVec{0.5, 1, 0.5}, LatticeVec{10, 10, 10});
  EXPECT_EQ(kkt_residual(tridiag3(), box, LatticeVec{0.5, 1, 0.5}), 0.0);
  // Interior point of a wide box: reduces to the gradient norm.
  OrderInterval wide(LatticeVec::constant(3, -5), LatticeVec::constant(3, 5));
  LatticeVec u{0.1, 0.2, -0.3};
  EXPECT_DOUBLE_EQ(kkt_residual(tridiag3(), wide, u), max_norm(energy_gradient(tridiag3(), u)));
  LatticeVec p{0.2, 0.4, 0.6};
  EXPECT_EQ(kkt_residual(tridiag3(LatticeVec{5, 5, 5}), OrderInterval(p, p), p), 0.0);
  EXPECT_THROW(kkt_residual(tridiag3(), box, LatticeVec{0, 1, 0.5}), PreconditionError);
}

TEST(KktResidualTest, PinnedUpToRoundingIsSatisfied) {
  // lo and hi one ulp apart: u sits on both, so the gradient sign is irrelevant.
  const double lo = 0.3;
  const double hi = std::nextafter(lo, 1.0);
  OrderInterval box(LatticeVec{lo}, LatticeVec{hi});
  EXPECT_EQ(kkt_residual_from_gradient(box, LatticeVec{lo}, LatticeVec{-5}), 0.0);
  EXPECT_EQ(kkt_residual_from_gradient(box, LatticeVec{hi}, LatticeVec{5}), 0.0);
  auto s = solve_psor(scalar(1, 7), box);
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.active_lower, (std::vector<std::size_t>{0}));
}

TEST(ComparisonPrincipleTest, ObstacleSolutionDominatesUnconstrained) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.between(3, 12);
    QuadraticEnergy base = trial % 2 == 0
                               ? graph_dirichlet(n + 2, [&] {
                                   std::vector<GraphEdge> e;
                                   for (std::size_t i = 0; i + 1 < n + 2; ++i) e.push_back({i, i + 1, rng.uniform(0.5, 2)});
                                   return e;
                                 }(), {0, n + 1})
                               : [&] {
                                   const std::size_t side = rng.between(3, 5);
                                   auto g = GraphSpace::grid(side, side);
                                   std::vector<std::size_t> ring;
                                   for (std::size_t v = 0; v < side * side; ++v) {
                                     const std::size_t r = v / side, c = v % side;
                                     if (r == 0 || c == 0 || r + 1 == side || c + 1 == side) ring.push_back(v);
                                   }
                                   std::vector<GraphEdge> edges = g.edges();
                                   return graph_dirichlet(side * side, edges, ring);
                                 }();
    const std::size_t m = base.size();
    auto e = base.with_linear_term(rng.vec(m, -1, 1));
    auto harmonic = solve_psor(e, OrderInterval::unbounded(m), {.tol = 1e-12});
    auto obstacle = solve_psor(e, OrderInterval::lower_only(rng.vec(m, -1, 1)), {.tol = 1e-12});
    ASSERT_TRUE(harmonic.converged && obstacle.converged);
    for (std::size_t i = 0; i < m; ++i) EXPECT_LE(harmonic.u[i], obstacle.u[i] + 1e-9);
  }
}

}  // namespace
}  // namespace lob
