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

#include "lob/energies.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace lob {
namespace {

QuadraticEnergy dense_quadratic(const std::vector<std::vector<double>>& a) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != 0.0) t.push_back({i, j, a[i][j]});
  return QuadraticEnergy(a.size(), t);
}

QuadraticEnergy tridiag3() { return dense_quadratic({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}); }

LatticeVec random_vec(std::mt19937_64& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return LatticeVec(v);
}

// Central differences of energy_value, step h.
template <class E>
std::vector<double> fd_gradient(const E& e, const LatticeVec& u, double h = 1e-5) {
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto plus = u.vec(), minus = u.vec();
    plus[i] += h;
    minus[i] -= h;
    g[i] = (energy_value(e, LatticeVec(plus)) - energy_value(e, LatticeVec(minus))) / (2 * h);
  }
  return g;
}

TEST(QuadraticEnergyTest, RejectsAsymmetricAndIndefinite) {
  EXPECT_THROW(QuadraticEnergy(2, {{0, 0, 1}, {0, 1, 0.5}, {1, 1, 1}}), ConstructionError);
  EXPECT_THROW(dense_quadratic({{1, 2}, {2, 1}}), ConstructionError);
  EXPECT_THROW(dense_quadratic({{-1, 0}, {0, 1}}), ConstructionError);
  // Singular PSD is accepted.
  EXPECT_NO_THROW(dense_quadratic({{1, -1}, {-1, 1}}));
  EXPECT_TRUE(dense_quadratic({{1, -1}, {-1, 1}}).submodular());
  EXPECT_FALSE(dense_quadratic({{2, 1}, {1, 2}}).submodular());
}

TEST(GraphDirichletTest, PathWithPinnedEnds) {
  std::vector<GraphEdge> edges{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}};
  auto e = graph_dirichlet(5, edges, {0, 4});
  ASSERT_EQ(e.size(), 3u);
  const double expected[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(e.matrix().entry(i, j), expected[i][j]);
  EXPECT_TRUE(e.submodular());
  EXPECT_EQ(free_nodes(5, {0, 4}), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(GraphDirichletTest, SingleEdgeAndGridCenter) {
  auto e = graph_dirichlet(2, {{0, 1, 2.5}}, {1});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.matrix().entry(0, 0), 2.5);

  std::vector<GraphEdge> grid;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t v = 3 * r + c;
      if (c + 1 < 3) grid.push_back({v, v + 1, 1});
      if (r + 1 < 3) grid.push_back({v, v + 3, 1});
    }
  auto center = graph_dirichlet(9, grid, {0, 1, 2, 3, 5, 6, 7, 8});
  ASSERT_EQ(center.size(), 1u);
  EXPECT_EQ(center.matrix().entry(0, 0), 4.0);
}

TEST(GraphDirichletTest, Errors) {
  EXPECT_THROW(graph_dirichlet(3, {{1, 1, 1}}), ConstructionError);
  EXPECT_THROW(graph_dirichlet(3, {{0, 1, 0}}), ConstructionError);
  EXPECT_THROW(graph_dirichlet(3, {{0, 1, -1}}), ConstructionError);
  EXPECT_THROW(graph_dirichlet(3, {{0, 5, 1}}), ConstructionError);
  EXPECT_THROW(graph_dirichlet(2, {{0, 1, 1}}, {0, 1}), ConstructionError);
}

TEST(HarmonicExtensionTest, LinearTermImposesBoundary) {
  // Path 0-1-2-3 with u(0) = 0, u(3) = 3: harmonic extension is u = (1, 2).
  auto e = harmonic_extension_problem(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}, {0, 3}, LatticeVec{0, 3});
  EXPECT_EQ(energy_gradient(e, LatticeVec{1, 2}), (LatticeVec{0, 0}));
}

// Brute-force kernel sum over the full truncated line {1−M, …, n+M}.
struct KernelOracle {
  double weight(std::size_t n, double h, double s, double p, std::size_t collar, long i, long j) const {
    (void)n;
    (void)collar;
    return h * h * std::pow(h * std::abs(static_cast<double>(i - j)), -(1 + p * s));
  }
  double exterior(std::size_t n, double h, double s, double p, std::size_t collar, long i) const {
    double acc = 0.0;
    const long m = static_cast<long>(collar);
    for (long y = 1 - m; y <= static_cast<long>(n) + m; ++y) {
      if (y >= 1 && y <= static_cast<long>(n)) continue;
      acc += weight(n, h, s, p, collar, i, y);
    }
    return acc;
  }
};

TEST(FractionalKernelTest, WorkedExample) {
  auto e = fractional_kernel_1d(3, 1.0, 0.5, 2.0, 2);
  ASSERT_EQ(e.pairs().size(), 3u);
  EXPECT_DOUBLE_EQ(e.pairs()[0].w, 1.0);   // w_12
  EXPECT_DOUBLE_EQ(e.pairs()[1].w, 0.25);  // w_13
  EXPECT_DOUBLE_EQ(e.pairs()[2].w, 1.0);   // w_23
  ASSERT_EQ(e.exterior().size(), 3u);
  KernelOracle oracle;
  EXPECT_NEAR(e.exterior()[0].d, oracle.exterior(3, 1.0, 0.5, 2.0, 2, 1), 1e-15);
  EXPECT_NEAR(e.exterior()[0].d, 1.0 + 0.25 + 1.0 / 9 + 1.0 / 16, 1e-15);
  EXPECT_NEAR(e.exterior()[0].d, 1.4236111111111112, 1e-15);
}

TEST(FractionalKernelTest, WeightsMatchBruteForceSum) {
  const std::size_t n = 7;
  const double h = 1.0 / (n + 1), s = 0.35, p = 3.0;
  const std::size_t collar = 4;
  auto e = fractional_kernel_1d(n, h, s, p, collar);
  KernelOracle oracle;
  for (const auto& pr : e.pairs())
    EXPECT_NEAR(pr.w, oracle.weight(n, h, s, p, collar, long(pr.i) + 1, long(pr.j) + 1), 1e-12 * pr.w);
  for (const auto& ex : e.exterior())
    EXPECT_NEAR(ex.d, oracle.exterior(n, h, s, p, collar, long(ex.i) + 1), 1e-12 * ex.d);
}

TEST(FractionalKernelTest, SinglePointIsExteriorOnly) {
  auto e = fractional_kernel_1d(1, 0.5, 0.3, 2.0, 3);
  EXPECT_TRUE(e.pairs().empty());
  ASSERT_EQ(e.exterior().size(), 1u);
  EXPECT_GT(e.exterior()[0].d, 0.0);
  EXPECT_EQ(energy_value(e, LatticeVec{0.0}), 0.0);
  EXPECT_GT(energy_value(e, LatticeVec{0.1}), 0.0);
  EXPECT_GT(energy_value(e, LatticeVec{-0.1}), 0.0);
}

TEST(FractionalKernelTest, ParameterErrors) {
  EXPECT_THROW(fractional_kernel_1d(3, 0.0, 0.5, 2, 1), ConstructionError);
  EXPECT_THROW(fractional_kernel_1d(3, 1.0, 0.0, 2, 1), ConstructionError);
  EXPECT_THROW(fractional_kernel_1d(3, 1.0, 1.0, 2, 1), ConstructionError);
  EXPECT_THROW(fractional_kernel_1d(3, 1.0, 0.5, 1.0, 1), ConstructionError);
  EXPECT_THROW(fractional_kernel_1d(3, 1.0, 0.5, 2, 0), ConstructionError);
  EXPECT_THROW(fractional_kernel_1d(0, 1.0, 0.5, 2, 1), ConstructionError);
}

TEST(FractionalKernelTest, QuadraticReductionAtPEqualsTwo) {
  auto k = fractional_kernel_1d(9, 0.1, 0.6, 2.0, 5);
  auto q = to_quadratic(k);
  EXPECT_TRUE(q.submodular());
  // Off-diagonal couplings are −w_ij ≤ 0.
  for (const auto& pr : k.pairs()) EXPECT_EQ(q.matrix().entry(pr.i, pr.j), -pr.w);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_vec(rng, 9);
    EXPECT_NEAR(energy_value(k, u), energy_value(q, u), 1e-10);
    EXPECT_LE(max_norm(energy_gradient(k, u) - energy_gradient(q, u)), 1e-10);
  }
  EXPECT_THROW(to_quadratic(fractional_kernel_1d(3, 1, 0.5, 3.0, 1)), PreconditionError);
}

TEST(EnergyEvaluationTest, TridiagonalExample) {
  auto e = tridiag3();
  LatticeVec u{0.5, 1, 0.5};
  EXPECT_EQ(energy_gradient(e, u), (LatticeVec{0, 1, 0}));
  // ½ Σ_edges (u_i − u_j)² on the path 0..4 with zero ends: four differences of ±½.
  EXPECT_DOUBLE_EQ(energy_value(e, u), 0.5 * 4 * 0.25);
  auto fd = fd_gradient(e, u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(fd[i], energy_gradient(e, u)[i], 1e-8);
}

TEST(EnergyEvaluationTest, ZeroAtOrigin) {
  auto z = LatticeVec::zeros(3);
  EXPECT_EQ(energy_value(tridiag3(), z), 0.0);
  EXPECT_EQ(energy_gradient(tridiag3(), z), z);
  auto k = fractional_kernel_1d(3, 0.25, 0.5, 3.0, 2);
  EXPECT_EQ(energy_value(k, z), 0.0);
  EXPECT_EQ(energy_gradient(k, z), z);
}

TEST(EnergyEvaluationTest, KernelCubicSinglePair) {
  KernelEnergy e(2, {{0, 1, 1.0}}, {}, 3.0);
  LatticeVec u{2, 0};
  EXPECT_DOUBLE_EQ(energy_value(e, u), 8.0 / 3.0);
  EXPECT_EQ(energy_gradient(e, u), (LatticeVec{4, -4}));
  auto fd = fd_gradient(e, u);
  EXPECT_NEAR(fd[0], 4.0, 1e-8);
  EXPECT_NEAR(fd[1], -4.0, 1e-8);
}

TEST(EnergyEvaluationTest, DimensionMismatch) {
  EXPECT_THROW(energy_value(tridiag3(), LatticeVec{1, 2}), DimensionError);
  EXPECT_THROW(energy_gradient(tridiag3(), LatticeVec{1, 2}), DimensionError);
}

TEST(EnergyEvaluationTest, SubquadraticKernelTiesAreNondifferentiable) {
  KernelEnergy e(2, {{0, 1, 1.0}}, {{0, 1.0}}, 1.5);
  EXPECT_THROW(energy_gradient(e, LatticeVec{1, 1}), NonDifferentiableError);
  EXPECT_THROW(energy_gradient(e, LatticeVec{0, 1}), NonDifferentiableError);
  EXPECT_NO_THROW(energy_gradient(e, LatticeVec{0.5, 1}));
}

TEST(EnergyEvaluationTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::vector<Energy> energies{
      graph_dirichlet(6, {{0, 1, 1}, {1, 2, 2}, {2, 3, 0.5}, {3, 4, 1}, {4, 5, 3}, {0, 5, 1}}, {0}),
      Energy(fractional_kernel_1d(5, 0.2, 0.4, 2.0, 3)),
      Energy(fractional_kernel_1d(5, 0.2, 0.7, 3.0, 3)),
      Energy(KernelEnergy(4, {{0, 1, 1.0}, {0, 3, 0.5}, {1, 2, 2.0}}, {{2, 0.3}}, 3.0)),
  };
  for (const auto& e : energies) {
    for (int trial = 0; trial < 20; ++trial) {
      auto u = random_vec(rng, dimension_of(e));
      auto g = energy_gradient(e, u);
      auto fd = fd_gradient(e, u);
      for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(fd[i], g[i], 1e-6 * std::max(1.0, std::abs(g[i])));
    }
  }
}

TEST(SubmodularityCheckTest, Examples) {
  auto z = dense_quadratic({{2, -1}, {-1, 2}});
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto r = submodularity_check(z, random_vec(rng, 2), random_vec(rng, 2), 1e-12);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.value, 1e-12);
  }
  auto bad = dense_quadratic({{2, 1}, {1, 2}});
  auto r = submodularity_check(bad, LatticeVec{1, 0}, LatticeVec{0, 1});
  EXPECT_FALSE(r.pass);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  // Comparable pair: u ≤ v gives δ = 0 exactly.
  EXPECT_EQ(submodularity_check(bad, LatticeVec{0, 1}, LatticeVec{1, 2}).value, 0.0);
}

TEST(TMonotonicityTest, Examples) {
  auto bad = dense_quadratic({{2, 1}, {1, 2}});
  auto r = t_monotonicity_check(bad, LatticeVec{1, 0}, LatticeVec{0, 1});
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_TRUE(r.pass);
  LatticeVec u{0.3, -0.7, 1.1};
  EXPECT_EQ(t_monotonicity_check(tridiag3(), u, u).value, 0.0);
  KernelEnergy sub(2, {{0, 1, 1.0}}, {}, 1.5);
  EXPECT_THROW(t_monotonicity_check(sub, LatticeVec{1, 1}, LatticeVec{0, 2}), NonDifferentiableError);
}

TEST(TMonotonicityTest, HoldsForSubmodularFamilies) {
  std::mt19937_64 rng(31);
  std::vector<Energy> energies{tridiag3(), Energy(fractional_kernel_1d(3, 0.25, 0.5, 2.0, 2)),
                               Energy(fractional_kernel_1d(3, 0.25, 0.5, 3.0, 2))};
  for (const auto& e : energies) {
    for (int trial = 0; trial < 300; ++trial) {
      auto r = t_monotonicity_check(e, random_vec(rng, 3), random_vec(rng, 3), 1e-10);
      EXPECT_TRUE(r.pass) << r.value;
    }
  }
}

TEST(ZMatrixViolationTest, Examples) {
  EXPECT_FALSE(z_matrix_violation(tridiag3().matrix()).has_value());
  EXPECT_FALSE(z_matrix_violation(SparseSymmetric(3, {{0, 0, 1}, {1, 1, 5}, {2, 2, -2}})).has_value());
  SparseSymmetric a(2, {{0, 0, 2}, {0, 1, 1}, {1, 0, 1}, {1, 1, 2}});
  auto w = z_matrix_violation(a);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->i, 0u);
  EXPECT_EQ(w->j, 1u);
  EXPECT_EQ(w->u, (LatticeVec{1, 0}));
  EXPECT_EQ(w->v, (LatticeVec{0, 1}));
  EXPECT_DOUBLE_EQ(w->delta, 1.0);
  EXPECT_DOUBLE_EQ(submodularity_check(a, w->u, w->v).value, 1.0);
}

TEST(ZMatrixViolationTest, EquivalentToCoordinatePairChecks) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back({i, i, 3 + d(rng)});
      for (std::size_t j = i + 1; j < n; ++j) {
        // Mostly nonpositive couplings so both outcomes occur.
        const double v = d(rng) - (trial % 2 == 0 ? 1.5 : 0.6);
        t.push_back({i, j, v});
        t.push_back({j, i, v});
      }
    }
    SparseSymmetric a(n, t);
    bool pairs_pass = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (double s : {0.5, 1.0, 2.0}) {
          std::vector<double> ei(n, 0.0), ej(n, 0.0);
          ei[i] = s;
          ej[j] = s;
          pairs_pass = pairs_pass && submodularity_check(a, LatticeVec(ei), LatticeVec(ej), 1e-12).pass;
        }
      }
    auto w = z_matrix_violation(a);
    EXPECT_EQ(!w.has_value(), pairs_pass);
    if (w) {
      EXPECT_NEAR(submodularity_check(a, w->u, w->v).value, a.entry(w->i, w->j), 1e-12);
    }
  }
}

TEST(ScalarInequalityTest, Examples) {
  auto r = scalar_submodularity_inequality(AbsPower{2}, 1, 0, 0, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.lhs, 2.0);
  EXPECT_DOUBLE_EQ(r.rhs, 0.0);
  auto eq = scalar_submodularity_inequality(AbsPower{3}, 0.4, -1.2, 0.4, -1.2);
  EXPECT_EQ(eq.lhs, eq.rhs);
  EXPECT_THROW(scalar_submodularity_inequality(AbsPower{0.5}, 0, 0, 0, 0), PreconditionError);
}

TEST(ScalarInequalityTest, RandomQuadruples) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> d(-2, 2);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (int k = 0; k < 10000; ++k) {
      auto r = scalar_submodularity_inequality(AbsPower{p}, d(rng), d(rng), d(rng), d(rng));
      ASSERT_TRUE(r.pass) << "p=" << p << " lhs=" << r.lhs << " rhs=" << r.rhs;
    }
  }
}

}  // namespace
}  // namespace lob
