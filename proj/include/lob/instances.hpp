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

// Seeded random instance generators. Every draw goes through Rng, which maps
// mt19937_64 output to doubles by bit manipulation instead of the
// implementation-defined std distributions, so a seed reproduces the same
// instances on every standard library.

#ifndef LOB_INSTANCES_HPP_
#define LOB_INSTANCES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lob/energies.hpp"
#include "lob/lattice.hpp"
#include "lob/metric.hpp"

namespace lob {

class Rng {
 public:
  static constexpr const char* kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool bernoulli(double p) { return uniform() < p; }

  LatticeVec vec(std::size_t n, double a, double b) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(a, b);
    return LatticeVec(std::move(v));
  }

 private:
  std::mt19937_64 engine_;
};

/// Connected random graph: a random spanning tree plus extra edges with probability
/// `extra`, weights uniform in [0.5, 2].
inline std::vector<GraphEdge> random_connected_graph(Rng& rng, std::size_t n, double extra = 0.15) {
  std::vector<GraphEdge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({rng.below(v), v, rng.uniform(0.5, 2.0)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j)
      if (rng.bernoulli(extra)) edges.push_back({i, j, rng.uniform(0.5, 2.0)});
  return edges;
}

/// Graph Laplacian + positive diagonal shift (a nonsingular M-matrix) with a random linear term.
inline QuadraticEnergy random_submodular_quadratic(Rng& rng, std::size_t n) {
  auto edges = random_connected_graph(rng, n);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, rng.uniform(0.01, 1.0)});
  for (const auto& e : edges) {
    t.push_back({e.i, e.i, e.w});
    t.push_back({e.j, e.j, e.w});
    t.push_back({e.i, e.j, -e.w});
    t.push_back({e.j, e.i, -e.w});
  }
  return QuadraticEnergy(n, t, rng.vec(n, -2.0, 2.0));
}

/// Feasible box: lo ∈ [−1, 0.5], width ∈ [0, 1.5]; a few degenerate (lo = hi) entries
/// and, with `one_sided`, occasionally a missing side.
inline OrderInterval random_box(Rng& rng, std::size_t n, bool one_sided = true) {
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = rng.uniform(-1.0, 0.5);
    hi[i] = rng.bernoulli(0.1) ? lo[i] : lo[i] + rng.uniform(0.0, 1.5);
  }
  if (one_sided) {
    const double r = rng.uniform();
    if (r < 0.1) {
      std::fill(hi.begin(), hi.end(), kBigBound);
    } else if (r < 0.2) {
      std::fill(lo.begin(), lo.end(), -kBigBound);
    }
  }
  return OrderInterval(LatticeVec(std::move(lo)), LatticeVec(std::move(hi)));
}

/// Symmetric matrix with diagonal in [1, 3] and off-diagonal entries in [−1, 1]
/// shifted by `bias`; not necessarily PSD.
inline SparseSymmetric random_symmetric(Rng& rng, std::size_t n, double bias) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, rng.uniform(1.0, 3.0)});
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform(-1.0, 1.0) + bias;
      t.push_back({i, j, v});
      t.push_back({j, i, v});
    }
  }
  return SparseSymmetric(n, t);
}

/// n points uniform in the unit square, Euclidean metric.
inline FiniteMetricSpace random_planar_space(Rng& rng, std::size_t n) {
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  return FiniteMetricSpace::from_points(pts);
}

/// φ^{cc} of a uniform random φ on [−scale, scale].
inline LatticeVec random_c_concave(Rng& rng, const FiniteMetricSpace& x, double scale) {
  auto phi = rng.vec(x.size(), -scale, scale);
  return c_transform(x, c_transform(x, phi));
}

/// Smooth obstacle pair on n points: lo_k = a sin(2πf k/(n+1) + θ) − c, hi = lo + gap.
inline OrderInterval random_smooth_box(Rng& rng, std::size_t n) {
  const double a = rng.uniform(0.1, 0.8);
  const double f = rng.uniform(0.5, 2.0);
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double c = rng.uniform(-0.3, 0.3);
  const double gap = rng.uniform(0.05, 0.6);
  const double gap_wave = rng.uniform(0.0, 0.4);
  std::vector<double> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k + 1) / static_cast<double>(n + 1);
    lo[k] = a * std::sin(2.0 * std::numbers::pi * f * x + theta) - c;
    hi[k] = lo[k] + gap * (1.0 + gap_wave * std::cos(2.0 * std::numbers::pi * x));
  }
  return OrderInterval(LatticeVec(std::move(lo)), LatticeVec(std::move(hi)));
}

}  // namespace lob

#endif  // LOB_INSTANCES_HPP_
