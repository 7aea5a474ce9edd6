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

// Finite metric spaces, the Hopf–Lax operator
//
//   (Q_t ψ)(x) = min_y d²(x, y) / (2t) + ψ(y),
//
// and the c-transform ψ^c = Q_1(−ψ) for the cost c = d²/2.

#ifndef LOB_METRIC_HPP_
#define LOB_METRIC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lob/energies.hpp"
#include "lob/error.hpp"
#include "lob/lattice.hpp"

namespace lob {

/// n points with a symmetric distance matrix satisfying the metric axioms.
/// The triangle inequality is checked on every triple for n <= 200 and on a
/// fixed pseudo-random sample of triples above that.
class FiniteMetricSpace {
 public:
  static constexpr std::size_t kExhaustiveTriangleCheck = 200;

  FiniteMetricSpace(std::size_t n, std::vector<double> distances) : n_(n), d_(std::move(distances)) {
    if (n_ == 0) throw ConstructionError("FiniteMetricSpace: needs at least one point");
    if (d_.size() != n_ * n_) throw ConstructionError("FiniteMetricSpace: distance matrix must be n x n");
    validate();
  }

  /// Row-major strict lower triangle: d(1,0), d(2,0), d(2,1), d(3,0), …
  /// A triangle that includes the (zero) diagonal is also accepted.
  static FiniteMetricSpace from_lower_triangle(std::size_t n, const std::vector<double>& tri) {
    const std::size_t strict = n * (n - 1) / 2;
    const std::size_t with_diag = n * (n + 1) / 2;
    const bool has_diag = tri.size() == with_diag;
    if (tri.size() != strict && !has_diag) {
      throw ConstructionError("FiniteMetricSpace: lower triangle has wrong length");
    }
    std::vector<double> d(n * n, 0.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j, ++k) {
        d[i * n + j] = tri[k];
        d[j * n + i] = tri[k];
      }
      if (has_diag) {
        if (tri[k] != 0.0) throw ConstructionError("FiniteMetricSpace: nonzero diagonal entry");
        ++k;
      }
    }
    return FiniteMetricSpace(n, std::move(d));
  }

  /// Euclidean distances between planar points.
  static FiniteMetricSpace from_points(const std::vector<std::array<double, 2>>& pts) {
    const std::size_t n = pts.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    return FiniteMetricSpace(n, std::move(d));
  }

  std::size_t size() const { return n_; }
  double distance(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  const std::vector<double>& distances() const { return d_; }

 private:
  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (distance(i, i) != 0.0) throw ConstructionError("FiniteMetricSpace: d(x, x) must be 0");
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double a = distance(i, j);
        if (!std::isfinite(a) || !(a > 0.0)) {
          throw ConstructionError("FiniteMetricSpace: distinct points need a finite positive distance");
        }
        if (a != distance(j, i)) throw ConstructionError("FiniteMetricSpace: distance matrix not symmetric");
      }
    }
    auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
      const double via = distance(i, k) + distance(k, j);
      if (distance(i, j) > via * (1.0 + 1e-12)) {
        throw ConstructionError("FiniteMetricSpace: triangle inequality fails for (" + std::to_string(i) + ", " +
                                std::to_string(j) + ", " + std::to_string(k) + ")");
      }
    };
    if (n_ <= kExhaustiveTriangleCheck) {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          for (std::size_t k = 0; k < n_; ++k) check(i, j, k);
      return;
    }
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    auto next = [&]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return static_cast<std::size_t>(state % n_);
    };
    for (std::size_t s = 0; s < 200 * n_; ++s) check(next(), next(), next());
  }

  std::size_t n_;
  std::vector<double> d_;
};

/// Weighted graph whose metric is the shortest-path distance (edge weights are lengths)
/// and whose Dirichlet energy uses conductance 1/length² on every edge.
class GraphSpace {
 public:
  GraphSpace(std::size_t nodes, std::vector<GraphEdge> edges)
      : nodes_(nodes),
        edges_(std::move(edges)),
        metric_(nodes_, shortest_paths(nodes_, edges_)),
        energy_(graph_dirichlet(nodes_, conductances(edges_))) {}

  std::size_t size() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const FiniteMetricSpace& metric() const { return metric_; }
  /// Neumann graph Laplacian energy ½ Σ (u_i − u_j)² / len_ij² (no pinned nodes).
  const QuadraticEnergy& energy() const { return energy_; }

  static GraphSpace path(std::size_t n, double length = 1.0) {
    std::vector<GraphEdge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, length});
    return GraphSpace(n, std::move(e));
  }

  /// rows × cols lattice graph, node index r * cols + c.
  static GraphSpace grid(std::size_t rows, std::size_t cols, double length = 1.0) {
    std::vector<GraphEdge> e;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t v = r * cols + c;
        if (c + 1 < cols) e.push_back({v, v + 1, length});
        if (r + 1 < rows) e.push_back({v, v + cols, length});
      }
    return GraphSpace(rows * cols, std::move(e));
  }

 private:
  static std::vector<double> shortest_paths(std::size_t n, const std::vector<GraphEdge>& edges) {
    detail::validate_edges(n, edges);
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const auto& e : edges) {
      adj[e.i].push_back({e.j, e.w});
      adj[e.j].push_back({e.i, e.w});
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, inf);
    using Item = std::pair<double, std::size_t>;
    for (std::size_t s = 0; s < n; ++s) {
      double* row = d.data() + s * n;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      row[s] = 0.0;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [dist, v] = pq.top();
        pq.pop();
        if (dist > row[v]) continue;
        for (auto [w, len] : adj[v]) {
          if (dist + len < row[w]) {
            row[w] = dist + len;
            pq.push({row[w], w});
          }
        }
      }
    }
    for (double x : d)
      if (!std::isfinite(x)) throw ConstructionError("GraphSpace: graph is not connected");
    // Dijkstra from each end can differ in the last ulp; symmetrize.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double m = std::min(d[i * n + j], d[j * n + i]);
        d[i * n + j] = d[j * n + i] = m;
      }
    return d;
  }

  static std::vector<GraphEdge> conductances(const std::vector<GraphEdge>& edges) {
    std::vector<GraphEdge> out = edges;
    for (auto& e : out) e.w = 1.0 / (e.w * e.w);
    return out;
  }

  std::size_t nodes_;
  std::vector<GraphEdge> edges_;
  FiniteMetricSpace metric_;
  QuadraticEnergy energy_;
};

/// (Q_t ψ)(x) = min_y d²(x,y)/(2t) + ψ(y). Requires t > 0.
inline LatticeVec hopf_lax(const FiniteMetricSpace& x, const LatticeVec& psi, double t) {
  detail::require_same_size(x.size(), psi.size(), "hopf_lax");
  if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("hopf_lax: t must be > 0");
  const std::size_t n = x.size();
  std::vector<double> out(n);
  const double inv = 1.0 / (2.0 * t);
  for (std::size_t i = 0; i < n; ++i) {
    double best = psi[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double d = x.distance(i, j);
      best = std::min(best, d * d * inv + psi[j]);
    }
    out[i] = best;
  }
  return LatticeVec(std::move(out));
}

/// ψ^c = Q_1(−ψ).
inline LatticeVec c_transform(const FiniteMetricSpace& x, const LatticeVec& psi) { return hopf_lax(x, -psi, 1.0); }

/// ‖φ^{cc} − φ‖_∞ ≤ tol. On a finite space φ^{cc} ≥ φ, with equality iff φ is c-concave.
inline CheckResult is_c_concave(const FiniteMetricSpace& x, const LatticeVec& phi, double tol) {
  const double defect = max_norm(c_transform(x, c_transform(x, phi)) - phi);
  return {defect <= tol, defect};
}

/// min_x Q_t(−φ)(x) + Q_{1−t}(−φ^c)(x) ≥ −tol. Returns the minimum as `value`.
inline CheckResult interpolation_duality_check(const FiniteMetricSpace& x, const LatticeVec& phi, double t,
                                               double tol) {
  if (!(t > 0.0 && t < 1.0)) throw PreconditionError("interpolation_duality_check: t must lie in (0, 1)");
  const auto forward = hopf_lax(x, -phi, t);
  const auto backward = hopf_lax(x, -c_transform(x, phi), 1.0 - t);
  const double slack = min_entry(forward + backward);
  return {slack >= -tol, slack};
}

/// max_{x≠y} |v_x − v_y| / d(x, y); 0 for a single point.
inline double metric_lipschitz(const FiniteMetricSpace& x, const LatticeVec& v) {
  detail::require_same_size(x.size(), v.size(), "metric_lipschitz");
  double lip = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) lip = std::max(lip, std::abs(v[i] - v[j]) / x.distance(i, j));
  return lip;
}

}  // namespace lob

#endif  // LOB_METRIC_HPP_
