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

// Convex submodular energies on R^n.
//
//   QuadraticEnergy   E(u) = ½<Au,u> + <b,u>, A symmetric PSD (sparse)
//   KernelEnergy      E(u) = (1/p)[Σ w_ij |u_i − u_j|^p + Σ d_i |u_i|^p]
//
// The discrete Laplacian of u is Δu := −∇E(u).

#ifndef LOB_ENERGIES_HPP_
#define LOB_ENERGIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lob/detail/dense.hpp"
#include "lob/error.hpp"
#include "lob/lattice.hpp"

namespace lob {

struct Triplet {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

/// Symmetric sparse matrix in CSR form. Duplicate triplets are summed.
class SparseSymmetric {
 public:
  static constexpr double kSymmetryTol = 1e-12;

  SparseSymmetric(std::size_t n, const std::vector<Triplet>& triplets) : n_(n), diag_(n, 0.0) {
    if (n == 0) throw ConstructionError("SparseSymmetric: dimension must be >= 1");
    std::map<std::pair<std::size_t, std::size_t>, double> entries;
    for (const auto& t : triplets) {
      if (t.i >= n || t.j >= n) throw ConstructionError("SparseSymmetric: index out of range");
      if (!std::isfinite(t.value)) throw ConstructionError("SparseSymmetric: non-finite entry");
      entries[{t.i, t.j}] += t.value;
    }
    for (const auto& [key, value] : entries) {
      const auto [i, j] = key;
      if (i == j) continue;
      auto it = entries.find({j, i});
      const double mirror = it == entries.end() ? 0.0 : it->second;
      if (std::abs(value - mirror) > kSymmetryTol) {
        throw ConstructionError("SparseSymmetric: not symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
    }
    row_ptr_.assign(n + 1, 0);
    for (const auto& [key, value] : entries) ++row_ptr_[key.first + 1];
    for (std::size_t i = 0; i < n; ++i) row_ptr_[i + 1] += row_ptr_[i];
    cols_.reserve(entries.size());
    vals_.reserve(entries.size());
    for (const auto& [key, value] : entries) {  // map order is row-major
      cols_.push_back(key.second);
      vals_.push_back(value);
      if (key.first == key.second) diag_[key.first] = value;
    }
  }

  std::size_t size() const { return n_; }
  double diagonal(std::size_t i) const { return diag_[i]; }

  /// Calls f(j, a_ij) for every stored entry of row i (diagonal included).
  template <class F>
  void for_row(std::size_t i, F&& f) const {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) f(cols_[k], vals_[k]);
  }

  /// (A u)_i
  double row_dot(std::size_t i, std::span<const double> u) const {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += vals_[k] * u[cols_[k]];
    return acc;
  }

  std::vector<double> multiply(std::span<const double> u) const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = row_dot(i, u);
    return out;
  }

  /// Every off-diagonal entry is <= 0.
  bool is_z_matrix() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (cols_[k] != i && vals_[k] > 0.0) return false;
    return true;
  }

  /// |a_ii| > Σ_{j≠i} |a_ij| for every row.
  bool is_strictly_diagonally_dominant() const {
    for (std::size_t i = 0; i < n_; ++i) {
      double off = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (cols_[k] != i) off += std::abs(vals_[k]);
      if (!(std::abs(diag_[i]) > off)) return false;
    }
    return true;
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(vals_.size());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) out.push_back({i, cols_[k], vals_[k]});
    return out;
  }

  detail::DenseMatrix to_dense() const {
    detail::DenseMatrix d(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d(i, cols_[k]) = vals_[k];
    return d;
  }

  double entry(std::size_t i, std::size_t j) const {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (cols_[k] == j) return vals_[k];
    return 0.0;
  }

 private:
  std::size_t n_;
  std::vector<double> diag_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

/// ½<Au,u>, treating a bare symmetric matrix as a quadratic form.
inline double energy_value(const SparseSymmetric& a, const LatticeVec& u) {
  detail::require_same_size(a.size(), u.size(), "energy_value");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * a.row_dot(i, u.values());
  return 0.5 * acc;
}

/// E(u) = ½<Au,u> + <b,u> with A symmetric positive semidefinite.
class QuadraticEnergy {
 public:
  /// Throws ConstructionError unless A is symmetric and passes pivoted-Cholesky PSD certification.
  QuadraticEnergy(SparseSymmetric a, std::optional<LatticeVec> b = std::nullopt)
      : a_(std::move(a)), b_(b ? std::move(*b) : LatticeVec::zeros(a_.size())) {
    detail::require_same_size<ConstructionError>(a_.size(), b_.size(), "QuadraticEnergy");
    if (!detail::is_positive_semidefinite(a_.to_dense())) {
      throw ConstructionError("QuadraticEnergy: matrix is not positive semidefinite");
    }
    submodular_ = a_.is_z_matrix();
  }

  QuadraticEnergy(std::size_t n, const std::vector<Triplet>& triplets, std::optional<LatticeVec> b = std::nullopt)
      : QuadraticEnergy(SparseSymmetric(n, triplets), std::move(b)) {}

  std::size_t size() const { return a_.size(); }
  const SparseSymmetric& matrix() const { return a_; }
  const LatticeVec& linear_term() const { return b_; }
  bool submodular() const { return submodular_; }

  /// Same matrix, different linear term. Skips re-certification.
  QuadraticEnergy with_linear_term(LatticeVec b) const {
    detail::require_same_size(size(), b.size(), "with_linear_term");
    QuadraticEnergy e = *this;
    e.b_ = std::move(b);
    return e;
  }

 private:
  SparseSymmetric a_;
  LatticeVec b_;
  bool submodular_ = false;
};

inline double energy_value(const QuadraticEnergy& e, const LatticeVec& u) {
  return energy_value(e.matrix(), u) + dot(e.linear_term(), u);
}

inline LatticeVec energy_gradient(const QuadraticEnergy& e, const LatticeVec& u) {
  detail::require_same_size(e.size(), u.size(), "energy_gradient");
  auto g = e.matrix().multiply(u.values());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += e.linear_term()[i];
  return LatticeVec(std::move(g));
}

struct KernelPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 0.0;
};

struct ExteriorWeight {
  std::size_t i = 0;
  double d = 0.0;
};

/// E(u) = (1/p)[Σ_pairs w_ij |u_i − u_j|^p + Σ_exterior d_i |u_i|^p].
class KernelEnergy {
 public:
  KernelEnergy(std::size_t n, std::vector<KernelPair> pairs, std::vector<ExteriorWeight> exterior, double p)
      : n_(n), pairs_(std::move(pairs)), exterior_(std::move(exterior)), p_(p) {
    if (n_ == 0) throw ConstructionError("KernelEnergy: dimension must be >= 1");
    if (!(p_ > 1.0) || !std::isfinite(p_)) throw ConstructionError("KernelEnergy: exponent p must be > 1");
    for (const auto& pr : pairs_) {
      if (!(pr.i < pr.j) || pr.j >= n_) throw ConstructionError("KernelEnergy: pair indices must satisfy i < j < n");
      if (!(pr.w > 0.0) || !std::isfinite(pr.w)) throw ConstructionError("KernelEnergy: pair weights must be > 0");
    }
    for (const auto& ex : exterior_) {
      if (ex.i >= n_) throw ConstructionError("KernelEnergy: exterior index out of range");
      if (!(ex.d >= 0.0) || !std::isfinite(ex.d)) throw ConstructionError("KernelEnergy: exterior weights must be >= 0");
    }
  }

  std::size_t size() const { return n_; }
  double exponent() const { return p_; }
  const std::vector<KernelPair>& pairs() const { return pairs_; }
  const std::vector<ExteriorWeight>& exterior() const { return exterior_; }

  /// Convex and submodular for every p > 1.
  bool submodular() const { return true; }

 private:
  std::size_t n_;
  std::vector<KernelPair> pairs_;
  std::vector<ExteriorWeight> exterior_;
  double p_;
};

inline double energy_value(const KernelEnergy& e, const LatticeVec& u) {
  detail::require_same_size(e.size(), u.size(), "energy_value");
  const double p = e.exponent();
  double acc = 0.0;
  for (const auto& pr : e.pairs()) acc += pr.w * std::pow(std::abs(u[pr.i] - u[pr.j]), p);
  for (const auto& ex : e.exterior()) acc += ex.d * std::pow(std::abs(u[ex.i]), p);
  return acc / p;
}

/// False only for p < 2 when some coupled difference (or exterior value) is exactly 0.
inline bool is_differentiable_at(const KernelEnergy& e, const LatticeVec& u) {
  if (e.exponent() >= 2.0) return true;
  for (const auto& pr : e.pairs())
    if (u[pr.i] == u[pr.j]) return false;
  for (const auto& ex : e.exterior())
    if (ex.d > 0.0 && u[ex.i] == 0.0) return false;
  return true;
}

inline bool is_differentiable_at(const QuadraticEnergy&, const LatticeVec&) { return true; }

inline LatticeVec energy_gradient(const KernelEnergy& e, const LatticeVec& u) {
  detail::require_same_size(e.size(), u.size(), "energy_gradient");
  if (!is_differentiable_at(e, u)) {
    throw NonDifferentiableError("KernelEnergy: gradient undefined for p < 2 at a tied difference");
  }
  const double p = e.exponent();
  // |x|^{p-2} x
  auto dpow = [p](double x) { return p == 2.0 ? x : std::pow(std::abs(x), p - 2.0) * x; };
  std::vector<double> g(e.size(), 0.0);
  for (const auto& pr : e.pairs()) {
    const double f = pr.w * dpow(u[pr.i] - u[pr.j]);
    g[pr.i] += f;
    g[pr.j] -= f;
  }
  for (const auto& ex : e.exterior()) g[ex.i] += ex.d * dpow(u[ex.i]);
  return LatticeVec(std::move(g));
}

/// For p = 2: the equivalent QuadraticEnergy, A_ij = −w_ij, A_ii = Σ_j w_ij + d_i.
inline QuadraticEnergy to_quadratic(const KernelEnergy& e) {
  if (e.exponent() != 2.0) throw PreconditionError("to_quadratic: requires p = 2");
  std::vector<Triplet> t;
  t.reserve(3 * e.pairs().size() + e.exterior().size());
  for (const auto& pr : e.pairs()) {
    t.push_back({pr.i, pr.j, -pr.w});
    t.push_back({pr.j, pr.i, -pr.w});
    t.push_back({pr.i, pr.i, pr.w});
    t.push_back({pr.j, pr.j, pr.w});
  }
  for (const auto& ex : e.exterior()) t.push_back({ex.i, ex.i, ex.d});
  return QuadraticEnergy(e.size(), t);
}

using Energy = std::variant<QuadraticEnergy, KernelEnergy>;

inline std::size_t dimension_of(const QuadraticEnergy& e) { return e.size(); }
inline std::size_t dimension_of(const KernelEnergy& e) { return e.size(); }
inline std::size_t dimension_of(const Energy& e) {
  return std::visit([](const auto& x) { return x.size(); }, e);
}
inline double energy_value(const Energy& e, const LatticeVec& u) {
  return std::visit([&](const auto& x) { return energy_value(x, u); }, e);
}
inline LatticeVec energy_gradient(const Energy& e, const LatticeVec& u) {
  return std::visit([&](const auto& x) { return energy_gradient(x, u); }, e);
}
inline bool is_differentiable_at(const Energy& e, const LatticeVec& u) {
  return std::visit([&](const auto& x) { return is_differentiable_at(x, u); }, e);
}
inline bool is_submodular(const Energy& e) {
  return std::visit([](const auto& x) { return x.submodular(); }, e);
}

// ---------------------------------------------------------------------------
// Builders

struct GraphEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 0.0;
};

namespace detail {

inline std::vector<std::size_t> free_index_map(std::size_t nodes, const std::vector<std::size_t>& dirichlet_set,
                                               std::vector<std::size_t>* free_nodes) {
  constexpr std::size_t kPinned = static_cast<std::size_t>(-1);
  std::vector<bool> pinned(nodes, false);
  for (std::size_t v : dirichlet_set) {
    if (v >= nodes) throw ConstructionError("graph_dirichlet: dirichlet node out of range");
    pinned[v] = true;
  }
  std::vector<std::size_t> map(nodes, kPinned);
  std::size_t next = 0;
  for (std::size_t v = 0; v < nodes; ++v) {
    if (pinned[v]) continue;
    map[v] = next++;
    if (free_nodes) free_nodes->push_back(v);
  }
  if (next == 0) throw ConstructionError("graph_dirichlet: every node is in the dirichlet set");
  return map;
}

inline void validate_edges(std::size_t nodes, const std::vector<GraphEdge>& edges) {
  for (const auto& e : edges) {
    if (e.i >= nodes || e.j >= nodes) throw ConstructionError("graph_dirichlet: edge endpoint out of range");
    if (e.i == e.j) throw ConstructionError("graph_dirichlet: self-loop at node " + std::to_string(e.i));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw ConstructionError("graph_dirichlet: edge weight must be > 0");
  }
}

}  // namespace detail

/// Nodes not in `dirichlet_set`, ascending. This is the index order of graph_dirichlet's unknowns.
inline std::vector<std::size_t> free_nodes(std::size_t nodes, const std::vector<std::size_t>& dirichlet_set) {
  std::vector<std::size_t> out;
  detail::free_index_map(nodes, dirichlet_set, &out);
  return out;
}

/// Dirichlet energy ½ Σ_edges w (u_i − u_j)² with u = 0 on `dirichlet_set`.
/// The unknowns are the free nodes in ascending order; A is the graph Laplacian
/// with the dirichlet rows and columns deleted.
inline QuadraticEnergy graph_dirichlet(std::size_t nodes, const std::vector<GraphEdge>& edges,
                                       const std::vector<std::size_t>& dirichlet_set = {}) {
  detail::validate_edges(nodes, edges);
  constexpr std::size_t kPinned = static_cast<std::size_t>(-1);
  const auto map = detail::free_index_map(nodes, dirichlet_set, nullptr);
  const std::size_t n = static_cast<std::size_t>(std::count_if(map.begin(), map.end(), [](std::size_t k) { return k != kPinned; }));
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < n; ++k) t.push_back({k, k, 0.0});
  for (const auto& e : edges) {
    const std::size_t a = map[e.i];
    const std::size_t b = map[e.j];
    if (a != kPinned) t.push_back({a, a, e.w});
    if (b != kPinned) t.push_back({b, b, e.w});
    if (a != kPinned && b != kPinned) {
      t.push_back({a, b, -e.w});
      t.push_back({b, a, -e.w});
    }
  }
  return QuadraticEnergy(n, t);
}

/// graph_dirichlet plus the linear term b = A_interface · g that imposes u = g on
/// `boundary_nodes`. Minimizing over an unbounded box gives the harmonic extension of g.
inline QuadraticEnergy harmonic_extension_problem(std::size_t nodes, const std::vector<GraphEdge>& edges,
                                                  const std::vector<std::size_t>& boundary_nodes,
                                                  const LatticeVec& boundary_values) {
  detail::require_same_size(boundary_nodes.size(), boundary_values.size(), "harmonic_extension_problem");
  constexpr std::size_t kPinned = static_cast<std::size_t>(-1);
  auto e = graph_dirichlet(nodes, edges, boundary_nodes);
  const auto map = detail::free_index_map(nodes, boundary_nodes, nullptr);
  std::vector<double> g(nodes, 0.0);
  for (std::size_t k = 0; k < boundary_nodes.size(); ++k) g[boundary_nodes[k]] = boundary_values[k];
  std::vector<double> b(e.size(), 0.0);
  for (const auto& ed : edges) {
    const std::size_t a = map[ed.i];
    const std::size_t c = map[ed.j];
    if (a != kPinned && c == kPinned) b[a] -= ed.w * g[ed.j];
    if (c != kPinned && a == kPinned) b[c] -= ed.w * g[ed.i];
  }
  return e.with_linear_term(LatticeVec(std::move(b)));
}

/// Truncated 1-D fractional Gagliardo energy on n interior points x_k = k h (k = 1..n),
/// zero-extended onto a collar of `collar` points on each side:
///   w_ij = h² (h|i−j|)^{−(1+ps)},   d_i = h² Σ_{y in collar} (h|i−y|)^{−(1+ps)}.
/// The neglected tail per endpoint is Σ_{m > collar + n} m^{−(1+ps)} (in units of h^{1−ps}).
inline KernelEnergy fractional_kernel_1d(std::size_t n, double h, double s, double p, std::size_t collar) {
  if (n == 0) throw ConstructionError("fractional_kernel_1d: n must be >= 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConstructionError("fractional_kernel_1d: h must be > 0");
  if (!(s > 0.0 && s < 1.0)) throw ConstructionError("fractional_kernel_1d: s must lie in (0, 1)");
  if (!(p > 1.0) || !std::isfinite(p)) throw ConstructionError("fractional_kernel_1d: p must be > 1");
  if (collar == 0) throw ConstructionError("fractional_kernel_1d: collar must be >= 1");
  const double expo = -(1.0 + p * s);
  const double h2 = h * h;
  auto kernel = [&](double steps) { return h2 * std::pow(h * steps, expo); };

  std::vector<KernelPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j, kernel(static_cast<double>(j - i))});

  std::vector<ExteriorWeight> exterior;
  exterior.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Interior point k = i + 1; left collar y = 0, −1, …; right collar y = n+1, n+2, ….
    const double k = static_cast<double>(i + 1);
    const double to_right = static_cast<double>(n + 1) - k;
    double d = 0.0;
    for (std::size_t m = 0; m < collar; ++m) {
      d += kernel(k + static_cast<double>(m));
      d += kernel(to_right + static_cast<double>(m));
    }
    exterior.push_back({i, d});
  }
  return KernelEnergy(n, std::move(pairs), std::move(exterior), p);
}

// ---------------------------------------------------------------------------
// Structural checks

struct CheckResult {
  bool pass = false;
  double value = 0.0;
};

/// δ = E(u∧v) + E(u∨v) − E(u) − E(v); passes iff δ ≤ tol.
template <class E>
CheckResult submodularity_check(const E& e, const LatticeVec& u, const LatticeVec& v, double tol = 0.0) {
  detail::require_same_size(u.size(), v.size(), "submodularity_check");
  const double delta =
      energy_value(e, meet(u, v)) + energy_value(e, join(u, v)) - energy_value(e, u) - energy_value(e, v);
  return {delta <= tol, delta};
}

/// μ = <∇E(u) − ∇E(v), (u − v)∨0>; passes iff μ ≥ −tol.
template <class E>
CheckResult t_monotonicity_check(const E& e, const LatticeVec& u, const LatticeVec& v, double tol = 0.0) {
  detail::require_same_size(u.size(), v.size(), "t_monotonicity_check");
  if (!is_differentiable_at(e, u) || !is_differentiable_at(e, v)) {
    throw NonDifferentiableError("t_monotonicity_check: energy not differentiable at u or v");
  }
  const double mu = dot(energy_gradient(e, u) - energy_gradient(e, v), positive_part(u - v));
  return {mu >= -tol, mu};
}

struct ZMatrixWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  LatticeVec u;  // e_i
  LatticeVec v;  // e_j
  double delta = 0.0;  // = a_ij
};

/// Finds the largest off-diagonal entry above `tol` and the pair (e_i, e_j) on which
/// the quadratic form ½<Au,u> violates submodularity by exactly a_ij.
inline std::optional<ZMatrixWitness> z_matrix_violation(const SparseSymmetric& a, double tol = 1e-12) {
  std::optional<ZMatrixWitness> best;
  double worst = tol;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.for_row(i, [&](std::size_t j, double v) {
      if (j > i && v > worst) {
        worst = v;
        std::vector<double> ei(a.size(), 0.0), ej(a.size(), 0.0);
        ei[i] = 1.0;
        ej[j] = 1.0;
        best = ZMatrixWitness{i, j, LatticeVec(std::move(ei)), LatticeVec(std::move(ej)), v};
      }
    });
  }
  return best;
}

struct AbsPower {
  double p = 2.0;
  double operator()(double x) const { return std::pow(std::abs(x), p); }
};

struct ScalarInequalityResult {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// f(x1−x2) + f(y1−y2) ≥ f(x1∨y1 − x2∨y2) + f(x1∧y1 − x2∧y2) for f = |·|^p, p ≥ 1.
inline ScalarInequalityResult scalar_submodularity_inequality(AbsPower f, double x1, double x2, double y1,
                                                              double y2, double tol = 1e-12) {
  if (!(f.p >= 1.0)) throw PreconditionError("scalar_submodularity_inequality: p must be >= 1");
  const double lhs = f(x1 - x2) + f(y1 - y2);
  const double rhs = f(std::max(x1, y1) - std::max(x2, y2)) + f(std::min(x1, y1) - std::min(x2, y2));
  return {lhs >= rhs - tol, lhs, rhs};
}

}  // namespace lob

#endif  // LOB_ENERGIES_HPP_
