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

// Minimization of a convex energy over an order interval [lo, hi]:
//
//   solve_psor                 projected SOR, quadratic energies with A_ii > 0
//   solve_projected_gradient   projected gradient + Armijo backtracking
//   brute_force_active_set     enumerates all 3^n activity patterns (n <= 12)
//
// Sides at ±kBigBound are one-sided problems: never active, never pinned.

#ifndef LOB_SOLVERS_HPP_
#define LOB_SOLVERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lob/detail/dense.hpp"
#include "lob/energies.hpp"
#include "lob/error.hpp"
#include "lob/lattice.hpp"

namespace lob {

/// Called after every sweep / step with the iteration count and current iterate.
using IterationObserver = std::function<void(std::size_t, const LatticeVec&)>;

struct SolverOptions {
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  double omega = 1.5;  // PSOR relaxation, in (0, 2)
  std::optional<LatticeVec> initial;  // default: clamp(0)
  IterationObserver observer;

  // Armijo line search (projected gradient).
  double armijo_initial_step = 1.0;
  double armijo_shrink = 0.5;
  double armijo_sufficient_decrease = 1e-4;
  double armijo_step_floor = 1e-14;
};

struct Solution {
  LatticeVec u;
  LatticeVec grad;
  std::vector<std::size_t> active_lower;
  std::vector<std::size_t> active_upper;
  std::vector<std::size_t> free_set;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

enum class Activity { kLower, kUpper, kFree };

namespace detail {

inline bool near_bound(double u, double bound) { return std::abs(u - bound) <= 1e-9 * (1.0 + std::abs(bound)); }

}  // namespace detail

/// Active when |u_i − bound_i| ≤ 1e−9(1 + |bound_i|); lower wins ties. Absent sides never activate.
inline Activity classify(const OrderInterval& box, const LatticeVec& u, std::size_t i) {
  const double lo = box.lo()[i];
  const double hi = box.hi()[i];
  if (lo > -kBigBound && detail::near_bound(u[i], lo)) return Activity::kLower;
  if (hi < kBigBound && detail::near_bound(u[i], hi)) return Activity::kUpper;
  return Activity::kFree;
}

/// KKT residual given a precomputed gradient. Same contract as kkt_residual.
inline double kkt_residual_from_gradient(const OrderInterval& box, const LatticeVec& u, const LatticeVec& grad) {
  detail::require_same_size(box.size(), u.size(), "kkt_residual");
  detail::require_same_size(u.size(), grad.size(), "kkt_residual");
  if (!box.contains(u)) throw PreconditionError("kkt_residual: u lies outside the box");
  double res = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    // Pinned: within tolerance of both sides (lo = hi up to rounding), any gradient is admissible.
    if (box.lo()[i] == box.hi()[i] ||
        (detail::near_bound(u[i], box.lo()[i]) && detail::near_bound(u[i], box.hi()[i]))) {
      continue;
    }
    switch (classify(box, u, i)) {
      case Activity::kLower: res = std::max(res, -grad[i]); break;
      case Activity::kUpper: res = std::max(res, grad[i]); break;
      case Activity::kFree: res = std::max(res, std::abs(grad[i])); break;
    }
  }
  return res;
}

/// Max-norm violation of the first-order optimality conditions for min E over `box`.
template <class E>
double kkt_residual(const E& e, const OrderInterval& box, const LatticeVec& u) {
  return kkt_residual_from_gradient(box, u, energy_gradient(e, u));
}

namespace detail {

inline Solution make_solution(const OrderInterval& box, LatticeVec u, LatticeVec grad, std::size_t iterations,
                              double tol) {
  Solution s{std::move(u), std::move(grad), {}, {}, {}, 0.0, iterations, false};
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    switch (classify(box, s.u, i)) {
      case Activity::kLower: s.active_lower.push_back(i); break;
      case Activity::kUpper: s.active_upper.push_back(i); break;
      case Activity::kFree: s.free_set.push_back(i); break;
    }
  }
  s.kkt_residual = kkt_residual_from_gradient(box, s.u, s.grad);
  s.converged = s.kkt_residual <= tol;
  return s;
}

inline LatticeVec starting_point(const OrderInterval& box, const SolverOptions& opt) {
  if (opt.initial) {
    require_same_size(opt.initial->size(), box.size(), "initial guess");
    return clamp(*opt.initial, box);
  }
  return clamp(LatticeVec::zeros(box.size()), box);
}

}  // namespace detail

/// Projected SOR: u_i ← clamp(u_i − ω (Au + b)_i / A_ii), cyclic in index order.
/// Requires a Z-matrix or strictly diagonally dominant A with positive diagonal.
/// Returns converged = false (not an exception) when max_iter sweeps do not reach `tol`.
inline Solution solve_psor(const QuadraticEnergy& e, const OrderInterval& box, const SolverOptions& opt = {}) {
  detail::require_same_size(e.size(), box.size(), "solve_psor");
  if (!(opt.omega > 0.0 && opt.omega < 2.0)) throw PreconditionError("solve_psor: omega must lie in (0, 2)");
  const auto& a = e.matrix();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!(a.diagonal(i) > 0.0)) throw SolverError("solve_psor: non-positive diagonal entry at " + std::to_string(i));
  }
  if (!e.submodular() && !a.is_strictly_diagonally_dominant()) {
    throw PreconditionError("solve_psor: matrix is neither a Z-matrix nor strictly diagonally dominant");
  }

  std::vector<double> u = detail::starting_point(box, opt).vec();
  const auto& b = e.linear_term();
  const auto& lo = box.lo();
  const auto& hi = box.hi();

  std::size_t sweeps = 0;
  while (sweeps < opt.max_iter) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = a.row_dot(i, u) + b[i];
      u[i] = std::clamp(u[i] - opt.omega * r / a.diagonal(i), lo[i], hi[i]);
    }
    ++sweeps;
    LatticeVec iterate(u);
    if (opt.observer) opt.observer(sweeps, iterate);
    auto grad = energy_gradient(e, iterate);
    if (kkt_residual_from_gradient(box, iterate, grad) <= opt.tol) {
      return detail::make_solution(box, std::move(iterate), std::move(grad), sweeps, opt.tol);
    }
  }
  LatticeVec iterate(u);
  auto grad = energy_gradient(e, iterate);
  return detail::make_solution(box, std::move(iterate), std::move(grad), sweeps, opt.tol);
}

/// Projected gradient with Armijo backtracking:
///   u+ = clamp(u − α∇E(u)),  accept when E(u+) ≤ E(u) + c <∇E(u), u+ − u>.
/// Stops when ‖u − clamp(u − ∇E(u))‖_∞ ≤ tol. Energy is non-increasing along the iterates.
template <class E>
Solution solve_projected_gradient(const E& e, const OrderInterval& box, const SolverOptions& opt = {}) {
  detail::require_same_size(dimension_of(e), box.size(), "solve_projected_gradient");
  LatticeVec u = detail::starting_point(box, opt);
  if (!is_differentiable_at(e, u)) {
    throw PreconditionError("solve_projected_gradient: energy must be differentiable (p >= 2)");
  }
  double f = energy_value(e, u);
  LatticeVec g = energy_gradient(e, u);

  auto stationarity = [&](const LatticeVec& x, const LatticeVec& grad) {
    return max_norm(x - clamp(x - grad, box));
  };

  std::size_t it = 0;
  double pg = stationarity(u, g);
  while (pg > opt.tol && it < opt.max_iter) {
    double step = opt.armijo_initial_step;
    for (;;) {
      LatticeVec trial = clamp(u - step * g, box);
      const double predicted = dot(g, trial - u);
      const double ft = energy_value(e, trial);
      if (ft <= f + opt.armijo_sufficient_decrease * predicted && ft <= f) {
        u = std::move(trial);
        f = ft;
        break;
      }
      step *= opt.armijo_shrink;
      if (step < opt.armijo_step_floor) {
        throw SolverError("solve_projected_gradient: no energy decrease above the step floor");
      }
    }
    ++it;
    g = energy_gradient(e, u);
    if (opt.observer) opt.observer(it, u);
    pg = stationarity(u, g);
  }
  Solution s = detail::make_solution(box, std::move(u), std::move(g), it, opt.tol);
  // Convergence is judged by the projected-gradient norm for this solver.
  s.converged = pg <= opt.tol;
  return s;
}

/// Oracle: the KKT point found by enumerating every pattern (pinned low, pinned high,
/// free) and solving A_FF u_F = −b_F − A_FP u_P. Patterns with a singular free block
/// are skipped. For PSD A any KKT point is a global minimizer; the first one found
/// in enumeration order is returned.
inline Solution brute_force_active_set(const QuadraticEnergy& e, const OrderInterval& box) {
  constexpr std::size_t kMaxSize = 12;
  const std::size_t n = e.size();
  detail::require_same_size(n, box.size(), "brute_force_active_set");
  if (n > kMaxSize) throw SizeError("brute_force_active_set: n > 12");
  const auto& a = e.matrix();
  const auto& b = e.linear_term();
  const auto& lo = box.lo();
  const auto& hi = box.hi();

  // Allowed activities per index, in enumeration order.
  std::vector<std::vector<Activity>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > -kBigBound || lo[i] == hi[i]) choices[i].push_back(Activity::kLower);
    if (lo[i] == hi[i]) continue;
    if (hi[i] < kBigBound) choices[i].push_back(Activity::kUpper);
    choices[i].push_back(Activity::kFree);
  }

  double a_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) a.for_row(i, [&](std::size_t, double v) { a_scale = std::max(a_scale, std::abs(v)); });

  std::vector<std::size_t> digit(n, 0);
  std::size_t patterns = 0;
  for (;;) {
    ++patterns;
    std::vector<double> u(n, 0.0);
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < n; ++i) {
      switch (choices[i][digit[i]]) {
        case Activity::kLower: u[i] = lo[i]; break;
        case Activity::kUpper: u[i] = hi[i]; break;
        case Activity::kFree: free_idx.push_back(i); break;
      }
    }
    bool ok = true;
    if (!free_idx.empty()) {
      const std::size_t m = free_idx.size();
      detail::DenseMatrix aff(m);
      std::vector<double> rhs(m);
      std::vector<bool> is_free(n, false);
      for (std::size_t i : free_idx) is_free[i] = true;
      for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = free_idx[r];
        double acc = -b[i];
        a.for_row(i, [&](std::size_t j, double v) {
          if (!is_free[j]) acc -= v * u[j];
        });
        rhs[r] = acc;
        for (std::size_t c = 0; c < m; ++c) aff(r, c) = a.entry(i, free_idx[c]);
      }
      auto sol = detail::solve_linear(aff, rhs);
      if (!sol) {
        ok = false;
      } else {
        for (std::size_t r = 0; r < m && ok; ++r) {
          const std::size_t i = free_idx[r];
          const double x = (*sol)[r];
          const double lo_slack = 1e-10 * (1.0 + std::abs(lo[i]));
          const double hi_slack = 1e-10 * (1.0 + std::abs(hi[i]));
          if (x < lo[i] - lo_slack || x > hi[i] + hi_slack) ok = false;
          u[i] = std::clamp(x, lo[i], hi[i]);
        }
      }
    }
    if (ok) {
      double u_scale = 0.0;
      for (double x : u) u_scale = std::max(u_scale, std::abs(x));
      const double sign_tol = 1e-10 * (1.0 + max_norm(b) + a_scale * u_scale);
      std::vector<double> g = a.multiply(u);
      for (std::size_t i = 0; i < n; ++i) g[i] += b[i];
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (lo[i] == hi[i]) continue;
        switch (choices[i][digit[i]]) {
          case Activity::kLower: ok = g[i] >= -sign_tol; break;
          case Activity::kUpper: ok = g[i] <= sign_tol; break;
          case Activity::kFree: ok = std::abs(g[i]) <= sign_tol; break;
        }
      }
      if (ok) {
        LatticeVec uv(std::move(u));
        LatticeVec gv(std::move(g));
        Solution s = detail::make_solution(box, std::move(uv), std::move(gv), patterns, sign_tol);
        s.converged = true;
        return s;
      }
    }
    // Odometer increment.
    std::size_t k = 0;
    while (k < n) {
      if (++digit[k] < choices[k].size()) break;
      digit[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  throw SolverError("brute_force_active_set: no KKT point found");
}

}  // namespace lob

#endif  // LOB_SOLVERS_HPP_
