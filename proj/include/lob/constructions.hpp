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

// Double obstacle constructions on graph-backed metric spaces.
//
// Cut-off functions: ω ≡ 1 on C, ω ≡ 0 off Ω, bounded Laplacian. ω minimizes
// the Dirichlet energy between the distance-based obstacles
//
//   φ(x) = 1 − 1 ∧ d²(x, C) / (2r²),    ψ(x) = 1 ∧ d²(x, X∖Ω) / (2r²).
//
// Regularized Kantorovich potentials: for c-concave φ and t ∈ (0, 1), η_t
// minimizes the Dirichlet energy over [−Q_t(−φ), Q_{1−t}(−φ^c)].

#ifndef LOB_CONSTRUCTIONS_HPP_
#define LOB_CONSTRUCTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lob/certificates.hpp"
#include "lob/error.hpp"
#include "lob/lattice.hpp"
#include "lob/metric.hpp"
#include "lob/solvers.hpp"

namespace lob {

enum class CutoffRadius {
  kQuarter,  // r² = D₀²/4, guarantees φ ≤ ψ on every metric space
  kHalf,     // r² = D₀²/2, can put φ above ψ at metric midpoints
};

struct CutoffObstacles {
  LatticeVec phi;
  LatticeVec psi;
  double r2 = 0.0;
  double d0 = 0.0;  // min distance from C to X∖Ω
};

namespace detail {

inline std::vector<bool> membership(std::size_t n, const std::vector<std::size_t>& set, const char* what) {
  std::vector<bool> in(n, false);
  for (std::size_t v : set) {
    if (v >= n) throw PreconditionError(std::string(what) + ": index out of range");
    in[v] = true;
  }
  return in;
}

}  // namespace detail

/// The two distance profiles without the order check (so callers can measure
/// max(φ − ψ)). Throws PreconditionError on empty C, C ⊄ Ω or Ω = X.
inline CutoffObstacles cutoff_profiles(const FiniteMetricSpace& x, const std::vector<std::size_t>& core,
                                        const std::vector<std::size_t>& omega,
                                        CutoffRadius radius = CutoffRadius::kQuarter) {
  const std::size_t n = x.size();
  const auto in_c = detail::membership(n, core, "cutoff C");
  const auto in_omega = detail::membership(n, omega, "cutoff Omega");
  if (core.empty()) throw PreconditionError("cutoff: C is empty");
  for (std::size_t v = 0; v < n; ++v)
    if (in_c[v] && !in_omega[v]) throw PreconditionError("cutoff: C is not contained in Omega");
  if (std::all_of(in_omega.begin(), in_omega.end(), [](bool b) { return b; })) {
    throw PreconditionError("cutoff: X \\ Omega is empty");
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> to_core(n, inf), to_outside(n, inf);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t y = 0; y < n; ++y) {
      const double d = x.distance(v, y);
      if (in_c[y]) to_core[v] = std::min(to_core[v], d);
      if (!in_omega[y]) to_outside[v] = std::min(to_outside[v], d);
    }
  double d0 = inf;
  for (std::size_t v = 0; v < n; ++v)
    if (in_c[v]) d0 = std::min(d0, to_outside[v]);

  const double r2 = radius == CutoffRadius::kQuarter ? d0 * d0 / 4.0 : d0 * d0 / 2.0;
  std::vector<double> phi(n), psi(n);
  for (std::size_t v = 0; v < n; ++v) {
    phi[v] = 1.0 - std::min(1.0, to_core[v] * to_core[v] / (2.0 * r2));
    psi[v] = std::min(1.0, to_outside[v] * to_outside[v] / (2.0 * r2));
  }
  return {LatticeVec(std::move(phi)), LatticeVec(std::move(psi)), r2, d0};
}

/// cutoff_profiles plus the order check: throws InvariantError if φ ≤ ψ fails.
inline CutoffObstacles cutoff_obstacles(const FiniteMetricSpace& x, const std::vector<std::size_t>& core,
                                        const std::vector<std::size_t>& omega,
                                        CutoffRadius radius = CutoffRadius::kQuarter) {
  auto ob = cutoff_profiles(x, core, omega, radius);
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (ob.phi[v] > ob.psi[v]) {
      throw InvariantError("cutoff_obstacles: phi > psi at node " + std::to_string(v) + " (phi = " +
                           std::to_string(ob.phi[v]) + ", psi = " + std::to_string(ob.psi[v]) + ")");
    }
  }
  return ob;
}

struct ConstructionOptions {
  SolverOptions solver{};
  double certificate_tol = 1e-8;
};

struct CutoffResult {
  CutoffObstacles obstacles;
  Solution solution;
  LSCertificate certificate;
  double sup_laplacian = 0.0;   // ‖Δω‖_∞
  double obstacle_bound = 0.0;  // max(‖(Δφ)∧0‖_∞, ‖(Δψ)∨0‖_∞)
  double lipschitz_ratio = 0.0;

  const LatticeVec& omega() const { return solution.u; }
};

/// Minimizes the graph Dirichlet energy over [φ, ψ] with PSOR and certifies the result.
/// Throws SolverError if PSOR does not converge.
inline CutoffResult build_cutoff(const GraphSpace& space, const std::vector<std::size_t>& core,
                                 const std::vector<std::size_t>& omega, const ConstructionOptions& opt = {},
                                 CutoffRadius radius = CutoffRadius::kQuarter) {
  auto obstacles = cutoff_obstacles(space.metric(), core, omega, radius);
  OrderInterval box(obstacles.phi, obstacles.psi);
  auto sol = solve_psor(space.energy(), box, opt.solver);
  if (!sol.converged) throw SolverError("build_cutoff: PSOR did not converge");

  const auto in_c = detail::membership(space.size(), core, "build_cutoff C");
  const auto in_omega = detail::membership(space.size(), omega, "build_cutoff Omega");
  for (std::size_t v = 0; v < space.size(); ++v) {
    if ((in_c[v] && sol.u[v] != 1.0) || (!in_omega[v] && sol.u[v] != 0.0)) {
      throw InvariantError("build_cutoff: omega not pinned at node " + std::to_string(v));
    }
  }
  auto cert = ls_certificate(space.energy(), box, sol, opt.certificate_tol);
  const double sup = laplacian_bound(space.energy(), sol.u).sup_norm;
  const double bound = ls_laplacian_bound(cert);
  const double ratio = lipschitz_ratio(space.metric(), sol.u, obstacles.phi, obstacles.psi);
  return {std::move(obstacles), std::move(sol), std::move(cert), sup, bound, ratio};
}

struct PotentialPair {
  LatticeVec phi;
  LatticeVec phi_c;
  double t = 0.5;
  LatticeVec lo;  // −Q_t(−φ)
  LatticeVec hi;  // Q_{1−t}(−φ^c)
  std::vector<std::size_t> coincidence_set;  // |hi − lo| ≤ 1e−9
};

/// Builds the obstacle pair for a c-concave φ. Throws InvariantError when lo ≤ hi fails
/// by more than rounding (1e−12 relative); rounding-level crossings are snapped to lo = hi.
inline PotentialPair potential_pair(const FiniteMetricSpace& x, const LatticeVec& phi, double t) {
  if (!(t > 0.0 && t < 1.0)) throw PreconditionError("potential_pair: t must lie in (0, 1)");
  auto phi_c = c_transform(x, phi);
  auto lo = -hopf_lax(x, -phi, t);
  auto hi_raw = hopf_lax(x, -phi_c, 1.0 - t);
  std::vector<double> hi = hi_raw.vec();
  std::vector<std::size_t> coincidence;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    if (lo[i] > hi[i]) {
      if (lo[i] - hi[i] > 1e-12 * (1.0 + std::abs(hi[i]))) {
        throw InvariantError("potential_pair: lower obstacle above upper obstacle at " + std::to_string(i));
      }
      hi[i] = lo[i];
    }
    if (std::abs(hi[i] - lo[i]) <= 1e-9) coincidence.push_back(i);
  }
  return {phi, std::move(phi_c), t, std::move(lo), LatticeVec(std::move(hi)), std::move(coincidence)};
}

struct KantorovichResult {
  PotentialPair pair;
  Solution solution;
  LSCertificate certificate;
  double sup_laplacian = 0.0;   // ‖Δη‖_∞
  double obstacle_bound = 0.0;  // max(‖(Δlo)∧0‖_∞, ‖(Δhi)∨0‖_∞)
  /// max over the coincidence set of |η − lo| and |η − hi|.
  double coincidence_defect = 0.0;
  /// max over the coincidence set of |−tη − tQ_t(−φ)| and |(1−t)η − (1−t)Q_{1−t}(−φ^c)|.
  double restriction_defect = 0.0;
  /// ‖f^{cc} − f‖_∞ for f = tQ_t(−φ) and f = (1−t)Q_{1−t}(−φ^c). Reported only.
  double forward_c_concavity_defect = 0.0;
  double backward_c_concavity_defect = 0.0;
  /// On the coincidence set: |(tη)^{cc} − tη| and |(−(1−t)η)^{cc} + (1−t)η|. Reported only.
  double literal_t_eta_defect = 0.0;
  double literal_backward_defect = 0.0;

  const LatticeVec& eta() const { return solution.u; }
};

/// Minimizes the graph Dirichlet energy over [−Q_t(−φ), Q_{1−t}(−φ^c)] and certifies it.
/// With `regularize`, φ is replaced by φ^{cc} first; otherwise a φ that is not
/// c-concave (to 1e−10 relative) is rejected with PreconditionError.
inline KantorovichResult kantorovich_regularize(const GraphSpace& space, LatticeVec phi, double t,
                                                const ConstructionOptions& opt = {}, bool regularize = false) {
  const auto& x = space.metric();
  detail::require_same_size(x.size(), phi.size(), "kantorovich_regularize");
  if (regularize) phi = c_transform(x, c_transform(x, phi));
  if (!is_c_concave(x, phi, 1e-10 * (1.0 + max_norm(phi))).pass) {
    throw PreconditionError("kantorovich_regularize: phi is not c-concave");
  }
  auto pair = potential_pair(x, phi, t);
  OrderInterval box(pair.lo, pair.hi);
  auto sol = solve_psor(space.energy(), box, opt.solver);
  if (!sol.converged) throw SolverError("kantorovich_regularize: PSOR did not converge");
  auto cert = ls_certificate(space.energy(), box, sol, opt.certificate_tol);

  KantorovichResult r{std::move(pair), std::move(sol), std::move(cert)};
  const auto& eta = r.solution.u;
  const auto& p = r.pair;
  r.sup_laplacian = laplacian_bound(space.energy(), eta).sup_norm;
  r.obstacle_bound = ls_laplacian_bound(r.certificate);

  const auto forward = hopf_lax(x, -p.phi, t);               // Q_t(−φ) = −lo
  const auto backward = hopf_lax(x, -p.phi_c, 1.0 - t);      // Q_{1−t}(−φ^c)
  const auto t_forward = t * forward;
  const auto s_backward = (1.0 - t) * backward;
  r.forward_c_concavity_defect = is_c_concave(x, t_forward, 0.0).value;
  r.backward_c_concavity_defect = is_c_concave(x, s_backward, 0.0).value;

  const auto t_eta = t * eta;
  const auto neg_s_eta = -((1.0 - t) * eta);
  const auto t_eta_cc = c_transform(x, c_transform(x, t_eta));
  const auto neg_s_eta_cc = c_transform(x, c_transform(x, neg_s_eta));
  for (std::size_t i : p.coincidence_set) {
    r.coincidence_defect = std::max({r.coincidence_defect, std::abs(eta[i] - p.lo[i]), std::abs(eta[i] - p.hi[i])});
    r.restriction_defect = std::max({r.restriction_defect, std::abs(-t * eta[i] - t_forward[i]),
                                     std::abs((1.0 - t) * eta[i] - s_backward[i])});
    r.literal_t_eta_defect = std::max(r.literal_t_eta_defect, std::abs(t_eta_cc[i] - t_eta[i]));
    r.literal_backward_defect = std::max(r.literal_backward_defect, std::abs(neg_s_eta_cc[i] - neg_s_eta[i]));
  }
  return r;
}

}  // namespace lob

#endif  // LOB_CONSTRUCTIONS_HPP_
