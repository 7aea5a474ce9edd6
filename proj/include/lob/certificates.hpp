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

// Verdicts on a computed minimizer ū of E over [φ, ψ].
//
// The Lewy–Stampacchia certificate checks, with g = ∇E,
//
//     g(ψ) ∧ 0  ≤  g(ū)  ≤  g(φ) ∨ 0,
//
// equivalently Δφ ∧ 0 ≤ Δū ≤ Δψ ∨ 0 with Δ = −∇E. An absent obstacle side
// (every entry at ±kBigBound) contributes 0 to its bound, which gives the
// single-obstacle form. All gradients are recomputed from the energy; the
// solver's own gradient is never trusted.

#ifndef LOB_CERTIFICATES_HPP_
#define LOB_CERTIFICATES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "lob/energies.hpp"
#include "lob/error.hpp"
#include "lob/lattice.hpp"
#include "lob/metric.hpp"
#include "lob/solvers.hpp"

namespace lob {

struct LSCertificate {
  LatticeVec g_u;
  LatticeVec g_lo;  // zeros when the lower side is absent
  LatticeVec g_hi;  // zeros when the upper side is absent
  LatticeVec lower_slack;  // g_u − (g_hi ∧ 0)
  LatticeVec upper_slack;  // (g_lo ∨ 0) − g_u
  double tol = 0.0;
  bool pass = false;
  bool lower_present = true;
  bool upper_present = true;
  /// The Laplacian-form slacks reproduce the gradient-form slacks bit for bit.
  bool laplacian_form_consistent = false;

  double lower_slack_min() const { return min_entry(lower_slack); }
  double upper_slack_min() const { return min_entry(upper_slack); }
};

/// Issues the certificate for `sol` (which must be converged).
template <class E>
LSCertificate ls_certificate(const E& e, const OrderInterval& box, const Solution& sol, double tol) {
  if (!sol.converged) throw PreconditionError("ls_certificate: refusing to certify an unconverged solution");
  detail::require_same_size(box.size(), sol.u.size(), "ls_certificate");
  const std::size_t n = box.size();
  const bool lower_present = !box.lower_absent();
  const bool upper_present = !box.upper_absent();

  auto g_u = energy_gradient(e, sol.u);
  auto g_lo = lower_present ? energy_gradient(e, box.lo()) : LatticeVec::zeros(n);
  auto g_hi = upper_present ? energy_gradient(e, box.hi()) : LatticeVec::zeros(n);
  auto lower_slack = g_u - negative_part(g_hi);
  auto upper_slack = positive_part(g_lo) - g_u;

  // Laplacian form: Δφ∧0 ≤ Δū ≤ Δψ∨0.
  const auto lap_u = -g_u;
  const auto lap_lower_slack = lap_u - negative_part(-g_lo);  // Δū − Δφ∧0
  const auto lap_upper_slack = positive_part(-g_hi) - lap_u;  // Δψ∨0 − Δū
  const bool consistent = lap_lower_slack == upper_slack && lap_upper_slack == lower_slack;

  const bool pass = min_entry(lower_slack) >= -tol && min_entry(upper_slack) >= -tol;
  return LSCertificate{std::move(g_u),         std::move(g_lo), std::move(g_hi), std::move(lower_slack),
                       std::move(upper_slack), tol,             pass,            lower_present,
                       upper_present,          consistent};
}

/// max(‖(Δφ)∧0‖_∞, ‖(Δψ)∨0‖_∞): the bound on ‖Δū‖_∞ implied by a passing certificate.
inline double ls_laplacian_bound(const LSCertificate& cert) {
  return std::max(max_norm(positive_part(cert.g_lo)), max_norm(negative_part(cert.g_hi)));
}

struct LaplacianBound {
  double sup_norm = 0.0;
  LatticeVec laplacian;  // −∇E(u)
};

template <class E>
LaplacianBound laplacian_bound(const E& e, const LatticeVec& u) {
  auto lap = -energy_gradient(e, u);
  const double sup = max_norm(lap);
  return {sup, std::move(lap)};
}

struct HarmonicityResult {
  bool pass = true;
  std::optional<std::size_t> worst_index;
  double worst_value = 0.0;
};

/// |∇E(u)_i| ≤ tol on every strictly free index (lo_i + δ < u_i < hi_i − δ, δ = 1e−9(1+|u_i|)).
template <class E>
HarmonicityResult free_set_harmonicity(const E& e, const OrderInterval& box, const Solution& sol, double tol) {
  if (!sol.converged) throw PreconditionError("free_set_harmonicity: solution not converged");
  const auto g = energy_gradient(e, sol.u);
  HarmonicityResult r;
  for (std::size_t i = 0; i < sol.u.size(); ++i) {
    const double u = sol.u[i];
    const double delta = 1e-9 * (1.0 + std::abs(u));
    if (!(box.lo()[i] + delta < u && u < box.hi()[i] - delta)) continue;
    if (!r.worst_index || std::abs(g[i]) > r.worst_value) {
      r.worst_index = i;
      r.worst_value = std::abs(g[i]);
    }
  }
  r.pass = !r.worst_index || r.worst_value <= tol;
  return r;
}

/// Weak discrete maximum principle for a harmonic extension built by
/// harmonic_extension_problem: every interior value lies in
/// [min(boundary) − tol, max(boundary) + tol]. `value` is the worst excursion
/// outside that range (≤ 0 when inside). Throws if u does not solve Au + b = 0.
inline CheckResult maximum_principle_check(const QuadraticEnergy& e, const LatticeVec& boundary_values,
                                           const LatticeVec& interior_solution, double tol = 1e-9) {
  detail::require_same_size(e.size(), interior_solution.size(), "maximum_principle_check");
  const auto residual = energy_gradient(e, interior_solution);
  const double scale = 1.0 + max_norm(e.linear_term());
  if (max_norm(residual) > 1e-8 * scale) {
    throw PreconditionError("maximum_principle_check: interior_solution does not solve the harmonic system");
  }
  const double lo = min_entry(boundary_values);
  const double hi = *std::max_element(boundary_values.begin(), boundary_values.end());
  double worst = -std::numeric_limits<double>::infinity();
  for (double u : interior_solution) worst = std::max({worst, lo - u, u - hi});
  return {worst <= tol, worst};
}

/// Lip(u) / max(Lip(φ), Lip(ψ)); +∞ when the denominator is 0 and Lip(u) > 0.
inline double lipschitz_ratio(const FiniteMetricSpace& x, const LatticeVec& u, const LatticeVec& phi,
                              const LatticeVec& psi) {
  const double num = metric_lipschitz(x, u);
  const double den = std::max(metric_lipschitz(x, phi), metric_lipschitz(x, psi));
  if (den == 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return num / den;
}

}  // namespace lob

#endif  // LOB_CERTIFICATES_HPP_
