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

// Verification suite: seeded property checks over random instances. Each group
// draws from its own generator, seeded from (seed, group name), so selecting a
// subset of groups does not change their results. Rows are sorted by name.
//
// A row reports the worst value seen over its instances and the threshold it
// is held to. Direction is part of the check: "at most" rows hold errors and
// violations, "at least" rows hold slacks.

#ifndef LOB_SUITE_HPP_
#define LOB_SUITE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lob/certificates.hpp"
#include "lob/constructions.hpp"
#include "lob/energies.hpp"
#include "lob/instances.hpp"
#include "lob/lattice.hpp"
#include "lob/metric.hpp"
#include "lob/solvers.hpp"

namespace lob {

enum class Bound { kAtMost, kAtLeast };

struct SuiteRow {
  std::string check_name;
  std::size_t n_instances = 0;
  double worst_value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Accumulates the worst value of one check.
class RowBuilder {
 public:
  RowBuilder(std::string name, Bound bound, double threshold)
      : name_(std::move(name)),
        bound_(bound),
        threshold_(threshold),
        worst_(bound == Bound::kAtMost ? -std::numeric_limits<double>::infinity()
                                       : std::numeric_limits<double>::infinity()) {}

  void add(double value) {
    ++count_;
    if (std::isnan(value)) {
      failed_ = true;
      worst_ = value;
    } else if (!std::isnan(worst_)) {
      worst_ = bound_ == Bound::kAtMost ? std::max(worst_, value) : std::min(worst_, value);
    }
  }
  /// Marks an instance that could not be evaluated (solver failure, exception).
  void fail() {
    ++count_;
    failed_ = true;
    worst_ = bound_ == Bound::kAtMost ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
  }

  SuiteRow row() const {
    const double w = count_ == 0 ? 0.0 : worst_;
    const bool ok = !failed_ && (bound_ == Bound::kAtMost ? w <= threshold_ : w >= threshold_);
    return {name_, count_, w, threshold_, ok};
  }

 private:
  std::string name_;
  Bound bound_;
  double threshold_;
  double worst_;
  std::size_t count_ = 0;
  bool failed_ = false;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  bool paper_radius = false;

  std::size_t lattice_instances = 500;
  std::size_t z_matrix_instances = 100;
  std::size_t t_monotonicity_pairs = 1000;
  std::size_t scalar_quadruples = 10000;  // per exponent
  std::size_t ls_instances = 200;
  std::size_t oracle_instances = 50;
  std::size_t fractional_instances = 30;
  std::size_t metric_instances = 100;
  std::size_t intpot_instances = 100;
  std::size_t kantorovich_potentials = 10;
  std::size_t grid_instances = 20;
};

namespace detail {

// FNV-1a, so group seeds do not depend on the standard library's hash.
inline std::uint64_t group_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::vector<std::size_t> grid_ring(std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> ring;
  for (std::size_t v = 0; v < rows * cols; ++v) {
    const std::size_t r = v / cols, c = v % cols;
    if (r == 0 || c == 0 || r + 1 == rows || c + 1 == cols) ring.push_back(v);
  }
  return ring;
}

inline std::vector<std::size_t> center_block(std::size_t side, std::size_t k) {
  const std::size_t first = (side - k) / 2;
  std::vector<std::size_t> v;
  for (std::size_t r = first; r < first + k; ++r)
    for (std::size_t c = first; c < first + k; ++c) v.push_back(r * side + c);
  return v;
}

inline KernelEnergy random_kernel(Rng& rng, std::size_t n, double p) {
  std::vector<KernelPair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(0.5)) pairs.push_back({i, j, rng.uniform(0.1, 2.0)});
  std::vector<ExteriorWeight> ext;
  for (std::size_t i = 0; i < n; ++i) ext.push_back({i, rng.uniform(0.0, 1.0)});
  return KernelEnergy(n, std::move(pairs), std::move(ext), p);
}

inline double kInf() { return std::numeric_limits<double>::infinity(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Check groups

inline std::vector<SuiteRow> check_lattice(const SuiteOptions& o, Rng& rng) {
  RowBuilder absorption("lattice_absorption", Bound::kAtMost, 0.0);
  RowBuilder clamp_row("lattice_clamp_nonexpansive", Bound::kAtMost, 0.0);
  RowBuilder rk("lattice_rk_formula", Bound::kAtMost, 1e-9);
  for (std::size_t k = 0; k < o.lattice_instances; ++k) {
    const std::size_t n = rng.between(1, 12);
    auto u = rng.vec(n, -3, 3), v = rng.vec(n, -3, 3);
    absorption.add(std::max({max_norm(join(u, meet(u, v)) - u), max_norm(meet(u, join(u, v)) - u),
                             max_norm(meet(u, v) + join(u, v) - (u + v))}));
    OrderInterval box(meet(u, v), join(u, v));
    auto a = rng.vec(n, -6, 6), b = rng.vec(n, -6, 6);
    const auto ca = clamp(a, box);
    clamp_row.add(std::max(max_norm(clamp(ca, box) - ca), max_norm(ca - clamp(b, box)) - max_norm(a - b)));
    auto x = rng.vec(n, 0, 2);
    rk.add(std::max(std::abs(rk_join(u, v, x) - dot(join(u, v), x)), std::abs(rk_meet(u, v, x) - dot(meet(u, v), x))));
  }
  return {absorption.row(), clamp_row.row(), rk.row()};
}

inline std::vector<SuiteRow> check_submodularity(const SuiteOptions& o, Rng& rng) {
  // Witness iff an off-diagonal entry exceeds 1e-12; a witness's δ equals that entry.
  RowBuilder iff("submodularity_z_matrix_iff", Bound::kAtMost, 0.0);
  RowBuilder witness("submodularity_z_matrix_witness", Bound::kAtMost, 1e-12);
  constexpr std::array<double, 3> kBias{-1.0, -0.9, 0.0};
  for (std::size_t k = 0; k < o.z_matrix_instances; ++k) {
    const std::size_t n = rng.between(2, 12);
    auto a = random_symmetric(rng, n, kBias[k % kBias.size()]);
    double largest = -detail::kInf();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) largest = std::max(largest, a.entry(i, j));
    const auto w = z_matrix_violation(a, 1e-12);
    iff.add(w.has_value() == (largest > 1e-12) ? 0.0 : 1.0);
    if (w) witness.add(std::abs(submodularity_check(a, w->u, w->v).value - a.entry(w->i, w->j)));
  }
  return {iff.row(), witness.row()};
}

inline std::vector<SuiteRow> check_t_monotonicity(const SuiteOptions& o, Rng& rng) {
  RowBuilder row("t_monotonicity", Bound::kAtLeast, -1e-10);
  for (std::size_t k = 0; k < o.t_monotonicity_pairs; ++k) {
    const std::size_t n = rng.between(2, 15);
    auto u = rng.vec(n, -2, 2), v = rng.vec(n, -2, 2);
    switch (k % 5) {
      case 0: row.add(t_monotonicity_check(random_submodular_quadratic(rng, n), u, v).value); break;
      case 1: {
        const std::size_t nodes = n + 2;
        auto e = graph_dirichlet(nodes, random_connected_graph(rng, nodes), {0, nodes - 1});
        row.add(t_monotonicity_check(e, u, v).value);
        break;
      }
      case 2: row.add(t_monotonicity_check(detail::random_kernel(rng, n, 2.0), u, v).value); break;
      case 3: row.add(t_monotonicity_check(detail::random_kernel(rng, n, 3.0), u, v).value); break;
      default: {
        const double p = rng.bernoulli(0.5) ? 2.0 : 3.0;
        auto e = fractional_kernel_1d(n, 1.0 / static_cast<double>(n + 1), rng.uniform(0.1, 0.9), p, 4);
        row.add(t_monotonicity_check(e, u, v).value);
      }
    }
  }
  return {row.row()};
}

inline std::vector<SuiteRow> check_scalar_inequality(const SuiteOptions& o, Rng& rng) {
  // Reported as rhs − lhs: positive means the inequality is violated.
  RowBuilder row("scalar_submodularity_inequality", Bound::kAtMost, 1e-12);
  for (double p : {1.5, 2.0, 3.0}) {
    for (std::size_t k = 0; k < o.scalar_quadruples; ++k) {
      const double x1 = rng.uniform(-2, 2), x2 = rng.uniform(-2, 2), y1 = rng.uniform(-2, 2), y2 = rng.uniform(-2, 2);
      const auto r = scalar_submodularity_inequality(AbsPower{p}, x1, x2, y1, y2);
      row.add(r.rhs - r.lhs);
    }
  }
  return {row.row()};
}

inline std::vector<SuiteRow> check_ls_quadratic(const SuiteOptions& o, Rng& rng) {
  constexpr double kSolveTol = 1e-9;
  constexpr double kCertTol = 1e-8;
  RowBuilder conv("ls_quadratic_kkt_residual", Bound::kAtMost, kSolveTol);
  RowBuilder cert("ls_quadratic_certificate_slack", Bound::kAtLeast, -kCertTol);
  RowBuilder bound("ls_quadratic_laplacian_bound", Bound::kAtMost, kCertTol);
  RowBuilder sign("ls_quadratic_sign_convention", Bound::kAtMost, 0.0);
  for (std::size_t k = 0; k < o.ls_instances; ++k) {
    const std::size_t n = rng.between(2, 50);
    auto e = random_submodular_quadratic(rng, n);
    auto box = random_box(rng, n);
    auto s = solve_psor(e, box, {.tol = kSolveTol});
    conv.add(s.kkt_residual);
    if (!s.converged) {
      cert.fail();
      bound.fail();
      sign.fail();
      continue;
    }
    auto c = ls_certificate(e, box, s, kCertTol);
    cert.add(std::min(c.lower_slack_min(), c.upper_slack_min()));
    bound.add(laplacian_bound(e, s.u).sup_norm - ls_laplacian_bound(c));
    sign.add(c.laplacian_form_consistent ? 0.0 : 1.0);
  }
  return {conv.row(), cert.row(), bound.row(), sign.row()};
}

inline std::vector<SuiteRow> check_oracle(const SuiteOptions& o, Rng& rng) {
  RowBuilder row("oracle_equivalence", Bound::kAtMost, 1e-7);
  for (std::size_t k = 0; k < o.oracle_instances; ++k) {
    const std::size_t n = rng.between(1, 10);
    auto e = random_submodular_quadratic(rng, n);
    auto box = random_box(rng, n);
    auto s = solve_psor(e, box, {.tol = 1e-11});
    if (!s.converged) {
      row.fail();
      continue;
    }
    row.add(max_norm(s.u - brute_force_active_set(e, box).u));
  }
  return {row.row()};
}

inline std::vector<SuiteRow> check_fractional(const SuiteOptions& o, Rng& rng) {
  constexpr double kSolveTol = 1e-7;
  constexpr double kCertTol = 1e-6;
  RowBuilder conv("fractional_stationarity", Bound::kAtMost, kSolveTol);
  RowBuilder descent("fractional_energy_descent", Bound::kAtMost, 1e-12);
  RowBuilder cert("fractional_certificate_slack", Bound::kAtLeast, -kCertTol);
  constexpr std::array<double, 3> kS{0.25, 0.5, 0.75};
  for (std::size_t k = 0; k < o.fractional_instances; ++k) {
    const std::size_t n = rng.between(5, 40);
    const double s = kS[k % 3];
    const double p = (k / 3) % 2 == 0 ? 2.0 : 3.0;
    auto e = fractional_kernel_1d(n, 1.0 / static_cast<double>(n + 1), s, p, 8);
    auto box = random_smooth_box(rng, n);
    double prev = energy_value(e, clamp(LatticeVec::zeros(n), box));
    double worst_increase = -detail::kInf();
    SolverOptions opt{.tol = kSolveTol, .max_iter = 200000};
    opt.observer = [&](std::size_t, const LatticeVec& u) {
      const double f = energy_value(e, u);
      worst_increase = std::max(worst_increase, f - prev);
      prev = f;
    };
    auto sol = solve_projected_gradient(e, box, opt);
    descent.add(std::isinf(worst_increase) ? 0.0 : worst_increase);
    conv.add(sol.kkt_residual);
    if (!sol.converged) {
      cert.fail();
      continue;
    }
    auto c = ls_certificate(e, box, sol, kCertTol);
    cert.add(std::min(c.lower_slack_min(), c.upper_slack_min()));
  }
  return {conv.row(), descent.row(), cert.row()};
}

inline std::vector<SuiteRow> check_hopf_lax(const SuiteOptions& o, Rng& rng) {
  RowBuilder ccc("hopf_lax_ccc_identity", Bound::kAtMost, 1e-12);
  RowBuilder mono("hopf_lax_monotonicity", Bound::kAtMost, 1e-12);
  RowBuilder lip("hopf_lax_lipschitz_bound", Bound::kAtMost, 1e-9);
  for (std::size_t k = 0; k < o.metric_instances; ++k) {
    auto x = random_planar_space(rng, rng.between(2, 30));
    const std::size_t n = x.size();
    auto psi = rng.vec(n, -1, 1);
    auto psic = c_transform(x, psi);
    ccc.add(max_norm(c_transform(x, c_transform(x, psic)) - psic));

    const double t1 = rng.uniform(0.05, 1.0), t2 = t1 + rng.uniform(0.01, 1.0);
    auto q1 = hopf_lax(x, psi, t1);
    auto q2 = hopf_lax(x, psi, t2);
    auto q_up = hopf_lax(x, psi + rng.vec(n, 0, 0.5), t1);
    mono.add(std::max({max_entry(q1 - psi), max_entry(q2 - q1), max_entry(q1 - q_up)}));

    auto phi = random_c_concave(rng, x, rng.uniform(0.1, 2.0));
    const double t = rng.uniform(0.05, 1.0);
    lip.add(metric_lipschitz(x, hopf_lax(x, -phi, t)) - 2.0 * std::sqrt(max_norm(phi) / t));
  }
  return {ccc.row(), mono.row(), lip.row()};
}

inline std::vector<SuiteRow> check_intpot(const SuiteOptions& o, Rng& rng) {
  RowBuilder slack("intpot_min_slack", Bound::kAtLeast, -1e-12);
  RowBuilder two_point("intpot_two_point_slack", Bound::kAtMost, 0.0);
  for (std::size_t k = 0; k < o.intpot_instances; ++k) {
    auto x = random_planar_space(rng, rng.between(2, 30));
    auto phi = random_c_concave(rng, x, 1.0);
    for (int step = 1; step <= 9; ++step) {
      slack.add(interpolation_duality_check(x, phi, 0.1 * step, 1e-12).value);
    }
  }
  // Two points at distance 1, φ = (0, −0.3), t = ½: the slack is 0 at both points.
  FiniteMetricSpace pair(2, {0, 1, 1, 0});
  const LatticeVec phi{0, -0.3};
  const auto sum = hopf_lax(pair, -phi, 0.5) + hopf_lax(pair, -c_transform(pair, phi), 0.5);
  two_point.add(max_norm(sum));
  return {slack.row(), two_point.row()};
}

inline std::vector<SuiteRow> check_cutoff(const SuiteOptions& o, Rng&) {
  const auto radius = o.paper_radius ? CutoffRadius::kHalf : CutoffRadius::kQuarter;
  RowBuilder order("cutoff_obstacle_order", Bound::kAtMost, 0.0);
  RowBuilder pinned("cutoff_pinning", Bound::kAtMost, 0.0);
  RowBuilder cert("cutoff_certificate_slack", Bound::kAtLeast, -1e-8);
  RowBuilder bound("cutoff_laplacian_bound", Bound::kAtMost, 1e-8);

  struct Instance {
    GraphSpace space;
    std::vector<std::size_t> core, omega;
  };
  std::vector<Instance> instances;
  instances.push_back({GraphSpace::path(5), {2}, {1, 2, 3}});
  instances.push_back({GraphSpace::path(11), {5}, {2, 3, 4, 5, 6, 7, 8}});
  instances.push_back({GraphSpace::grid(15, 15), detail::center_block(15, 3), detail::center_block(15, 9)});

  for (const auto& in : instances) {
    const auto prof = cutoff_profiles(in.space.metric(), in.core, in.omega, radius);
    const double gap = max_entry(prof.phi - prof.psi);
    order.add(gap);
    if (gap > 0.0) continue;  // not a valid interval; the order row carries the failure
    try {
      auto r = build_cutoff(in.space, in.core, in.omega, {.solver = {.tol = 1e-11}}, radius);
      double dev = 0.0;
      for (std::size_t v : in.core) dev = std::max(dev, std::abs(r.omega()[v] - 1.0));
      for (std::size_t v = 0; v < in.space.size(); ++v)
        if (std::find(in.omega.begin(), in.omega.end(), v) == in.omega.end()) dev = std::max(dev, std::abs(r.omega()[v]));
      pinned.add(dev);
      cert.add(std::min(r.certificate.lower_slack_min(), r.certificate.upper_slack_min()));
      bound.add(r.sup_laplacian - r.obstacle_bound);
    } catch (const Error&) {
      pinned.fail();
      cert.fail();
      bound.fail();
    }
  }
  return {order.row(), pinned.row(), cert.row(), bound.row()};
}

inline std::vector<SuiteRow> check_kantorovich(const SuiteOptions& o, Rng& rng) {
  RowBuilder order("kantorovich_obstacle_order", Bound::kAtLeast, -1e-12);
  RowBuilder coincide("kantorovich_coincidence_clamp", Bound::kAtMost, 1e-9);
  RowBuilder cert("kantorovich_certificate_slack", Bound::kAtLeast, -1e-8);
  // ‖Δη‖_∞ is reported; the only requirement is finiteness.
  RowBuilder sup("kantorovich_sup_laplacian", Bound::kAtMost, detail::kInf());
  auto line = GraphSpace::path(21, 0.05);
  for (std::size_t k = 0; k < o.kantorovich_potentials; ++k) {
    auto phi = random_c_concave(rng, line.metric(), 0.5);
    for (double t : {0.25, 0.5, 0.75}) {
      try {
        auto r = kantorovich_regularize(line, phi, t, {.solver = {.tol = 1e-11}});
        order.add(min_entry(r.pair.hi - r.pair.lo));
        coincide.add(r.coincidence_defect);
        cert.add(std::min(r.certificate.lower_slack_min(), r.certificate.upper_slack_min()));
        sup.add(std::isfinite(r.sup_laplacian) ? r.sup_laplacian : std::nan(""));
      } catch (const Error&) {
        order.fail();
        coincide.fail();
        cert.fail();
        sup.fail();
      }
    }
  }
  return {order.row(), coincide.row(), cert.row(), sup.row()};
}

inline std::vector<SuiteRow> check_maximum_principle(const SuiteOptions& o, Rng& rng) {
  RowBuilder row("maximum_principle_excursion", Bound::kAtMost, 1e-9);
  for (std::size_t k = 0; k < o.grid_instances; ++k) {
    const std::size_t rows = rng.between(3, 10), cols = rng.between(3, 10);
    auto g = GraphSpace::grid(rows, cols);
    const auto ring = detail::grid_ring(rows, cols);
    auto bv = rng.vec(ring.size(), 0, 1);
    auto e = harmonic_extension_problem(rows * cols, g.edges(), ring, bv);
    auto s = solve_psor(e, OrderInterval::unbounded(e.size()), {.tol = 1e-13, .omega = 1.0});
    if (!s.converged) {
      row.fail();
      continue;
    }
    row.add(maximum_principle_check(e, bv, s.u).value);
  }
  return {row.row()};
}

inline std::vector<SuiteRow> check_comparison_principle(const SuiteOptions& o, Rng& rng) {
  RowBuilder row("comparison_principle", Bound::kAtMost, 1e-9);
  for (std::size_t k = 0; k < o.grid_instances; ++k) {
    const std::size_t side = rng.between(3, 8);
    auto g = GraphSpace::grid(side, side);
    auto e = graph_dirichlet(side * side, g.edges(), detail::grid_ring(side, side));
    e = e.with_linear_term(rng.vec(e.size(), -1, 1));
    auto free = solve_psor(e, OrderInterval::unbounded(e.size()), {.tol = 1e-12});
    auto obst = solve_psor(e, OrderInterval::lower_only(rng.vec(e.size(), -1, 1)), {.tol = 1e-12});
    if (!free.converged || !obst.converged) {
      row.fail();
      continue;
    }
    row.add(max_entry(free.u - obst.u));
  }
  return {row.row()};
}

// ---------------------------------------------------------------------------
// Registry and output

struct SuiteGroup {
  const char* name;
  std::vector<SuiteRow> (*run)(const SuiteOptions&, Rng&);
};

inline const std::vector<SuiteGroup>& suite_groups() {
  static const std::vector<SuiteGroup> groups{
      {"comparison_principle", check_comparison_principle},
      {"cutoff", check_cutoff},
      {"fractional", check_fractional},
      {"hopf_lax", check_hopf_lax},
      {"intpot", check_intpot},
      {"kantorovich", check_kantorovich},
      {"lattice", check_lattice},
      {"ls_quadratic", check_ls_quadratic},
      {"maximum_principle", check_maximum_principle},
      {"oracle", check_oracle},
      {"scalar_inequality", check_scalar_inequality},
      {"submodularity", check_submodularity},
      {"t_monotonicity", check_t_monotonicity},
  };
  return groups;
}

/// Runs one group with its own generator. Throws PreconditionError for an unknown name.
inline std::vector<SuiteRow> run_group(const std::string& name, const SuiteOptions& o) {
  for (const auto& g : suite_groups()) {
    if (name == g.name) {
      Rng rng(detail::group_seed(o.seed, g.name));
      return g.run(o, rng);
    }
  }
  throw PreconditionError("unknown suite check '" + name + "'");
}

/// Runs the selected groups (all when `selection` is null) and sorts rows by name.
inline std::vector<SuiteRow> run_suite(const SuiteOptions& o, const std::vector<std::string>* selection = nullptr) {
  std::vector<std::string> names;
  if (selection) {
    names = *selection;
  } else {
    for (const auto& g : suite_groups()) names.emplace_back(g.name);
  }
  std::vector<SuiteRow> rows;
  for (const auto& n : names) {
    auto r = run_group(n, o);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SuiteRow& a, const SuiteRow& b) { return a.check_name < b.check_name; });
  return rows;
}

inline bool suite_passed(const std::vector<SuiteRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
}

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// RFC 4180: quote fields containing separators, quotes or line breaks.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string suite_csv(const std::vector<SuiteRow>& rows) {
  std::string out = "check_name,n_instances,worst_value,threshold,pass\r\n";
  for (const auto& r : rows) {
    out += detail::csv_field(r.check_name) + ',' + std::to_string(r.n_instances) + ',' +
           detail::format_double(r.worst_value) + ',' + detail::format_double(r.threshold) + ',' +
           (r.pass ? "true" : "false") + "\r\n";
  }
  return out;
}

inline nlohmann::json suite_json(const std::vector<SuiteRow>& rows, const SuiteOptions& o,
                                 const std::vector<std::string>& selection) {
  nlohmann::json j;
  j["generator"] = Rng::kName;
  j["seed"] = o.seed;
  j["paper_radius"] = o.paper_radius;
  j["checks"] = selection;
  j["pass"] = suite_passed(rows);
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json x;
    x["check_name"] = r.check_name;
    x["n_instances"] = r.n_instances;
    x["worst_value"] = std::isfinite(r.worst_value) ? nlohmann::json(r.worst_value) : nlohmann::json(detail::format_double(r.worst_value));
    x["threshold"] = std::isfinite(r.threshold) ? nlohmann::json(r.threshold) : nlohmann::json(detail::format_double(r.threshold));
    x["pass"] = r.pass;
    arr.push_back(std::move(x));
  }
  j["rows"] = std::move(arr);
  return j;
}

}  // namespace lob

#endif  // LOB_SUITE_HPP_
