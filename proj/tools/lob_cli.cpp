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

// lob_cli: batch front end.
//
//   solve        obstacle problem from a config, PSOR or projected gradient
//   oracle       same problem through the 3^n active-set enumeration (n <= 12)
//   cutoff       cut-off function between the distance obstacles
//   kantorovich  regularized potential between the Hopf–Lax obstacles
//   suite        seeded property checks, CSV + JSON summary
//
// Exit codes: 0 ok; 1 suite failure or unexpected error; 2 invalid input;
// 3 solver failure or non-convergence; 4 certificate or invariant failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "lob/certificates.hpp"
#include "lob/constructions.hpp"
#include "lob/io.hpp"
#include "lob/solvers.hpp"
#include "lob/suite.hpp"

namespace fs = std::filesystem;
using lob::Json;

namespace {

enum Exit : int { kOk = 0, kSuiteFailed = 1, kBadInput = 2, kSolverFailed = 3, kCertificateFailed = 4 };

struct Args {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = ".";
  bool paper_radius = false;
  std::optional<double> tol;
};

struct Problem {
  Json config;
  fs::path base_dir;
};

Problem load(const Args& a) {
  if (a.config.empty()) throw lob::ParseError("--config is required");
  return {lob::read_json_file(a.config), fs::path(a.config).parent_path()};
}

fs::path out_dir(const Args& a) {
  fs::path dir(a.out);
  fs::create_directories(dir);
  return dir;
}

lob::SolverOptions solver_options(const Json& cfg, const Args& a) {
  auto opt = lob::parse_solver_options(cfg.contains("solver") ? cfg.at("solver") : Json());
  if (a.tol) opt.tol = *a.tol;
  return opt;
}

double certificate_tol(const Json& cfg, const lob::SolverOptions& opt) {
  if (cfg.contains("certificate_tol")) return lob::detail::number(cfg.at("certificate_tol"), "certificate_tol");
  return 10.0 * opt.tol;
}

std::string method_of(const Json& cfg, const lob::Energy& e) {
  if (cfg.contains("solver") && cfg.at("solver").contains("method")) {
    const auto& m = cfg.at("solver").at("method");
    if (!m.is_string()) throw lob::ParseError("solver.method: expected a string");
    return m.get<std::string>();
  }
  return std::holds_alternative<lob::QuadraticEnergy>(e) ? "psor" : "projected_gradient";
}

// Writes solution.json and certificate.json; returns the exit code.
int finish_solve(const lob::Energy& e, const lob::OrderInterval& box, const lob::Solution& s, double cert_tol,
                 const fs::path& dir) {
  lob::write_json_file(dir / "solution.json", lob::to_json(s));
  if (!s.converged) {
    std::cerr << "solver did not converge: kkt_residual " << s.kkt_residual << " after " << s.iterations
              << " iterations\n";
    return kSolverFailed;
  }
  auto cert = std::visit([&](const auto& en) { return lob::ls_certificate(en, box, s, cert_tol); }, e);
  auto harm = std::visit([&](const auto& en) { return lob::free_set_harmonicity(en, box, s, cert_tol); }, e);
  const double sup = lob::max_norm(cert.g_u);
  lob::write_json_file(dir / "certificate.json", lob::certificate_json(cert, sup, harm, std::nullopt));
  if (!cert.pass) {
    std::cerr << "certificate failed: slacks " << cert.lower_slack_min() << ", " << cert.upper_slack_min() << "\n";
    return kCertificateFailed;
  }
  return kOk;
}

int cmd_solve(const Args& a, bool oracle) {
  auto p = load(a);
  const auto& cfg = p.config;
  auto energy = lob::parse_energy(lob::detail::field(cfg, "energy"), p.base_dir);
  auto box = lob::parse_box(lob::detail::field(cfg, "box"), lob::dimension_of(energy));
  auto opt = solver_options(cfg, a);
  const double cert_tol = certificate_tol(cfg, opt);
  const auto dir = out_dir(a);

  auto solve = [&]() -> lob::Solution {
    if (oracle) {
      const auto* q = std::get_if<lob::QuadraticEnergy>(&energy);
      if (!q) throw lob::ParseError("oracle: energy must be quadratic");
      return lob::brute_force_active_set(*q, box);
    }
    const auto method = method_of(cfg, energy);
    if (method == "psor") {
      const auto* q = std::get_if<lob::QuadraticEnergy>(&energy);
      if (!q) throw lob::ParseError("solver.method psor needs a quadratic energy");
      return lob::solve_psor(*q, box, opt);
    }
    if (method == "projected_gradient") {
      return std::visit([&](const auto& en) { return lob::solve_projected_gradient(en, box, opt); }, energy);
    }
    throw lob::ParseError("solver.method: unknown method '" + method + "'");
  };
  const auto s = solve();
  return finish_solve(energy, box, s, cert_tol, dir);
}

int cmd_cutoff(const Args& a) {
  auto p = load(a);
  const auto& cfg = p.config;
  auto space = lob::parse_graph_space(lob::detail::field(cfg, "space"));
  auto core = lob::parse_index_set(lob::detail::field(cfg, "core"), "core");
  auto omega = lob::parse_index_set(lob::detail::field(cfg, "omega"), "omega");
  auto solver = solver_options(cfg, a);
  lob::ConstructionOptions opt{solver, certificate_tol(cfg, solver)};
  const auto dir = out_dir(a);
  auto r = lob::build_cutoff(space, core, omega, opt,
                             a.paper_radius ? lob::CutoffRadius::kHalf : lob::CutoffRadius::kQuarter);
  lob::OrderInterval box(r.obstacles.phi, r.obstacles.psi);
  auto harm = lob::free_set_harmonicity(space.energy(), box, r.solution, opt.certificate_tol);
  lob::write_json_file(dir / "cutoff.json", lob::to_json(r));
  lob::write_json_file(dir / "solution.json", lob::to_json(r.solution));
  lob::write_json_file(dir / "certificate.json",
                       lob::certificate_json(r.certificate, r.sup_laplacian, harm, r.lipschitz_ratio));
  if (!r.certificate.pass || r.sup_laplacian > r.obstacle_bound + opt.certificate_tol) {
    std::cerr << "cutoff certificate failed\n";
    return kCertificateFailed;
  }
  return kOk;
}

int cmd_kantorovich(const Args& a) {
  auto p = load(a);
  const auto& cfg = p.config;
  auto space = lob::parse_graph_space(lob::detail::field(cfg, "space"));
  auto phi = lob::detail::vec(lob::detail::field(cfg, "phi"), "phi");
  const double t = lob::detail::number(lob::detail::field(cfg, "t"), "t");
  bool regularize = false;
  if (cfg.contains("regularize")) {
    if (!cfg.at("regularize").is_boolean()) throw lob::ParseError("regularize: expected a boolean");
    regularize = cfg.at("regularize").get<bool>();
  }
  auto solver = solver_options(cfg, a);
  lob::ConstructionOptions opt{solver, certificate_tol(cfg, solver)};
  const auto dir = out_dir(a);
  auto r = lob::kantorovich_regularize(space, phi, t, opt, regularize);
  lob::OrderInterval box(r.pair.lo, r.pair.hi);
  auto harm = lob::free_set_harmonicity(space.energy(), box, r.solution, opt.certificate_tol);
  const double ratio = lob::lipschitz_ratio(space.metric(), r.eta(), r.pair.lo, r.pair.hi);
  lob::write_json_file(dir / "kantorovich.json", lob::to_json(r));
  lob::write_json_file(dir / "solution.json", lob::to_json(r.solution));
  lob::write_json_file(dir / "certificate.json", lob::certificate_json(r.certificate, r.sup_laplacian, harm, ratio));
  if (!r.certificate.pass || r.coincidence_defect > 1e-9) {
    std::cerr << "kantorovich certificate failed\n";
    return kCertificateFailed;
  }
  return kOk;
}

int cmd_suite(const Args& a) {
  lob::SuiteOptions opt;
  opt.paper_radius = a.paper_radius;
  std::vector<std::string> selection;
  bool selected = false;
  if (!a.config.empty()) {
    auto p = load(a);
    const auto& cfg = p.config;
    if (!cfg.is_object()) throw lob::ParseError("suite config: expected an object");
    if (cfg.contains("seed")) opt.seed = lob::detail::index(cfg.at("seed"), "seed");
    if (cfg.contains("checks")) {
      const auto& c = cfg.at("checks");
      if (!c.is_array()) throw lob::ParseError("checks: expected an array of names");
      for (const auto& x : c) {
        if (!x.is_string()) throw lob::ParseError("checks: expected an array of names");
        selection.push_back(x.get<std::string>());
      }
      selected = true;
    }
  }
  if (a.seed_given) opt.seed = a.seed;
  if (!selected) {
    for (const auto& g : lob::suite_groups()) selection.emplace_back(g.name);
  }
  for (const auto& name : selection) {
    const auto& groups = lob::suite_groups();
    if (std::none_of(groups.begin(), groups.end(), [&](const auto& g) { return name == g.name; })) {
      throw lob::ParseError("checks: unknown check '" + name + "'");
    }
  }
  const auto dir = out_dir(a);
  auto rows = lob::run_suite(opt, &selection);
  {
    std::ofstream csv(dir / "suite.csv", std::ios::binary);
    csv << lob::suite_csv(rows);
  }
  lob::write_json_file(dir / "suite.json", lob::suite_json(rows, opt, selection));
  for (const auto& r : rows) {
    if (!r.pass) std::cerr << "FAILED " << r.check_name << ": worst " << r.worst_value << " vs " << r.threshold << "\n";
  }
  return lob::suite_passed(rows) ? kOk : kSuiteFailed;
}

// Maps library exceptions onto the exit-code contract.
template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const lob::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const lob::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverFailed;
  } catch (const lob::SizeError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverFailed;
  } catch (const lob::InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kCertificateFailed;
  } catch (const lob::Error& e) {
    // Construction, dimension, precondition and differentiability errors: the input is unusable.
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kSuiteFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double obstacle solver with Lewy-Stampacchia certificates"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", args.config, "JSON config file");
    if (config_required) c->required();
    sub->add_option("--seed", args.seed, "seed for generated instances")->each([&](const std::string&) {
      args.seed_given = true;
    });
    sub->add_option("--out", args.out, "output directory")->capture_default_str();
    sub->add_flag("--paper-radius", args.paper_radius, "cut-off radius r^2 = D0^2/2 instead of D0^2/4");
    sub->add_option_function<double>("--tol", [&](double v) { args.tol = v; }, "solver tolerance override");
  };
  auto* solve = app.add_subcommand("solve", "solve an obstacle problem");
  auto* oracle = app.add_subcommand("oracle", "solve by active-set enumeration (n <= 12)");
  auto* cutoff = app.add_subcommand("cutoff", "build a cut-off function");
  auto* kant = app.add_subcommand("kantorovich", "regularize a Kantorovich potential");
  auto* suite = app.add_subcommand("suite", "run the property suite");
  for (auto* s : {solve, oracle, cutoff, kant}) add_common(s, true);
  add_common(suite, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  if (*solve) return guarded([&] { return cmd_solve(args, false); });
  if (*oracle) return guarded([&] { return cmd_solve(args, true); });
  if (*cutoff) return guarded([&] { return cmd_cutoff(args); });
  if (*kant) return guarded([&] { return cmd_kantorovich(args); });
  return guarded([&] { return cmd_suite(args); });
}
