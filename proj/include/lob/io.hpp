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

// JSON and text formats. Every malformed input raises ParseError; JSON objects
// are std::map backed, so keys are written sorted.
//
// Matrix triplets (text): "n nnz" then nnz lines "i j value", 0-based, both
// symmetric entries stored.

#ifndef LOB_IO_HPP_
#define LOB_IO_HPP_

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lob/certificates.hpp"
#include "lob/constructions.hpp"
#include "lob/energies.hpp"
#include "lob/error.hpp"
#include "lob/lattice.hpp"
#include "lob/metric.hpp"
#include "lob/solvers.hpp"

namespace lob {

class ParseError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Text triplets

inline std::vector<Triplet> read_triplets(std::istream& in, std::size_t* n_out) {
  std::size_t n = 0, nnz = 0;
  if (!(in >> n >> nnz)) throw ParseError("triplets: missing 'n nnz' header");
  std::vector<Triplet> t;
  t.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    Triplet x;
    if (!(in >> x.i >> x.j >> x.value)) throw ParseError("triplets: expected " + std::to_string(nnz) + " entries");
    t.push_back(x);
  }
  std::string rest;
  if (in >> rest) throw ParseError("triplets: trailing data after " + std::to_string(nnz) + " entries");
  *n_out = n;
  return t;
}

inline std::vector<Triplet> read_triplets_file(const std::filesystem::path& path, std::size_t* n_out) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file " + path.string());
  return read_triplets(in, n_out);
}

inline std::string write_triplets(const SparseSymmetric& a) {
  const auto t = a.triplets();
  std::ostringstream out;
  out.precision(17);
  out << a.size() << ' ' << t.size() << '\n';
  for (const auto& x : t) out << x.i << ' ' << x.j << ' ' << x.value << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON helpers

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

inline std::size_t index(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) throw ParseError(std::string(what) + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

inline std::vector<std::size_t> indices(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<std::size_t> v;
  for (const auto& x : j) v.push_back(index(x, what));
  return v;
}

inline LatticeVec vec(const Json& j, const char* what) {
  auto v = numbers(j, what);
  if (v.empty()) throw ParseError(std::string(what) + ": empty vector");
  return LatticeVec(std::move(v));
}

// [[i, j, w], ...]
inline std::vector<GraphEdge> edges(const Json& j) {
  if (!j.is_array()) throw ParseError("edges: expected an array of [i, j, w]");
  std::vector<GraphEdge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw ParseError("edges: each edge must be [i, j, w]");
    out.push_back({index(e[0], "edge i"), index(e[1], "edge j"), number(e[2], "edge w")});
  }
  return out;
}

// Side of a box: null → absent; entries may be null → absent at that index.
inline std::vector<double> side(const Json& j, std::size_t n, double absent, const char* what) {
  if (j.is_null()) return std::vector<double>(n, absent);
  if (!j.is_array() || j.size() != n) throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " entries");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(x.is_null() ? absent : number(x, what));
  return v;
}

inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

// ---------------------------------------------------------------------------
// Energies, boxes, spaces

/// Energy from {"kind": ...}:
///   quadratic             {n, triplets: [[i,j,v]...]} or {matrix_file}, optional linear
///   graph_dirichlet       {nodes, edges: [[i,j,w]...], dirichlet: [...]}, optional linear
///   fractional_kernel_1d  {n, h, s, p, collar}
///   kernel                {n, p, pairs: [[i,j,w]...], exterior: [[i,d]...]}
/// `base_dir` resolves a relative matrix_file.
inline Energy parse_energy(const Json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ParseError("energy: expected an object");
  const auto& kind_j = detail::field(j, "kind");
  if (!kind_j.is_string()) throw ParseError("energy.kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  auto linear = [&]() -> std::optional<LatticeVec> {
    if (!j.contains("linear") || j.at("linear").is_null()) return std::nullopt;
    return detail::vec(j.at("linear"), "energy.linear");
  };
  if (kind == "quadratic") {
    std::size_t n = 0;
    std::vector<Triplet> t;
    if (j.contains("matrix_file")) {
      const auto& f = j.at("matrix_file");
      if (!f.is_string()) throw ParseError("energy.matrix_file: expected a string");
      std::filesystem::path path = f.get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      t = read_triplets_file(path, &n);
    } else {
      n = detail::index(detail::field(j, "n"), "energy.n");
      const auto& tj = detail::field(j, "triplets");
      if (!tj.is_array()) throw ParseError("energy.triplets: expected an array");
      for (const auto& x : tj) {
        if (!x.is_array() || x.size() != 3) throw ParseError("energy.triplets: each entry must be [i, j, v]");
        t.push_back({detail::index(x[0], "triplet i"), detail::index(x[1], "triplet j"), detail::number(x[2], "triplet v")});
      }
    }
    return QuadraticEnergy(n, t, linear());
  }
  if (kind == "graph_dirichlet") {
    const auto nodes = detail::index(detail::field(j, "nodes"), "energy.nodes");
    const auto edges = detail::edges(detail::field(j, "edges"));
    std::vector<std::size_t> dirichlet;
    if (j.contains("dirichlet")) dirichlet = detail::indices(j.at("dirichlet"), "energy.dirichlet");
    auto e = graph_dirichlet(nodes, edges, dirichlet);
    if (auto b = linear()) return e.with_linear_term(*b);
    return e;
  }
  if (kind == "fractional_kernel_1d") {
    return fractional_kernel_1d(detail::index(detail::field(j, "n"), "energy.n"), detail::number(detail::field(j, "h"), "energy.h"),
                                detail::number(detail::field(j, "s"), "energy.s"), detail::number(detail::field(j, "p"), "energy.p"),
                                detail::index(detail::field(j, "collar"), "energy.collar"));
  }
  if (kind == "kernel") {
    const auto n = detail::index(detail::field(j, "n"), "energy.n");
    const double p = detail::number(detail::field(j, "p"), "energy.p");
    std::vector<KernelPair> pairs;
    const auto& pj = detail::field(j, "pairs");
    if (!pj.is_array()) throw ParseError("energy.pairs: expected an array");
    for (const auto& x : pj) {
      if (!x.is_array() || x.size() != 3) throw ParseError("energy.pairs: each entry must be [i, j, w]");
      pairs.push_back({detail::index(x[0], "pair i"), detail::index(x[1], "pair j"), detail::number(x[2], "pair w")});
    }
    std::vector<ExteriorWeight> exterior;
    if (j.contains("exterior")) {
      if (!j.at("exterior").is_array()) throw ParseError("energy.exterior: expected an array");
      for (const auto& x : j.at("exterior")) {
        if (!x.is_array() || x.size() != 2) throw ParseError("energy.exterior: each entry must be [i, d]");
        exterior.push_back({detail::index(x[0], "exterior i"), detail::number(x[1], "exterior d")});
      }
    }
    return KernelEnergy(n, std::move(pairs), std::move(exterior), p);
  }
  throw ParseError("energy.kind: unknown kind '" + kind + "'");
}

/// {"lo": [...] | null, "hi": [...] | null}; null entries or sides are absent (±kBigBound).
inline OrderInterval parse_box(const Json& j, std::size_t n) {
  if (!j.is_object()) throw ParseError("box: expected an object");
  const Json null_json;
  auto lo = detail::side(j.contains("lo") ? j.at("lo") : null_json, n, -kBigBound, "box.lo");
  auto hi = detail::side(j.contains("hi") ? j.at("hi") : null_json, n, kBigBound, "box.hi");
  return OrderInterval(LatticeVec(std::move(lo)), LatticeVec(std::move(hi)));
}

/// {"points": n, "distances": strict lower triangle, row-major} or {"graph": {...}}.
inline FiniteMetricSpace parse_metric_space(const Json& j);

/// {"graph": {"nodes": N, "edges": [[i, j, length]...]}}, or the shortcuts
/// {"path": {"n", "length"}} and {"grid": {"rows", "cols", "length"}}.
inline GraphSpace parse_graph_space(const Json& j) {
  if (!j.is_object()) throw ParseError("space: expected an object");
  auto length = [](const Json& o) { return o.contains("length") ? detail::number(o.at("length"), "length") : 1.0; };
  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    return GraphSpace(detail::index(detail::field(g, "nodes"), "graph.nodes"), detail::edges(detail::field(g, "edges")));
  }
  if (j.contains("path")) {
    const auto& p = j.at("path");
    return GraphSpace::path(detail::index(detail::field(p, "n"), "path.n"), length(p));
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    return GraphSpace::grid(detail::index(detail::field(g, "rows"), "grid.rows"),
                            detail::index(detail::field(g, "cols"), "grid.cols"), length(g));
  }
  throw ParseError("space: expected one of 'graph', 'path', 'grid'");
}

inline FiniteMetricSpace parse_metric_space(const Json& j) {
  if (j.is_object() && j.contains("points")) {
    return FiniteMetricSpace::from_lower_triangle(detail::index(j.at("points"), "points"),
                                                  detail::numbers(detail::field(j, "distances"), "distances"));
  }
  return parse_graph_space(j).metric();
}

/// {"tol", "max_iter", "omega", "initial"}; absent keys keep the defaults.
inline SolverOptions parse_solver_options(const Json& j) {
  SolverOptions opt;
  if (j.is_null()) return opt;
  if (!j.is_object()) throw ParseError("solver: expected an object");
  if (j.contains("tol")) opt.tol = detail::number(j.at("tol"), "solver.tol");
  if (j.contains("max_iter")) opt.max_iter = detail::index(j.at("max_iter"), "solver.max_iter");
  if (j.contains("omega")) opt.omega = detail::number(j.at("omega"), "solver.omega");
  if (j.contains("initial")) opt.initial = detail::vec(j.at("initial"), "solver.initial");
  return opt;
}

inline std::vector<std::size_t> parse_index_set(const Json& j, const char* what) { return detail::indices(j, what); }

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const LatticeVec& v) { return Json(v.vec()); }

inline Json to_json(const Solution& s) {
  Json j;
  j["u"] = to_json(s.u);
  j["grad"] = to_json(s.grad);
  j["active_lower"] = s.active_lower;
  j["active_upper"] = s.active_upper;
  j["free_set"] = s.free_set;
  j["kkt_residual"] = s.kkt_residual;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  return j;
}

/// {pass, tol, lower_slack_min, upper_slack_min, sup_laplacian, free_harmonicity, lipschitz_ratio}.
/// free_harmonicity is the worst |∇E| over strictly free indices (0 when there are none);
/// lipschitz_ratio is null without a metric or when it is unbounded.
inline Json certificate_json(const LSCertificate& c, double sup_laplacian, const HarmonicityResult& h,
                             std::optional<double> lipschitz) {
  Json j;
  j["pass"] = c.pass;
  j["tol"] = c.tol;
  j["lower_slack_min"] = c.lower_slack_min();
  j["upper_slack_min"] = c.upper_slack_min();
  j["sup_laplacian"] = sup_laplacian;
  j["free_harmonicity"] = h.worst_value;
  j["lipschitz_ratio"] = lipschitz ? detail::finite_or_null(*lipschitz) : Json(nullptr);
  return j;
}

inline Json to_json(const CutoffResult& r) {
  Json j;
  j["omega"] = to_json(r.omega());
  j["phi"] = to_json(r.obstacles.phi);
  j["psi"] = to_json(r.obstacles.psi);
  j["r2"] = r.obstacles.r2;
  j["d0"] = r.obstacles.d0;
  j["sup_laplacian"] = r.sup_laplacian;
  j["obstacle_bound"] = r.obstacle_bound;
  j["lipschitz_ratio"] = detail::finite_or_null(r.lipschitz_ratio);
  return j;
}

inline Json to_json(const KantorovichResult& r) {
  Json j;
  j["eta"] = to_json(r.eta());
  j["phi"] = to_json(r.pair.phi);
  j["phi_c"] = to_json(r.pair.phi_c);
  j["t"] = r.pair.t;
  j["lo"] = to_json(r.pair.lo);
  j["hi"] = to_json(r.pair.hi);
  j["coincidence_set"] = r.pair.coincidence_set;
  j["sup_laplacian"] = r.sup_laplacian;
  j["obstacle_bound"] = r.obstacle_bound;
  j["coincidence_defect"] = r.coincidence_defect;
  j["restriction_defect"] = r.restriction_defect;
  j["reported"] = {{"forward_c_concavity_defect", r.forward_c_concavity_defect},
                   {"backward_c_concavity_defect", r.backward_c_concavity_defect},
                   {"literal_t_eta_defect", r.literal_t_eta_defect},
                   {"literal_backward_defect", r.literal_backward_defect}};
  return j;
}

/// Pretty-printed, trailing newline; keys sorted by construction.
inline void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace lob

#endif  // LOB_IO_HPP_
