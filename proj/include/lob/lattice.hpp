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

// Finite-dimensional vector-lattice primitives on R^n with the componentwise
// order. Dual elements are plain vectors paired through the Euclidean inner
// product, so the dual lattice operations are componentwise as well.
//
// Lattice operations compare exactly; tolerances belong to the certificate
// layer.

#ifndef LOB_LATTICE_HPP_
#define LOB_LATTICE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lob/error.hpp"

namespace lob {

/// Magnitude at which an obstacle side is treated as absent (one-sided problems).
inline constexpr double kBigBound = 1e30;

/// A finite real vector with the componentwise order. Immutable once built.
class LatticeVec {
 public:
  LatticeVec(std::vector<double> values) : values_(std::move(values)) { validate(); }
  LatticeVec(std::initializer_list<double> values) : values_(values) { validate(); }

  static LatticeVec zeros(std::size_t n) { return constant(n, 0.0); }
  static LatticeVec constant(std::size_t n, double c) { return LatticeVec(std::vector<double>(n, c)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vec() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const LatticeVec&, const LatticeVec&) = default;

 private:
  void validate() const {
    if (values_.empty()) throw ConstructionError("LatticeVec: length must be >= 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw ConstructionError("LatticeVec: entry " + std::to_string(i) + " is not finite");
      }
    }
  }

  std::vector<double> values_;
};

namespace detail {

template <class Op>
LatticeVec zip(const LatticeVec& u, const LatticeVec& v, const char* what, Op op) {
  require_same_size(u.size(), v.size(), what);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = op(u[i], v[i]);
  return LatticeVec(std::move(out));
}

template <class Op>
LatticeVec map(const LatticeVec& u, Op op) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = op(u[i]);
  return LatticeVec(std::move(out));
}

}  // namespace detail

/// Componentwise minimum (u ∧ v).
inline LatticeVec meet(const LatticeVec& u, const LatticeVec& v) {
  return detail::zip(u, v, "meet", [](double a, double b) { return std::min(a, b); });
}

/// Componentwise maximum (u ∨ v).
inline LatticeVec join(const LatticeVec& u, const LatticeVec& v) {
  return detail::zip(u, v, "join", [](double a, double b) { return std::max(a, b); });
}

/// u ∨ 0
inline LatticeVec positive_part(const LatticeVec& u) {
  return detail::map(u, [](double a) { return std::max(a, 0.0); });
}

/// u ∧ 0
inline LatticeVec negative_part(const LatticeVec& u) {
  return detail::map(u, [](double a) { return std::min(a, 0.0); });
}

inline LatticeVec operator+(const LatticeVec& u, const LatticeVec& v) {
  return detail::zip(u, v, "add", [](double a, double b) { return a + b; });
}

inline LatticeVec operator-(const LatticeVec& u, const LatticeVec& v) {
  return detail::zip(u, v, "subtract", [](double a, double b) { return a - b; });
}

inline LatticeVec operator-(const LatticeVec& u) {
  return detail::map(u, [](double a) { return -a; });
}

inline LatticeVec operator*(double s, const LatticeVec& u) {
  return detail::map(u, [s](double a) { return s * a; });
}

inline double dot(const LatticeVec& u, const LatticeVec& v) {
  detail::require_same_size(u.size(), v.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

inline double max_norm(const LatticeVec& u) {
  double m = 0.0;
  for (double a : u) m = std::max(m, std::abs(a));
  return m;
}

inline double min_entry(const LatticeVec& u) { return *std::min_element(u.begin(), u.end()); }
inline double max_entry(const LatticeVec& u) { return *std::max_element(u.begin(), u.end()); }

/// u ≤ v componentwise.
inline bool leq(const LatticeVec& u, const LatticeVec& v) {
  detail::require_same_size(u.size(), v.size(), "leq");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] <= v[i])) return false;
  }
  return true;
}

/// The order interval [lo, hi] = {z : lo ≤ z ≤ hi}.
class OrderInterval {
 public:
  OrderInterval(LatticeVec lo, LatticeVec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    detail::require_same_size(lo_.size(), hi_.size(), "OrderInterval");
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (!(lo_[i] <= hi_[i])) {
        throw ConstructionError("OrderInterval: lo > hi at index " + std::to_string(i));
      }
    }
  }

  /// Box whose missing sides sit at ±kBigBound.
  static OrderInterval lower_only(LatticeVec lo) {
    auto hi = LatticeVec::constant(lo.size(), kBigBound);
    return OrderInterval(std::move(lo), std::move(hi));
  }
  static OrderInterval upper_only(LatticeVec hi) {
    auto lo = LatticeVec::constant(hi.size(), -kBigBound);
    return OrderInterval(std::move(lo), std::move(hi));
  }
  static OrderInterval unbounded(std::size_t n) {
    return OrderInterval(LatticeVec::constant(n, -kBigBound), LatticeVec::constant(n, kBigBound));
  }

  const LatticeVec& lo() const { return lo_; }
  const LatticeVec& hi() const { return hi_; }
  std::size_t size() const { return lo_.size(); }

  bool contains(const LatticeVec& u) const { return leq(lo_, u) && leq(u, hi_); }

  /// True when every lower entry is at -kBigBound, i.e. there is no lower obstacle.
  bool lower_absent() const {
    return std::all_of(lo_.begin(), lo_.end(), [](double a) { return a <= -kBigBound; });
  }
  bool upper_absent() const {
    return std::all_of(hi_.begin(), hi_.end(), [](double a) { return a >= kBigBound; });
  }

 private:
  LatticeVec lo_;
  LatticeVec hi_;
};

/// Componentwise median(lo_i, u_i, hi_i); the projection onto the box.
inline LatticeVec clamp(const LatticeVec& u, const OrderInterval& box) {
  detail::require_same_size(u.size(), box.size(), "clamp");
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::clamp(u[i], box.lo()[i], box.hi()[i]);
  return LatticeVec(std::move(out));
}

// Riesz–Kantorovich formulae. For x ≥ 0,
//   (l ∨ m)(x) = sup_{0 ≤ z ≤ x} l(z) + m(x − z),
//   (l ∧ m)(x) = inf_{0 ≤ z ≤ x} l(z) + m(x − z).
// The objective is separable, so each coordinate picks z_i ∈ {0, x_i}.

namespace detail {

template <class Pick>
double riesz_kantorovich(const LatticeVec& l, const LatticeVec& m, const LatticeVec& x, const char* what,
                         Pick pick) {
  require_same_size(l.size(), m.size(), what);
  require_same_size(l.size(), x.size(), what);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) {
      throw PreconditionError(std::string(what) + ": x must be >= 0 (index " + std::to_string(i) + ")");
    }
    // z_i = x_i contributes l_i x_i, z_i = 0 contributes m_i x_i.
    acc += pick(l[i] * x[i], m[i] * x[i]);
  }
  return acc;
}

}  // namespace detail

inline double rk_join(const LatticeVec& l, const LatticeVec& m, const LatticeVec& x) {
  return detail::riesz_kantorovich(l, m, x, "rk_join", [](double a, double b) { return std::max(a, b); });
}

inline double rk_meet(const LatticeVec& l, const LatticeVec& m, const LatticeVec& x) {
  return detail::riesz_kantorovich(l, m, x, "rk_meet", [](double a, double b) { return std::min(a, b); });
}

}  // namespace lob

#endif  // LOB_LATTICE_HPP_
