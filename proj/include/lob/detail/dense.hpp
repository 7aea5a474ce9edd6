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

#ifndef LOB_DETAIL_DENSE_HPP_
#define LOB_DETAIL_DENSE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lob::detail {

/// Row-major square matrix. Only used for small problems (PSD checks, the oracle).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Pivoted Cholesky on a copy of `a`. Returns false when a pivot drops below
/// `-pivot_tol` or when the trailing block left after rank detection is not
/// consistent with a PSD matrix.
inline bool is_positive_semidefinite(DenseMatrix a, double pivot_tol = 1e-10) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
  const double rank_tol = 1e-12 * std::max(scale, 1.0);

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(perm[i], perm[i]) > a(perm[best], perm[best])) best = i;
    }
    std::swap(perm[k], perm[best]);
    const std::size_t p = perm[k];
    const double pivot = a(p, p);
    if (pivot < -pivot_tol) return false;
    if (pivot <= rank_tol) {
      // Numerically rank deficient from here on: a PSD remainder obeys
      // |s_ij| <= sqrt(s_ii s_jj), and every diagonal is already tiny.
      for (std::size_t i = k; i < n; ++i) {
        const double sii = a(perm[i], perm[i]);
        if (sii < -pivot_tol) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
          const double sjj = a(perm[j], perm[j]);
          const double bound = std::sqrt(std::max(sii, 0.0) * std::max(sjj, 0.0));
          if (std::abs(a(perm[i], perm[j])) > bound + pivot_tol) return false;
        }
      }
      return true;
    }
    const double root = std::sqrt(pivot);
    for (std::size_t i = k + 1; i < n; ++i) a(perm[i], p) /= root;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double lik = a(perm[i], p);
      for (std::size_t j = k + 1; j <= i; ++j) {
        const double v = a(perm[i], perm[j]) - lik * a(perm[j], p);
        a(perm[i], perm[j]) = v;
        a(perm[j], perm[i]) = v;
      }
    }
  }
  return true;
}

/// Solves a x = rhs by Gaussian elimination with partial pivoting.
/// Returns nullopt when a pivot is below `rel_tol` times the largest entry.
inline std::optional<std::vector<double>> solve_linear(DenseMatrix a, std::vector<double> rhs,
                                                       double rel_tol = 1e-12) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (n == 0) return rhs;
  if (scale == 0.0) return std::nullopt;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (std::abs(a(piv, k)) <= rel_tol * scale) return std::nullopt;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * x[j];
    x[k] = acc / a(k, k);
  }
  return x;
}

}  // namespace lob::detail

#endif  // LOB_DETAIL_DENSE_HPP_
