#pragma once

// Dense helpers shared by the geometric operators: dynamic Eigen aliases over
// a generic scalar, small rank-3/4/5 tensors, and Gauss-Jordan inverse /
// determinant that work for dual-number scalars (pivoting on real parts).

#include <vector>

#include <Eigen/Core>

#include "tbgeo/dual.hpp"
#include "tbgeo/errors.hpp"

namespace tbg {

template <class S> using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S> using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using Point = Eigen::VectorXd;

template <class S>
Point value_of(const VecX<S>& p) {
  Point out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = real_part(p[i]);
  return out;
}

template <class S>
VecX<S> lift_point(const Point& p) {
  VecX<S> out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = S(p[i]);
  return out;
}

template <class S>
struct Tensor3 {
  int n = 0;
  std::vector<S> v;
  explicit Tensor3(int dim) : n(dim), v(static_cast<std::size_t>(dim) * dim * dim, S(0.0)) {}
  S& operator()(int k, int i, int j) { return v[(static_cast<std::size_t>(k) * n + i) * n + j]; }
  const S& operator()(int k, int i, int j) const {
    return v[(static_cast<std::size_t>(k) * n + i) * n + j];
  }
};

template <class S>
struct Tensor4 {
  int n = 0;
  std::vector<S> v;
  explicit Tensor4(int dim)
      : n(dim), v(static_cast<std::size_t>(dim) * dim * dim * dim, S(0.0)) {}
  S& operator()(int l, int i, int j, int k) {
    return v[((static_cast<std::size_t>(l) * n + i) * n + j) * n + k];
  }
  const S& operator()(int l, int i, int j, int k) const {
    return v[((static_cast<std::size_t>(l) * n + i) * n + j) * n + k];
  }
};

template <class S>
struct Tensor5 {
  int n = 0;
  std::vector<S> v;
  explicit Tensor5(int dim)
      : n(dim), v(static_cast<std::size_t>(dim) * dim * dim * dim * dim, S(0.0)) {}
  S& operator()(int a, int l, int i, int j, int k) {
    return v[(((static_cast<std::size_t>(a) * n + l) * n + i) * n + j) * n + k];
  }
  const S& operator()(int a, int l, int i, int j, int k) const {
    return v[(((static_cast<std::size_t>(a) * n + l) * n + i) * n + j) * n + k];
  }
};

/// Gauss-Jordan inverse with partial pivoting on the real parts.
template <class S>
MatX<S> inverse_matrix(MatX<S> m) {
  const Eigen::Index n = m.rows();
  MatX<S> inv = MatX<S>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    double best = std::abs(real_part(m(col, col)));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      double cand = std::abs(real_part(m(r, col)));
      if (cand > best) { best = cand; piv = r; }
    }
    if (best < 1e-300) throw SingularMatrixError("singular matrix in inverse");
    if (piv != col) { m.row(piv).swap(m.row(col)); inv.row(piv).swap(inv.row(col)); }
    S d = m(col, col);
    for (Eigen::Index j = 0; j < n; ++j) { m(col, j) = m(col, j) / d; inv(col, j) = inv(col, j) / d; }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = m(r, col);
      if (real_part(f) == 0.0 && dual_depth_v<S> == 0) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Determinant by LU elimination, pivoting on real parts.
template <class S>
S determinant(MatX<S> m) {
  const Eigen::Index n = m.rows();
  S det = S(1.0);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    double best = std::abs(real_part(m(col, col)));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      double cand = std::abs(real_part(m(r, col)));
      if (cand > best) { best = cand; piv = r; }
    }
    if (best == 0.0) return S(0.0);
    if (piv != col) { m.row(piv).swap(m.row(col)); det = -det; }
    det = det * m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      S f = m(r, col) / m(col, col);
      for (Eigen::Index j = col; j < n; ++j) m(r, j) = m(r, j) - f * m(col, j);
    }
  }
  return det;
}

/// Order-insensitive pairwise summation.
inline double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += xs[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : pairwise_sum(xs, 0, xs.size());
}

}  // namespace tbg
