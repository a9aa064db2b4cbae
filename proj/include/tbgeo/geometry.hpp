#pragma once

// Chart-level geometry: Christoffel symbols, the Riemann tensor and its
// covariant derivative. All derivatives go through nested dual numbers; a
// central finite-difference path is provided as an independent cross-check.
//
// Curvature sign convention (binding for everything downstream):
//   R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
// stored as r(l, i, j, k) = component of R(d_i, d_j) d_k along d_l. The first
// index is the contravariant output slot.

#include <cmath>

#include "tbgeo/chart.hpp"
#include "tbgeo/linalg.hpp"
#include "tbgeo/smooth_fn.hpp"

namespace tbg {

template <class S> using ChristoffelT = Tensor3<S>;
template <class S> using CurvatureT = Tensor4<S>;
template <class S> using CurvatureGradientT = Tensor5<S>;

using ChristoffelSymbols = ChristoffelT<double>;
using CurvatureTensor = CurvatureT<double>;
using CurvatureGradient = CurvatureGradientT<double>;

/// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
template <class S>
ChristoffelT<S> christoffel(const Chart& chart, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> ginv = inverse_matrix(metric_at(chart, p));
  std::vector<MatX<S>> dg(m);
  for (int k = 0; k < m; ++k)
    dg[k] = partial_matrix([&](const auto& q) { return metric_at(chart, q); }, p, k);
  ChristoffelT<S> gamma(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        S sum = S(0.0);
        for (int l = 0; l < m; ++l)
          sum += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma(k, i, j) = 0.5 * sum;
        gamma(k, j, i) = gamma(k, i, j);
      }
  return gamma;
}

/// R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
///         + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik.
template <class S>
CurvatureT<S> riemann(const Chart& chart, const VecX<S>& p) {
  const int m = chart.dim;
  ChristoffelT<S> gamma = christoffel(chart, p);
  std::vector<ChristoffelT<S>> dgamma;
  dgamma.reserve(m);
  for (int a = 0; a < m; ++a) {
    ChristoffelT<Dual<S>> g = christoffel(chart, seed(p, a));
    ChristoffelT<S> d(m);
    for (std::size_t t = 0; t < d.v.size(); ++t) d.v[t] = g.v[t].b;
    dgamma.push_back(std::move(d));
  }
  CurvatureT<S> r(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          S sum = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int a = 0; a < m; ++a)
            sum += gamma(l, i, a) * gamma(a, j, k) - gamma(l, j, a) * gamma(a, i, k);
          r(l, i, j, k) = sum;
        }
  return r;
}

/// (nabla_a R)^l_ijk with the four Christoffel correction sums.
template <class S>
CurvatureGradientT<S> nabla_riemann(const Chart& chart, const VecX<S>& p) {
  const int m = chart.dim;
  ChristoffelT<S> gamma = christoffel(chart, p);
  CurvatureT<S> r = riemann(chart, p);
  std::vector<CurvatureT<S>> dr;
  dr.reserve(m);
  for (int a = 0; a < m; ++a) {
    CurvatureT<Dual<S>> rr = riemann(chart, seed(p, a));
    CurvatureT<S> d(m);
    for (std::size_t t = 0; t < d.v.size(); ++t) d.v[t] = rr.v[t].b;
    dr.push_back(std::move(d));
  }
  CurvatureGradientT<S> out(m);
  for (int a = 0; a < m; ++a)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            S sum = dr[a](l, i, j, k);
            for (int t = 0; t < m; ++t) {
              sum += gamma(l, a, t) * r(t, i, j, k);
              sum -= gamma(t, a, i) * r(l, t, j, k);
              sum -= gamma(t, a, j) * r(l, i, t, k);
              sum -= gamma(t, a, k) * r(l, i, j, t);
            }
            out(a, l, i, j, k) = sum;
          }
  return out;
}

/// Fully lowered tensor R_lijk = g_lm R^m_ijk, used by the symmetry checks.
template <class S>
CurvatureT<S> lower_riemann(const Chart& chart, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> g = metric_at(chart, p);
  CurvatureT<S> up = riemann(chart, p);
  CurvatureT<S> low(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          S sum = S(0.0);
          for (int a = 0; a < m; ++a) sum += g(l, a) * up(a, i, j, k);
          low(l, i, j, k) = sum;
        }
  return low;
}

// ---------------------------------------------------------------------------
// Finite-difference backend. Central differences with a coordinate-scaled
// step; kept as the cross-check oracle for the dual-number path.
// ---------------------------------------------------------------------------

struct DiffBackend {
  enum class Kind { dual, finite_difference };
  Kind kind = Kind::dual;
  int depth = 4;       // dual nesting available
  double step = 1e-4;  // FD base step
};

namespace fd {

inline double step_for(double coord, double base) {
  return base * std::max(1.0, std::abs(coord));
}

inline Eigen::MatrixXd metric_partial(const Chart& chart, const Point& p, int dir,
                                      double base_step) {
  double h = step_for(p[dir], base_step);
  Point hi = p, lo = p;
  hi[dir] += h;
  lo[dir] -= h;
  return (metric_at(chart, Point(hi)) - metric_at(chart, Point(lo))) / (2.0 * h);
}

inline ChristoffelSymbols christoffel(const Chart& chart, const Point& p,
                                      double base_step = 1e-4) {
  const int m = chart.dim;
  Eigen::MatrixXd ginv = inverse_matrix(MatX<double>(metric_at(chart, p)));
  std::vector<Eigen::MatrixXd> dg(m);
  for (int k = 0; k < m; ++k) dg[k] = metric_partial(chart, p, k, base_step);
  ChristoffelSymbols gamma(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double sum = 0.0;
        for (int l = 0; l < m; ++l)
          sum += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma(k, i, j) = 0.5 * sum;
      }
  return gamma;
}

inline CurvatureTensor riemann(const Chart& chart, const Point& p,
                               double base_step = 1e-4) {
  const int m = chart.dim;
  ChristoffelSymbols gamma = christoffel(chart, p, base_step);
  std::vector<ChristoffelSymbols> dgamma;
  dgamma.reserve(m);
  for (int a = 0; a < m; ++a) {
    double h = step_for(p[a], base_step);
    Point hi = p, lo = p;
    hi[a] += h;
    lo[a] -= h;
    ChristoffelSymbols gp = christoffel(chart, hi, base_step);
    ChristoffelSymbols gm = christoffel(chart, lo, base_step);
    ChristoffelSymbols d(m);
    for (std::size_t t = 0; t < d.v.size(); ++t) d.v[t] = (gp.v[t] - gm.v[t]) / (2.0 * h);
    dgamma.push_back(std::move(d));
  }
  CurvatureTensor r(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double sum = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int a = 0; a < m; ++a)
            sum += gamma(l, i, a) * gamma(a, j, k) - gamma(l, j, a) * gamma(a, i, k);
          r(l, i, j, k) = sum;
        }
  return r;
}

}  // namespace fd
}  // namespace tbg
