#pragma once

// Independent verification path. The tangent bundle of an m-chart is a
// 2m-chart with induced coordinates (x, u); its Sasaki metric is assembled
// through the lift frame: the horizontal lift of d_i at (x, u) is
// d_i - Gamma^k_{ij} u^j d_{u^k}, verticals are the fiber directions, and the
// metric makes the two families orthogonal copies of g. A generic two-chart
// map tension computer then cross-checks the closed-form tension of a vector
// field without reusing any of its formulas.

#include <utility>

#include "tbgeo/fields.hpp"

namespace tbg {

struct TangentChart {
  Chart base;
  Chart chart;  // dimension 2 * base.dim
};

namespace detail {

/// Coordinate components of the Sasaki metric at q = (x, u):
/// with A^k_i = Gamma^k_{ij}(x) u^j, a coordinate vector (wx, wu) has
/// horizontal part wx and vertical part wu + A wx, so
/// G = [[g + A^T g A, A^T g], [g A, g]].
template <class S>
MatX<S> sasaki_metric_components(const Chart& base, const VecX<S>& q) {
  const int m = base.dim;
  VecX<S> x = q.head(m);
  VecX<S> u = q.tail(m);
  MatX<S> g = metric_at(base, x);
  ChristoffelT<S> gamma = christoffel(base, x);
  MatX<S> A(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i) {
      S sum = S(0.0);
      for (int j = 0; j < m; ++j) sum += gamma(k, i, j) * u[j];
      A(k, i) = sum;
    }
  MatX<S> gA = g * A;
  MatX<S> G(2 * m, 2 * m);
  G.topLeftCorner(m, m) = g + A.transpose() * gA;
  G.topRightCorner(m, m) = A.transpose() * g;
  G.bottomLeftCorner(m, m) = gA;
  G.bottomRightCorner(m, m) = g;
  return G;
}

}  // namespace detail

/// The induced 2m-chart of TM with the Sasaki metric.
inline TangentChart tangent_chart(const Chart& base) {
  TangentChart tc;
  tc.base = base;
  tc.chart.dim = 2 * base.dim;
  tc.chart.name = "T(" + base.name + ")";
  Chart b = base;
  // The base Christoffels consume one dual level, so the assembled metric is
  // differentiable one level less than the base metric.
  tc.chart.metric = make_matrix_fn<kMaxDualDepth - 1>(
      [b](const auto& q) { return detail::sasaki_metric_components(b, q); });
  if (base.domain_guard) {
    int m = base.dim;
    auto guard = base.domain_guard;
    tc.chart.domain_guard = [m, guard](const Point& q) { return guard(q.head(m)); };
  }
  return tc;
}

template <class S>
MatX<S> sasaki_metric(const TangentChart& tc, const VecX<S>& q) {
  return metric_at(tc.chart, q);
}

/// Split a coordinate tangent vector of TM at q = (x, u) into the base vectors
/// (w1, w2) with w = w1^h + w2^v. Reconstruction is exact by construction.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> lift_decompose(
    const TangentChart& tc, const Point& q, const Eigen::VectorXd& w) {
  const int m = tc.base.dim;
  Point x = q.head(m);
  Eigen::VectorXd u = q.tail(m);
  ChristoffelSymbols gamma = christoffel(tc.base, Point(x));
  Eigen::VectorXd w1 = w.head(m);
  Eigen::VectorXd w2 = w.tail(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) w2[k] += gamma(k, i, j) * w1[i] * u[j];
  return {w1, w2};
}

/// Coordinate components at (x, u) of the horizontal lift of a base vector v.
inline Eigen::VectorXd horizontal_lift(const TangentChart& tc, const Point& q,
                                       const Eigen::VectorXd& v) {
  const int m = tc.base.dim;
  Point x = q.head(m);
  Eigen::VectorXd u = q.tail(m);
  ChristoffelSymbols gamma = christoffel(tc.base, Point(x));
  Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * m);
  w.head(m) = v;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) w[m + k] -= gamma(k, i, j) * v[i] * u[j];
  return w;
}

inline Eigen::VectorXd vertical_lift(const TangentChart& tc, const Eigen::VectorXd& v) {
  const int m = tc.base.dim;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * m);
  w.tail(m) = v;
  return w;
}

struct SmoothMap {
  Chart source;
  Chart target;
  SmoothVectorFn value;

  template <class S>
  VecX<S> operator()(const VecX<S>& p) const { return value(p); }
};

/// tau_1(phi)^c = g^{ij} (d_i d_j phi^c - Gamma^k_ij d_k phi^c
///                        + Gamma'^c_ab(phi(p)) d_i phi^a d_j phi^b).
inline Eigen::VectorXd map_tension(const SmoothMap& map, const Point& p) {
  const int m = map.source.dim;
  const int n = map.target.dim;
  Eigen::MatrixXd ginv = inverse_matrix(Eigen::MatrixXd(metric_at(map.source, Point(p))));
  ChristoffelSymbols gamma = christoffel(map.source, Point(p));
  Eigen::VectorXd phi = map(Point(p));
  ChristoffelSymbols gamma_target = christoffel(map.target, Point(phi));

  Eigen::MatrixXd dphi(n, m);  // dphi(c, k) = d_k phi^c
  for (int k = 0; k < m; ++k)
    dphi.col(k) = partial_vector([&](const auto& q) { return map(q); }, Point(p), k);
  std::vector<Eigen::MatrixXd> ddphi(n, Eigen::MatrixXd(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd h = partial_vector(
          [&](const auto& q) {
            return partial_vector([&](const auto& qq) { return map(qq); }, q, j);
          },
          Point(p), i);
      for (int c = 0; c < n; ++c) ddphi[c](i, j) = h[c];
    }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int c = 0; c < n; ++c) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (ginv(i, j) == 0.0) continue;
        double term = ddphi[c](i, j);
        for (int k = 0; k < m; ++k) term -= gamma(k, i, j) * dphi(c, k);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            term += gamma_target(c, a, b) * dphi(a, i) * dphi(b, j);
        sum += ginv(i, j) * term;
      }
    out[c] = sum;
  }
  return out;
}

/// The map p -> (p, X(p)) from the chart into its tangent bundle.
inline SmoothMap field_as_map(const TangentChart& tc, const VectorField& X) {
  const int m = tc.base.dim;
  SmoothMap map;
  map.source = tc.base;
  map.target = tc.chart;
  map.value = make_vector_fn<4>([m, X](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    VecX<S> out(2 * m);
    out.head(m) = q;
    out.tail(m) = X(q);
    return out;
  });
  return map;
}

/// Sup-norm difference between the generic map tension of X : M -> TM,
/// lift-decomposed at (p, X(p)), and the closed-form (-S(X), -LapX).
inline double verify_tension_decomposition(const Chart& chart, const VectorField& X,
                                           const Point& p) {
  TangentChart tc = tangent_chart(chart);
  SmoothMap map = field_as_map(tc, X);
  Eigen::VectorXd tau = map_tension(map, p);
  Point q(2 * chart.dim);
  q.head(chart.dim) = p;
  q.tail(chart.dim) = X(Point(p));
  auto [h, v] = lift_decompose(tc, q, tau);
  Eigen::VectorXd dh = h + s_tensor(chart, X, Point(p));
  Eigen::VectorXd dv = v + rough_laplacian(chart, X, Point(p));
  return std::max(dh.cwiseAbs().maxCoeff(), dv.cwiseAbs().maxCoeff());
}

}  // namespace tbg
