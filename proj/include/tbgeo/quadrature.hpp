#pragma once

// Tensor-product Gauss-Legendre quadrature over an axis-aligned box.
// Nodes and weights come from Newton iteration on the Legendre polynomials.

#include <cmath>
#include <functional>
#include <vector>

#include "tbgeo/linalg.hpp"

namespace tbg {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
inline QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Initial guess: Chebyshev-like approximation of the i-th root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Integration region: coordinate box plus quadrature settings.
struct BoxDomain {
  Point lower;
  Point upper;
  int points_per_axis = 12;
  std::string rule = "gauss-legendre";

  int dim() const { return static_cast<int>(lower.size()); }
  Point center() const { return 0.5 * (lower + upper); }
  Point half_widths() const { return 0.5 * (upper - lower); }
};

/// Tensor-product quadrature of f over the box, pairwise-summed.
inline double integrate_box(const BoxDomain& box,
                            const std::function<double(const Point&)>& f,
                            int points_override = 0) {
  const int m = box.dim();
  const int n = points_override > 0 ? points_override : box.points_per_axis;
  QuadratureRule rule = gauss_legendre(n);
  std::vector<int> idx(m, 0);
  std::vector<double> terms;
  Point p(m);
  double jac = 1.0;
  for (int a = 0; a < m; ++a) jac *= 0.5 * (box.upper[a] - box.lower[a]);
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (int a = 0; a < m; ++a) {
      p[a] = box.lower[a] +
             0.5 * (box.upper[a] - box.lower[a]) * (rule.nodes[idx[a]] + 1.0);
      w *= rule.weights[idx[a]];
    }
    terms.push_back(w * f(p));
    int a = 0;
    for (; a < m; ++a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
    done = (a == m);
  }
  return jac * pairwise_sum(terms);
}

/// Uniform grid over a box, endpoints included; visits f at every node.
inline void for_each_grid_point(const BoxDomain& box, int per_axis,
                                const std::function<void(const Point&)>& f) {
  const int m = box.dim();
  std::vector<int> idx(m, 0);
  Point p(m);
  bool done = false;
  while (!done) {
    for (int a = 0; a < m; ++a) {
      double t = per_axis == 1 ? 0.5 : static_cast<double>(idx[a]) / (per_axis - 1);
      p[a] = box.lower[a] + t * (box.upper[a] - box.lower[a]);
    }
    f(p);
    int a = 0;
    for (; a < m; ++a) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
    done = (a == m);
  }
}

}  // namespace tbg
