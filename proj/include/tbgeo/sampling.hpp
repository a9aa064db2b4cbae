#pragma once

// Deterministic random smooth fields and sample points, shared by the
// self-test suite and the property tests.

#include <random>

#include "tbgeo/models.hpp"
#include "tbgeo/quadrature.hpp"

namespace tbg {

/// Default sampling box for a built-in chart: the unit box, except that the
/// hyperbolic half-space stays on y in [0.5, 2], away from its boundary.
inline BoxDomain default_box(const Chart& chart) {
  BoxDomain box;
  box.lower = Point::Constant(chart.dim, -1.0);
  box.upper = Point::Constant(chart.dim, 1.0);
  if (chart.domain_guard) {
    box.lower[chart.dim - 1] = 0.5;
    box.upper[chart.dim - 1] = 2.0;
  }
  return box;
}

inline Point random_point_in_box(const BoxDomain& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p(box.dim());
  for (int a = 0; a < box.dim(); ++a)
    p[a] = box.lower[a] + u(rng) * (box.upper[a] - box.lower[a]);
  return p;
}

/// A bounded polynomial-trig component: random coefficients over a fixed set
/// of smooth basis terms, so the result is differentiable to any depth.
inline SmoothScalarFn random_scalar_component(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::array<double, 6> c;
  for (auto& x : c) x = u(rng);
  std::array<int, 6> a;
  for (auto& x : a) x = pick(rng);
  auto fn = [c, a](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    S v = S(c[0]);
    v += c[1] * q[a[1]];
    v += c[2] * q[a[2]] * q[a[0]];
    v += c[3] * sin(q[a[3]]);
    v += c[4] * cos(q[a[4]]) * q[a[5]];
    v += 0.25 * c[5] * q[a[5]] * q[a[5]] * q[a[1]];
    return v;
  };
  return make_scalar_fn(fn);
}

inline ScalarField random_scalar_field(int dim, std::mt19937_64& rng) {
  return ScalarField{random_scalar_component(dim, rng), "random_f"};
}

inline VectorField random_vector_field(int dim, std::mt19937_64& rng) {
  std::vector<SmoothScalarFn> comps;
  comps.reserve(dim);
  for (int i = 0; i < dim; ++i) comps.push_back(random_scalar_component(dim, rng));
  auto fn = [comps, dim](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    VecX<S> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = comps[i](q);
    return out;
  };
  return VectorField{make_vector_fn(fn), "random_X"};
}

/// Random univariate profile for the f(x)e1-style families.
inline SmoothScalarFn random_univariate_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 5> c;
  for (auto& x : c) x = u(rng);
  auto fn = [c](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    S t = q[0];
    return S(c[0]) + c[1] * t + 0.5 * c[2] * t * t + c[3] * sin(t) + c[4] * cosh(0.5 * t);
  };
  return make_scalar_fn(fn);
}

}  // namespace tbg
