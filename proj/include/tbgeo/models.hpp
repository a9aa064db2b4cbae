#pragma once

// Built-in charts (Euclidean space, the Heisenberg group Nil3, hyperbolic
// upper half-space), the named vector-field families, and the ODE layer:
// residuals of the characteristic equations, Euler exponents, and a local
// RK4 integrator with blow-up detection.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tbgeo/fields.hpp"

namespace tbg {

// ---------------------------------------------------------------------------
// Charts
// ---------------------------------------------------------------------------

inline Chart euclidean_chart(int m) {
  Chart c;
  c.dim = m;
  c.name = "euclidean(" + std::to_string(m) + ")";
  c.metric = make_matrix_fn([m](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    return MatX<S>(MatX<S>::Identity(m, m));
  });
  return c;
}

/// Nil3 = R^3 with (dx)^2 + (dy - x dz)^2 + (dz)^2, coordinates (x, y, z).
inline Chart nil3_chart() {
  Chart c;
  c.dim = 3;
  c.name = "nil3";
  c.metric = make_matrix_fn([](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    S x = q[0];
    MatX<S> g(3, 3);
    g << S(1.0), S(0.0), S(0.0),
         S(0.0), S(1.0), -x,
         S(0.0), -x, 1.0 + x * x;
    return g;
  });
  return c;
}

/// Upper half-space model of H^n, curvature -c^2, coordinates (x_1..x_{n-1}, y),
/// metric (cy)^{-2} times the identity, valid for y > 0.
inline Chart hyperbolic_chart(int n, double c) {
  Chart chart;
  chart.dim = n;
  chart.name = "hyperbolic(" + std::to_string(n) + "," + std::to_string(c) + ")";
  chart.metric = make_matrix_fn([n, c](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    S y = q[n - 1];
    S w = 1.0 / (c * c * y * y);
    MatX<S> g = MatX<S>::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = w;
    return g;
  });
  chart.domain_guard = [n](const Point& p) { return p[n - 1] > 0.0; };
  return chart;
}

inline Chart model_chart(const std::string& id, int n = 2, double c = 1.0) {
  if (id == "euclidean") return euclidean_chart(n);
  if (id == "nil3") return nil3_chart();
  if (id == "hyperbolic") return hyperbolic_chart(n, c);
  throw ConfigError("unknown manifold id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Frame fields used throughout the examples
// ---------------------------------------------------------------------------

/// The left-invariant frame e1 = d_x, e2 = d_y, e3 = d_z + x d_y of Nil3.
inline VectorField nil3_frame_field(int i) {
  return VectorField{make_vector_fn([i](const auto& q) {
                       using S = typename std::decay_t<decltype(q)>::Scalar;
                       VecX<S> v = VecX<S>::Zero(3);
                       if (i == 0) v[0] = S(1.0);
                       if (i == 1) v[1] = S(1.0);
                       if (i == 2) { v[1] = q[0]; v[2] = S(1.0); }
                       return v;
                     }),
                     "e" + std::to_string(i + 1)};
}

/// V = c y d_y on H^n.
inline VectorField hyperbolic_v_field(int n, double c) {
  return VectorField{make_vector_fn([n, c](const auto& q) {
                       using S = typename std::decay_t<decltype(q)>::Scalar;
                       VecX<S> v = VecX<S>::Zero(n);
                       v[n - 1] = c * q[n - 1];
                       return v;
                     }),
                     "V"};
}

/// E_i = c y d_{x_i} on H^n.
inline VectorField hyperbolic_e_field(int n, double c, int i) {
  return VectorField{make_vector_fn([n, c, i](const auto& q) {
                       using S = typename std::decay_t<decltype(q)>::Scalar;
                       VecX<S> v = VecX<S>::Zero(n);
                       v[i] = c * q[n - 1];
                       return v;
                     }),
                     "E" + std::to_string(i + 1)};
}

// ---------------------------------------------------------------------------
// Field families
// ---------------------------------------------------------------------------

/// A family instance: the stable id, real parameters, and (for the families
/// that take user functions) scalar profiles. Profiles are called with a
/// single coordinate for the univariate families and with the full chart
/// point for the planar ones.
struct FieldFamilySpec {
  std::string id;
  std::vector<double> reals;
  std::vector<SmoothScalarFn> profiles;
};

namespace detail {

template <class S>
S eval_univariate(const SmoothScalarFn& f, const S& t) {
  VecX<S> p(1);
  p[0] = t;
  return f(p);
}

}  // namespace detail

/// Realize a family as a vector field on its model chart.
/// Families: "r2-biharmonic" (reals A,B,C,D,a,b,beta), "r2-xu-plus-v"
/// (profiles u, v), "nil3-e1" / "nil3-e3" (profile f), "hyperbolic-fV"
/// (reals n, c; profile f).
inline VectorField field_family(const FieldFamilySpec& spec) {
  if (spec.id == "r2-biharmonic") {
    if (spec.reals.size() != 7)
      throw ConfigError("r2-biharmonic expects 7 parameters A,B,C,D,a,b,beta");
    double A = spec.reals[0], B = spec.reals[1], C = spec.reals[2], D = spec.reals[3];
    double a = spec.reals[4], b = spec.reals[5], beta = spec.reals[6];
    auto fn = [=](const auto& q) {
      using S = typename std::decay_t<decltype(q)>::Scalar;
      S x = q[0], y = q[1];
      VecX<S> v(2);
      v[0] = ((A + C * x) * cosh(beta * x) + (B + D * x) * sinh(beta * x)) *
             (a * cos(beta * y) + b * sin(beta * y));
      v[1] = ((A + C * x) * cos(beta * x) + (B + D * x) * sin(beta * x)) *
             (a * cosh(beta * y) + b * sinh(beta * y));
      return v;
    };
    return VectorField{make_vector_fn(fn), "r2-biharmonic"};
  }
  if (spec.id == "r2-xu-plus-v") {
    if (spec.profiles.size() != 2)
      throw ConfigError("r2-xu-plus-v expects two harmonic profiles u, v");
    SmoothScalarFn u = spec.profiles[0], v = spec.profiles[1];
    auto fn = [u, v](const auto& q) {
      using S = typename std::decay_t<decltype(q)>::Scalar;
      S uu = u(q), vv = v(q);
      VecX<S> out(2);
      out[0] = q[0] * uu + vv;
      out[1] = q[1] * uu + vv;
      return out;
    };
    return VectorField{make_vector_fn<4>(fn), "r2-xu-plus-v"};
  }
  if (spec.id == "nil3-e1") {
    if (spec.profiles.size() != 1) throw ConfigError("nil3-e1 expects one profile f(x)");
    SmoothScalarFn f = spec.profiles[0];
    auto fn = [f](const auto& q) {
      using S = typename std::decay_t<decltype(q)>::Scalar;
      VecX<S> out = VecX<S>::Zero(3);
      out[0] = detail::eval_univariate(f, q[0]);
      return out;
    };
    return VectorField{make_vector_fn<4>(fn), "nil3-e1"};
  }
  if (spec.id == "nil3-e3") {
    if (spec.profiles.size() != 1) throw ConfigError("nil3-e3 expects one profile f(z)");
    SmoothScalarFn f = spec.profiles[0];
    auto fn = [f](const auto& q) {
      using S = typename std::decay_t<decltype(q)>::Scalar;
      S fz = detail::eval_univariate(f, q[2]);
      VecX<S> out = VecX<S>::Zero(3);
      out[1] = q[0] * fz;
      out[2] = fz;
      return out;
    };
    return VectorField{make_vector_fn<4>(fn), "nil3-e3"};
  }
  if (spec.id == "hyperbolic-fV") {
    if (spec.reals.size() != 2 || spec.profiles.size() != 1)
      throw ConfigError("hyperbolic-fV expects reals n, c and one profile f(y)");
    int n = static_cast<int>(spec.reals[0]);
    double c = spec.reals[1];
    SmoothScalarFn f = spec.profiles[0];
    auto fn = [n, c, f](const auto& q) {
      using S = typename std::decay_t<decltype(q)>::Scalar;
      VecX<S> out = VecX<S>::Zero(n);
      out[n - 1] = c * q[n - 1] * detail::eval_univariate(f, q[n - 1]);
      return out;
    };
    return VectorField{make_vector_fn<4>(fn), "hyperbolic-fV"};
  }
  throw ConfigError("unknown field family '" + spec.id + "'");
}

// ---------------------------------------------------------------------------
// ODE layer
// ---------------------------------------------------------------------------

/// Roots of r^2 - (n-1) r - (n-1) = 0, the exponents of the harmonic
/// Cauchy-Euler equation on H^n.
inline std::pair<double, double> euler_exponents(int n) {
  double disc = std::sqrt(static_cast<double>(n - 1) * (n + 3));
  return {((n - 1) - disc) / 2.0, ((n - 1) + disc) / 2.0};
}

/// Left-minus-right residual of the named characteristic equation at t.
/// Ids: "heisenberg"            f'''' - f'' + f/4 = 0
///      "hyperbolic-harmonic"   y^2 f'' - (n-2) y f' - (n-1) f = 0
///      "hyperbolic-biharmonic" y^4 f'''' + (8-2n) y^3 f''' + (n-8)(n-2) y^2 f''
///                              + (n-2)(3n-4) y f' + (n-1)^2 f = -2 c^2 (n-1)^2 f^3
///      "transformed"           v'''' + (2-2n) v''' + (n-1)(n-3) v''
///                              + 2(n-1)^2 v' + (n-1)^2 v + 2 c^2 (n-1)^2 v^3 = 0
inline double ode_residual(const std::string& id, const SmoothScalarFn& f, double t,
                           int n = 2, double c = 1.0) {
  auto d = scalar_derivatives(f, t);
  double nn = n;
  if (id == "heisenberg") return d[4] - d[2] + 0.25 * d[0];
  if (id == "hyperbolic-harmonic")
    return t * t * d[2] - (nn - 2.0) * t * d[1] - (nn - 1.0) * d[0];
  if (id == "hyperbolic-biharmonic") {
    double lhs = std::pow(t, 4) * d[4] + (8.0 - 2.0 * nn) * std::pow(t, 3) * d[3] +
                 (nn - 8.0) * (nn - 2.0) * t * t * d[2] +
                 (nn - 2.0) * (3.0 * nn - 4.0) * t * d[1] + (nn - 1.0) * (nn - 1.0) * d[0];
    double rhs = -2.0 * c * c * (nn - 1.0) * (nn - 1.0) * std::pow(d[0], 3);
    return lhs - rhs;
  }
  if (id == "transformed")
    return d[4] + (2.0 - 2.0 * nn) * d[3] + (nn - 1.0) * (nn - 3.0) * d[2] +
           2.0 * (nn - 1.0) * (nn - 1.0) * d[1] + (nn - 1.0) * (nn - 1.0) * d[0] +
           2.0 * c * c * (nn - 1.0) * (nn - 1.0) * std::pow(d[0], 3);
  throw ConfigError("unknown ode id '" + id + "'");
}

/// Order-4 scalar ODE in explicit form v'''' = F(t, v, v', v'', v''').
struct OdeSpec {
  std::function<double(double, const std::array<double, 4>&)> rhs;
  std::string name;
};

/// The substituted biharmonic equation (y = e^t form) as an explicit ODE.
inline OdeSpec transformed_biharmonic_ode(int n, double c) {
  double nn = n;
  OdeSpec spec;
  spec.name = "transformed(n=" + std::to_string(n) + ")";
  spec.rhs = [nn, c](double, const std::array<double, 4>& s) {
    return -((2.0 - 2.0 * nn) * s[3] + (nn - 1.0) * (nn - 3.0) * s[2] +
             2.0 * (nn - 1.0) * (nn - 1.0) * s[1] + (nn - 1.0) * (nn - 1.0) * s[0] +
             2.0 * c * c * (nn - 1.0) * (nn - 1.0) * s[0] * s[0] * s[0]);
  };
  return spec;
}

struct Trajectory {
  std::vector<double> t;
  std::vector<std::array<double, 4>> state;  // v, v', v'', v'''
  std::optional<double> blow_up;             // escape time, if reached
};

inline constexpr double kBlowUpThreshold = 1e8;

/// Classical RK4 on the order-4 system; halts and records t* when |v| (or any
/// derivative) exceeds the blow-up threshold or stops being finite.
inline Trajectory integrate_local(const OdeSpec& spec, std::array<double, 4> init,
                                  double t0, double t1, double step) {
  if (step <= 0.0) throw ConfigError("step must be positive");
  for (double x : init)
    if (!std::isfinite(x) || std::abs(x) > kBlowUpThreshold)
      throw DegenerateInputError("initial state already past the blow-up threshold");

  auto deriv = [&](double t, const std::array<double, 4>& s) {
    return std::array<double, 4>{s[1], s[2], s[3], spec.rhs(t, s)};
  };
  auto axpy = [](const std::array<double, 4>& s, double h, const std::array<double, 4>& d) {
    std::array<double, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = s[i] + h * d[i];
    return out;
  };

  Trajectory traj;
  double t = t0;
  std::array<double, 4> s = init;
  traj.t.push_back(t);
  traj.state.push_back(s);
  while (t < t1 - 0.5 * step) {
    double h = std::min(step, t1 - t);
    auto k1 = deriv(t, s);
    auto k2 = deriv(t + 0.5 * h, axpy(s, 0.5 * h, k1));
    auto k3 = deriv(t + 0.5 * h, axpy(s, 0.5 * h, k2));
    auto k4 = deriv(t + h, axpy(s, h, k3));
    for (int i = 0; i < 4; ++i)
      s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    bool escaped = false;
    for (double x : s)
      if (!std::isfinite(x) || std::abs(x) > kBlowUpThreshold) escaped = true;
    if (escaped) {
      traj.blow_up = t;
      break;
    }
    traj.t.push_back(t);
    traj.state.push_back(s);
  }
  return traj;
}

}  // namespace tbg
