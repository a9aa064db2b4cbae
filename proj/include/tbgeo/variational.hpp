#pragma once

// The section-3 machinery: tension of a vector field into (TM, g_S), the
// bitension (critical-point condition for the bienergy), the bienergy density
// and integral, a numeric first variation, and the residual-based classifier.

#include <cmath>
#include <limits>
#include <string>

#include "tbgeo/fields.hpp"
#include "tbgeo/quadrature.hpp"

namespace tbg {

/// tau_1(X) = (-S(X))^h + (-LapX)^v, split into its two orthogonal parts.
struct TensionValue {
  Eigen::VectorXd horizontal;  // -S(X)
  Eigen::VectorXd vertical;    // -LapX
};

inline TensionValue tension(const Chart& chart, const VectorField& X, const Point& p) {
  return TensionValue{-s_tensor(chart, X, p), -rough_laplacian(chart, X, p)};
}

/// ||tau_1||^2 under the Sasaki metric: the lifts are orthogonal, so this is
/// g(S,S) + g(LapX, LapX) at the base point.
inline double tension_squared_norm(const Chart& chart, const Point& p,
                                   const TensionValue& t) {
  Eigen::MatrixXd g = metric_at(chart, Point(p));
  return t.horizontal.dot(g * t.horizontal) + t.vertical.dot(g * t.vertical);
}

/// Left side of the biharmonic-vector-field equation:
///   LapLapX + g^{ij} [ (nabla_i R)(d_j, S(X)) X + R(d_i, nabla_j S(X)) X
///                      + 2 R(d_i, S(X)) nabla_j X ].
inline Eigen::VectorXd bitension(const Chart& chart, const VectorField& X,
                                 const Point& p) {
  const int m = chart.dim;
  VectorField lap = rough_laplacian_field(chart, X);
  Eigen::VectorXd out = rough_laplacian(chart, lap, Point(p));

  Eigen::MatrixXd ginv = inverse_matrix(Eigen::MatrixXd(metric_at(chart, Point(p))));
  CurvatureTensor r = riemann(chart, Point(p));
  CurvatureGradient dr = nabla_riemann(chart, Point(p));
  Eigen::VectorXd x = X(Point(p));
  Eigen::VectorXd s = s_tensor(chart, X, Point(p));
  VectorField sfield = s_tensor_field(chart, X);
  std::vector<Eigen::VectorXd> cov_x(m), cov_s(m);
  for (int i = 0; i < m; ++i) {
    cov_x[i] = covariant_derivative(chart, X, i, Point(p));
    cov_s[i] = covariant_derivative(chart, sfield, i, Point(p));
  }
  for (int l = 0; l < m; ++l) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (ginv(i, j) == 0.0) continue;
        double t1 = 0.0, t2 = 0.0, t3 = 0.0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            t1 += dr(i, l, j, a, b) * s[a] * x[b];
            t2 += r(l, j, a, b) * cov_s[i][a] * x[b];
            t3 += r(l, j, a, b) * s[a] * cov_x[i][b];
          }
        sum += ginv(i, j) * (t1 + t2 + 2.0 * t3);
      }
    out[l] += sum;
  }
  return out;
}

/// 1/2 (|S(X)|_g^2 + |LapX|_g^2).
inline double bienergy_density(const Chart& chart, const VectorField& X, const Point& p) {
  return 0.5 * tension_squared_norm(chart, p, tension(chart, X, p));
}

struct QuadResult {
  double value = 0.0;
  double refined = 0.0;   // value at the refined rule
  bool converged = true;  // |value - refined| within tolerance
};

/// E_2(X) over the box: quadrature of the bienergy density times sqrt(det g).
inline QuadResult bienergy(const Chart& chart, const VectorField& X, const BoxDomain& box,
                           double tol = 1e-6) {
  auto integrand = [&](const Point& p) {
    double vol = std::sqrt(determinant(Eigen::MatrixXd(metric_at(chart, Point(p)))));
    return bienergy_density(chart, X, p) * vol;
  };
  QuadResult res;
  res.value = integrate_box(box, integrand);
  res.refined = integrate_box(box, integrand, box.points_per_axis + 4);
  res.converged =
      std::abs(res.value - res.refined) <= tol * std::max(1.0, std::abs(res.value));
  return res;
}

/// Smooth bump supported on the inscribed ellipsoid of the box:
/// exp(1 - 1/(1 - r^2)) for r < 1, zero outside; equals 1 at the center.
inline ScalarField bump_function(const BoxDomain& box) {
  Point c = box.center();
  Point h = box.half_widths();
  auto fn = [c, h](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    S r2 = S(0.0);
    for (Eigen::Index a = 0; a < c.size(); ++a) {
      S u = (q[a] - c[a]) / h[a];
      r2 += u * u;
    }
    if (real_part(r2) >= 1.0) return S(0.0);
    return exp(1.0 - 1.0 / (1.0 - r2));
  };
  return ScalarField{make_scalar_fn(fn), "bump"};
}

/// V multiplied by the box bump, making it compactly supported inside the box.
inline VectorField compactly_supported(const BoxDomain& box, const VectorField& V) {
  return multiply_field(bump_function(box), V);
}

struct FirstVariation {
  double lhs = 0.0;  // numeric d/dt E_2(X + t V) at t = 0
  double rhs = 0.0;  // quadrature of g(bitension(X), V)
  bool converged = true;
};

/// Both sides of the first-variation identity. V is bump-multiplied here so
/// that the variation is compactly supported inside the box.
inline FirstVariation first_variation(const Chart& chart, const VectorField& X,
                                      const VectorField& V, const BoxDomain& box,
                                      double quad_tol = 1e-6) {
  VectorField Vb = compactly_supported(box, V);

  auto energy_at = [&](double t) {
    VectorField Xt = add_fields(X, scale_field(t, Vb));
    return integrate_box(box, [&](const Point& p) {
      double vol = std::sqrt(determinant(Eigen::MatrixXd(metric_at(chart, Point(p)))));
      return bienergy_density(chart, Xt, p) * vol;
    });
  };
  // Centered differences at steps h and h/2, Richardson-extrapolated.
  const double h = 1e-3;
  double d1 = (energy_at(h) - energy_at(-h)) / (2.0 * h);
  double d2 = (energy_at(h / 2) - energy_at(-h / 2)) / h;
  FirstVariation out;
  out.lhs = (4.0 * d2 - d1) / 3.0;

  auto rhs_integrand = [&](const Point& p) {
    Eigen::MatrixXd g = metric_at(chart, Point(p));
    Eigen::VectorXd bt = bitension(chart, X, p);
    Eigen::VectorXd v = Vb(Point(p));
    return bt.dot(g * v) * std::sqrt(determinant(Eigen::MatrixXd(g)));
  };
  out.rhs = integrate_box(box, rhs_integrand);
  double refined = integrate_box(box, rhs_integrand, box.points_per_axis + 4);
  out.converged = std::abs(out.rhs - refined) <=
                  quad_tol * std::max(1.0, std::abs(out.rhs));
  out.converged = out.converged && std::abs(d2 - d1) <= 1e-2 * std::max(1.0, std::abs(out.lhs));
  return out;
}

enum class Verdict {
  parallel,
  harmonic_map,
  harmonic_vector_field,
  biharmonic_vector_field,
  none,
};

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::parallel: return "parallel";
    case Verdict::harmonic_map: return "harmonic_map";
    case Verdict::harmonic_vector_field: return "harmonic_vector_field";
    case Verdict::biharmonic_vector_field: return "biharmonic_vector_field";
    case Verdict::none: return "none";
  }
  return "none";
}

struct ClassificationReport {
  double nabla_sup = 0.0;      // sup |nabla X| (parallelism residual)
  double laplacian_sup = 0.0;  // sup |LapX|
  double s_sup = 0.0;          // sup |S(X)|
  double bitension_sup = 0.0;  // sup |bitension|
  Verdict verdict = Verdict::none;
  double tolerance = 1e-5;
};

/// Sup-norm residuals over a sample grid; verdict by strict threshold
/// (a residual exactly at the tolerance fails the stricter class).
inline ClassificationReport classify(const Chart& chart, const VectorField& X,
                                     const BoxDomain& box, double tol = 1e-5,
                                     int grid_per_axis = 9) {
  ClassificationReport rep;
  rep.tolerance = tol;
  for_each_grid_point(box, grid_per_axis, [&](const Point& p) {
    for (int i = 0; i < chart.dim; ++i) {
      Eigen::VectorXd c = covariant_derivative(chart, X, i, Point(p));
      rep.nabla_sup = std::max(rep.nabla_sup, c.cwiseAbs().maxCoeff());
    }
    Eigen::VectorXd lap = rough_laplacian(chart, X, Point(p));
    rep.laplacian_sup = std::max(rep.laplacian_sup, lap.cwiseAbs().maxCoeff());
    Eigen::VectorXd s = s_tensor(chart, X, Point(p));
    rep.s_sup = std::max(rep.s_sup, s.cwiseAbs().maxCoeff());
    Eigen::VectorXd bt = bitension(chart, X, p);
    rep.bitension_sup = std::max(rep.bitension_sup, bt.cwiseAbs().maxCoeff());
  });
  if (rep.nabla_sup < tol)
    rep.verdict = Verdict::parallel;
  else if (rep.laplacian_sup < tol && rep.s_sup < tol)
    rep.verdict = Verdict::harmonic_map;
  else if (rep.laplacian_sup < tol)
    rep.verdict = Verdict::harmonic_vector_field;
  else if (rep.bitension_sup < tol)
    rep.verdict = Verdict::biharmonic_vector_field;
  else
    rep.verdict = Verdict::none;
  return rep;
}

}  // namespace tbg
