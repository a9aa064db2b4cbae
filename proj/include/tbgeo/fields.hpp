#pragma once

// Vector/scalar/one-form fields on a chart and the first- and second-order
// differential operators acting on them. Traces over orthonormal frames are
// implemented as inverse-metric contractions of coordinate tensors.
//
// Sign conventions (fixed project-wide):
//   Laplace-Beltrami on functions:  Delta f = -g^{ij} (d_i d_j f - Gamma^k_ij d_k f)
//   rough Laplacian on fields:      LapX    = -g^{ij} (nabla_i nabla_j X - Gamma^k_ij nabla_k X)
// so that on flat R^2, Delta(x^2 + y^2) = -4.

#include <string>
#include <utility>

#include "tbgeo/geometry.hpp"

namespace tbg {

struct VectorField {
  SmoothVectorFn components;
  std::string label;

  template <class S>
  VecX<S> operator()(const VecX<S>& p) const { return components(p); }
};

struct ScalarField {
  SmoothScalarFn value;
  std::string label;

  template <class S>
  S operator()(const VecX<S>& p) const { return value(p); }
};

struct OneForm {
  SmoothVectorFn value;  // covector components
  std::string label;

  template <class S>
  VecX<S> operator()(const VecX<S>& p) const { return value(p); }
};

/// (nabla_i X)^k = d_i X^k + Gamma^k_ia X^a, for a coordinate direction i.
template <class S>
VecX<S> covariant_derivative(const Chart& chart, const VectorField& X, int dir,
                             const VecX<S>& p) {
  const int m = chart.dim;
  ChristoffelT<S> gamma = christoffel(chart, p);
  VecX<S> x = X(p);
  VecX<S> dx = partial_vector([&](const auto& q) { return X(q); }, p, dir);
  VecX<S> out(m);
  for (int k = 0; k < m; ++k) {
    S sum = dx[k];
    for (int a = 0; a < m; ++a) sum += gamma(k, dir, a) * x[a];
    out[k] = sum;
  }
  return out;
}

/// nabla_d X contracted with a direction field evaluated at p.
template <class S>
VecX<S> covariant_derivative(const Chart& chart, const VectorField& X,
                             const VectorField& direction, const VecX<S>& p) {
  VecX<S> d = direction(p);
  VecX<S> out = VecX<S>::Zero(chart.dim);
  for (int i = 0; i < chart.dim; ++i)
    out += d[i] * covariant_derivative(chart, X, i, p);
  return out;
}

/// Second covariant derivative nabla^2_{i,j} X = nabla_i (nabla_j X) - Gamma^k_ij nabla_k X.
template <class S>
VecX<S> second_covariant_derivative(const Chart& chart, const VectorField& X, int i,
                                    int j, const VecX<S>& p) {
  const int m = chart.dim;
  ChristoffelT<S> gamma = christoffel(chart, p);
  // nabla_i of the field q -> nabla_j X(q): partial + Christoffel on the k slot.
  VecX<S> dcov = partial_vector(
      [&](const auto& q) { return covariant_derivative(chart, X, j, q); }, p, i);
  VecX<S> covj = covariant_derivative(chart, X, j, p);
  VecX<S> out(m);
  for (int k = 0; k < m; ++k) {
    S sum = dcov[k];
    for (int a = 0; a < m; ++a) sum += gamma(k, i, a) * covj[a];
    out[k] = sum;
  }
  for (int a = 0; a < m; ++a) {
    VecX<S> cova = covariant_derivative(chart, X, a, p);
    for (int k = 0; k < m; ++k) out[k] -= gamma(a, i, j) * cova[k];
  }
  return out;
}

/// Rough Laplacian: LapX = -g^{ij} nabla^2_{i,j} X.
template <class S>
VecX<S> rough_laplacian(const Chart& chart, const VectorField& X, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> ginv = inverse_matrix(metric_at(chart, p));
  ChristoffelT<S> gamma = christoffel(chart, p);
  std::vector<VecX<S>> cov(m);
  for (int j = 0; j < m; ++j) cov[j] = covariant_derivative(chart, X, j, p);
  VecX<S> out = VecX<S>::Zero(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (real_part(ginv(i, j)) == 0.0 && dual_depth_v<S> == 0) continue;
      VecX<S> dcov = partial_vector(
          [&](const auto& q) { return covariant_derivative(chart, X, j, q); }, p, i);
      for (int k = 0; k < m; ++k) {
        S term = dcov[k];
        for (int a = 0; a < m; ++a)
          term += gamma(k, i, a) * cov[j][a] - gamma(a, i, j) * cov[a][k];
        out[k] -= ginv(i, j) * term;
      }
    }
  return out;
}

/// The rough Laplacian as a composable field (needed for LapLapX).
inline VectorField rough_laplacian_field(const Chart& chart, const VectorField& X) {
  return VectorField{
      make_vector_fn<4>([chart, X](const auto& q) { return rough_laplacian(chart, X, q); }),
      "rough_laplacian(" + X.label + ")"};
}

/// S(X)^l = g^{ij} R^l_{a b j} (nabla_i X)^a X^b  (= sum_i R(nabla_{e_i} X, X) e_i).
template <class S>
VecX<S> s_tensor(const Chart& chart, const VectorField& X, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> ginv = inverse_matrix(metric_at(chart, p));
  CurvatureT<S> r = riemann(chart, p);
  VecX<S> x = X(p);
  std::vector<VecX<S>> cov(m);
  for (int i = 0; i < m; ++i) cov[i] = covariant_derivative(chart, X, i, p);
  VecX<S> out = VecX<S>::Zero(m);
  for (int l = 0; l < m; ++l) {
    S sum = S(0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            sum += ginv(i, j) * r(l, a, b, j) * cov[i][a] * x[b];
    out[l] = sum;
  }
  return out;
}

inline VectorField s_tensor_field(const Chart& chart, const VectorField& X) {
  return VectorField{
      make_vector_fn<4>([chart, X](const auto& q) { return s_tensor(chart, X, q); }),
      "S(" + X.label + ")"};
}

/// Delta f = -g^{ij} (d_i d_j f - Gamma^k_ij d_k f).
template <class S>
S laplace_beltrami(const Chart& chart, const ScalarField& f, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> ginv = inverse_matrix(metric_at(chart, p));
  ChristoffelT<S> gamma = christoffel(chart, p);
  VecX<S> df(m);
  for (int k = 0; k < m; ++k)
    df[k] = partial_scalar([&](const auto& q) { return f(q); }, p, k);
  S out = S(0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S hess = partial_scalar(
          [&](const auto& q) {
            return partial_scalar([&](const auto& qq) { return f(qq); }, q, j);
          },
          p, i);
      S corr = S(0.0);
      for (int k = 0; k < m; ++k) corr += gamma(k, i, j) * df[k];
      out -= ginv(i, j) * (hess - corr);
    }
  return out;
}

/// (grad f)^i = g^{ij} d_j f.
template <class S>
VecX<S> gradient(const Chart& chart, const ScalarField& f, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> ginv = inverse_matrix(metric_at(chart, p));
  VecX<S> df(m);
  for (int j = 0; j < m; ++j)
    df[j] = partial_scalar([&](const auto& q) { return f(q); }, p, j);
  return ginv * df;
}

/// div X = d_i X^i + Gamma^i_ik X^k.
template <class S>
S divergence_field(const Chart& chart, const VectorField& X, const VecX<S>& p) {
  const int m = chart.dim;
  ChristoffelT<S> gamma = christoffel(chart, p);
  VecX<S> x = X(p);
  S out = S(0.0);
  for (int i = 0; i < m; ++i) {
    VecX<S> dx = partial_vector([&](const auto& q) { return X(q); }, p, i);
    out += dx[i];
    for (int k = 0; k < m; ++k) out += gamma(i, i, k) * x[k];
  }
  return out;
}

/// div omega = g^{ij} (d_i omega_j - Gamma^k_ij omega_k).
template <class S>
S divergence_oneform(const Chart& chart, const OneForm& omega, const VecX<S>& p) {
  const int m = chart.dim;
  MatX<S> ginv = inverse_matrix(metric_at(chart, p));
  ChristoffelT<S> gamma = christoffel(chart, p);
  VecX<S> w = omega(p);
  S out = S(0.0);
  for (int i = 0; i < m; ++i) {
    VecX<S> dw = partial_vector([&](const auto& q) { return omega(q); }, p, i);
    for (int j = 0; j < m; ++j) {
      S term = dw[j];
      for (int k = 0; k < m; ++k) term -= gamma(k, i, j) * w[k];
      out += ginv(i, j) * term;
    }
  }
  return out;
}

/// theta_XY(Z) = g(X, nabla_Z Y), as a one-form.
inline OneForm theta_form(const Chart& chart, const VectorField& X, const VectorField& Y) {
  auto fn = [chart, X, Y](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    const int m = chart.dim;
    MatX<S> g = metric_at(chart, q);
    VecX<S> x = X(q);
    VecX<S> out(m);
    for (int j = 0; j < m; ++j) {
      VecX<S> covy = covariant_derivative(chart, Y, j, q);
      S sum = S(0.0);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) sum += g(a, b) * x[a] * covy[b];
      out[j] = sum;
    }
    return out;
  };
  return OneForm{make_vector_fn<4>(fn), "theta(" + X.label + "," + Y.label + ")"};
}

/// g(X, Y) as a scalar field.
inline ScalarField inner_product_field(const Chart& chart, const VectorField& X,
                                       const VectorField& Y) {
  auto fn = [chart, X, Y](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::Scalar;
    MatX<S> g = metric_at(chart, q);
    VecX<S> x = X(q), y = Y(q);
    S sum = S(0.0);
    for (int a = 0; a < chart.dim; ++a)
      for (int b = 0; b < chart.dim; ++b) sum += g(a, b) * x[a] * y[b];
    return sum;
  };
  return ScalarField{make_scalar_fn<4>(fn), "g(" + X.label + "," + Y.label + ")"};
}

// Small field combinators used by the variational layer and the tests.

inline VectorField add_fields(const VectorField& X, const VectorField& Y) {
  return VectorField{make_vector_fn([X, Y](const auto& q) {
                       using R = decltype(X(q));
                       return R(X(q) + Y(q));
                     }),
                     X.label + "+" + Y.label};
}

inline VectorField scale_field(double c, const VectorField& X) {
  return VectorField{make_vector_fn([c, X](const auto& q) {
                       using R = decltype(X(q));
                       return R(c * X(q));
                     }),
                     std::to_string(c) + "*" + X.label};
}

inline VectorField multiply_field(const ScalarField& f, const VectorField& X) {
  return VectorField{make_vector_fn([f, X](const auto& q) {
                       using R = decltype(X(q));
                       return R(f(q) * X(q));
                     }),
                     f.label + "*" + X.label};
}

}  // namespace tbg
