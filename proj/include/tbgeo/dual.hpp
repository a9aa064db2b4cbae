#pragma once

// Nested forward-mode dual numbers. Dual<double> carries one derivative
// direction; Dual<Dual<double>> carries second derivatives along a pair of
// seeded directions, and so on. Depth 4 is what the fourth-order operators
// (bilaplacian of a vector field) require; depth 6 is what they require once
// the metric itself is differentiated underneath them.

#include <cmath>
#include <ostream>
#include <type_traits>

#include <Eigen/Core>

namespace tbg {

template <class T>
struct Dual {
  T a{};  // value
  T b{};  // derivative along the seeded direction

  Dual() = default;
  Dual(const T& v) : a(v), b(T(0.0)) {}  // NOLINT(google-explicit-constructor)
  Dual(const T& v, const T& d) : a(v), b(d) {}

  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Dual(double v) : a(v), b(T(0.0)) {}  // NOLINT(google-explicit-constructor)

  Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
  Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
  friend Dual operator+(const Dual& x) { return x; }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  friend Dual operator/(const Dual& x, const Dual& y) {
    T q = x.a / y.a;
    return {q, (x.b - q * y.b) / y.a};
  }

  friend Dual operator+(const Dual& x, double c) { return {x.a + c, x.b}; }
  friend Dual operator+(double c, const Dual& x) { return {x.a + c, x.b}; }
  friend Dual operator-(const Dual& x, double c) { return {x.a - c, x.b}; }
  friend Dual operator-(double c, const Dual& x) { return {c - x.a, -x.b}; }
  friend Dual operator*(const Dual& x, double c) { return {x.a * c, x.b * c}; }
  friend Dual operator*(double c, const Dual& x) { return {x.a * c, x.b * c}; }
  friend Dual operator/(const Dual& x, double c) { return {x.a / c, x.b / c}; }
  friend Dual operator/(double c, const Dual& x) { return Dual(c) / x; }
};

inline double real_part(double x) { return x; }
template <class T>
double real_part(const Dual<T>& x) { return real_part(x.a); }

template <class T> bool operator<(const Dual<T>& x, const Dual<T>& y) { return real_part(x) < real_part(y); }
template <class T> bool operator>(const Dual<T>& x, const Dual<T>& y) { return real_part(x) > real_part(y); }
template <class T> bool operator<=(const Dual<T>& x, const Dual<T>& y) { return real_part(x) <= real_part(y); }
template <class T> bool operator>=(const Dual<T>& x, const Dual<T>& y) { return real_part(x) >= real_part(y); }
template <class T> bool operator==(const Dual<T>& x, const Dual<T>& y) { return real_part(x) == real_part(y); }
template <class T> bool operator!=(const Dual<T>& x, const Dual<T>& y) { return real_part(x) != real_part(y); }
template <class T> bool operator<(const Dual<T>& x, double y) { return real_part(x) < y; }
template <class T> bool operator>(const Dual<T>& x, double y) { return real_part(x) > y; }
template <class T> bool operator<=(const Dual<T>& x, double y) { return real_part(x) <= y; }
template <class T> bool operator>=(const Dual<T>& x, double y) { return real_part(x) >= y; }
template <class T> bool operator<(double x, const Dual<T>& y) { return x < real_part(y); }
template <class T> bool operator>(double x, const Dual<T>& y) { return x > real_part(y); }

using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <class T> Dual<T> sin(const Dual<T>& x) { return {sin(x.a), cos(x.a) * x.b}; }
template <class T> Dual<T> cos(const Dual<T>& x) { return {cos(x.a), -sin(x.a) * x.b}; }
template <class T> Dual<T> sinh(const Dual<T>& x) { return {sinh(x.a), cosh(x.a) * x.b}; }
template <class T> Dual<T> cosh(const Dual<T>& x) { return {cosh(x.a), sinh(x.a) * x.b}; }
template <class T> Dual<T> exp(const Dual<T>& x) { T e = exp(x.a); return {e, e * x.b}; }
template <class T> Dual<T> log(const Dual<T>& x) { return {log(x.a), x.b / x.a}; }
template <class T> Dual<T> sqrt(const Dual<T>& x) { T r = sqrt(x.a); return {r, x.b / (2.0 * r)}; }
template <class T> Dual<T> tanh(const Dual<T>& x) { T t = tanh(x.a); return {t, (1.0 - t * t) * x.b}; }
template <class T> Dual<T> pow(const Dual<T>& x, double e) {
  return {pow(x.a, e), e * pow(x.a, e - 1.0) * x.b};
}
template <class T> Dual<T> pow(const Dual<T>& x, const Dual<T>& y) {
  return exp(y * log(x));
}
template <class T> Dual<T> abs(const Dual<T>& x) { return real_part(x) < 0.0 ? -x : x; }
template <class T> Dual<T> abs2(const Dual<T>& x) { return x * x; }
template <class T> const Dual<T>& conj(const Dual<T>& x) { return x; }
template <class T> const Dual<T>& real(const Dual<T>& x) { return x; }
template <class T> Dual<T> imag(const Dual<T>&) { return Dual<T>(0.0); }

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& x) {
  return os << "(" << x.a << " + " << x.b << "e)";
}

// Dual depth: 0 for double, +1 per nesting level.
template <class S> struct dual_depth : std::integral_constant<int, 0> {};
template <class T> struct dual_depth<Dual<T>> : std::integral_constant<int, dual_depth<T>::value + 1> {};
template <class S> inline constexpr int dual_depth_v = dual_depth<S>::value;

template <int N> struct dual_type { using type = Dual<typename dual_type<N - 1>::type>; };
template <> struct dual_type<0> { using type = double; };
template <int N> using dual_t = typename dual_type<N>::type;

// Maximum nesting supported project-wide. Fourth-order operators on vector
// fields evaluate the metric two levels deeper than themselves.
inline constexpr int kMaxDualDepth = 6;

}  // namespace tbg

namespace Eigen {

template <class T>
struct NumTraits<tbg::Dual<T>> : NumTraits<double> {
  using Real = tbg::Dual<T>;
  using NonInteger = tbg::Dual<T>;
  using Nested = tbg::Dual<T>;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3,
  };
  static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<double>::dummy_precision()); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<tbg::Dual<T>, double, BinaryOp> {
  using ReturnType = tbg::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<double, tbg::Dual<T>, BinaryOp> {
  using ReturnType = tbg::Dual<T>;
};

}  // namespace Eigen
