#pragma once

// Type-erased smooth callables. A SmoothFn stores one std::function per dual
// depth (0..kMaxDualDepth), built from a single generic lambda, so runtime
// objects (charts, fields, composed operators) can still be pushed through
// nested forward-mode differentiation. Wrapping with a smaller max depth
// leaves the deeper slots empty; calling them raises CapabilityError.

#include <array>
#include <functional>
#include <string>
#include <tuple>
#include <utility>

#include "tbgeo/dual.hpp"
#include "tbgeo/errors.hpp"
#include "tbgeo/linalg.hpp"

namespace tbg {

struct ScalarSig {
  template <class S> using Ret = S;
};
struct VectorSig {
  template <class S> using Ret = VecX<S>;
};
struct MatrixSig {
  template <class S> using Ret = MatX<S>;
};

template <class Sig>
class SmoothFn {
  template <class S> using Ret = typename Sig::template Ret<S>;

  template <std::size_t... I>
  static auto slots_type(std::index_sequence<I...>)
      -> std::tuple<std::function<Ret<dual_t<I>>(const VecX<dual_t<I>>&)>...>;
  using Slots = decltype(slots_type(std::make_index_sequence<kMaxDualDepth + 1>{}));

 public:
  SmoothFn() = default;

  template <int MaxD, class F>
  static SmoothFn wrap(F f) {
    static_assert(MaxD >= 0 && MaxD <= kMaxDualDepth);
    SmoothFn out;
    out.template fill<0, MaxD>(f);
    return out;
  }

  template <class S>
  Ret<S> operator()(const VecX<S>& p) const {
    constexpr int d = dual_depth_v<S>;
    static_assert(d <= kMaxDualDepth, "dual depth exceeds project maximum");
    const auto& fn = std::get<static_cast<std::size_t>(d)>(slots_);
    if (!fn)
      throw CapabilityError("callable not differentiable to depth " + std::to_string(d));
    return fn(p);
  }

  explicit operator bool() const { return static_cast<bool>(std::get<0>(slots_)); }

 private:
  template <int D, int MaxD, class F>
  void fill(const F& f) {
    using S = dual_t<D>;
    std::get<static_cast<std::size_t>(D)>(slots_) =
        [f](const VecX<S>& p) -> Ret<S> { return f(p); };
    if constexpr (D < MaxD) fill<D + 1, MaxD>(f);
  }

  Slots slots_;
};

using SmoothScalarFn = SmoothFn<ScalarSig>;
using SmoothVectorFn = SmoothFn<VectorSig>;
using SmoothMatrixFn = SmoothFn<MatrixSig>;

template <int MaxD = kMaxDualDepth, class F>
SmoothScalarFn make_scalar_fn(F f) { return SmoothScalarFn::wrap<MaxD>(std::move(f)); }
template <int MaxD = kMaxDualDepth, class F>
SmoothVectorFn make_vector_fn(F f) { return SmoothVectorFn::wrap<MaxD>(std::move(f)); }
template <int MaxD = kMaxDualDepth, class F>
SmoothMatrixFn make_matrix_fn(F f) { return SmoothMatrixFn::wrap<MaxD>(std::move(f)); }

// Seeded partial derivatives. `f` must accept VecX<Dual<S>>.

template <class S>
VecX<Dual<S>> seed(const VecX<S>& p, int dir) {
  VecX<Dual<S>> q(p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j)
    q[j] = Dual<S>(p[j], S(j == dir ? 1.0 : 0.0));
  return q;
}

template <class S, class F>
S partial_scalar(const F& f, const VecX<S>& p, int dir) {
  return f(seed(p, dir)).b;
}

template <class S, class F>
VecX<S> partial_vector(const F& f, const VecX<S>& p, int dir) {
  VecX<Dual<S>> r = f(seed(p, dir));
  VecX<S> out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = r[i].b;
  return out;
}

template <class S, class F>
MatX<S> partial_matrix(const F& f, const VecX<S>& p, int dir) {
  MatX<Dual<S>> r = f(seed(p, dir));
  MatX<S> out(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) out(i, j) = r(i, j).b;
  return out;
}

/// Derivatives of a univariate function up to `order` (<= 4) by nesting duals.
inline std::array<double, 5> scalar_derivatives(const SmoothScalarFn& f, double t) {
  using S4 = dual_t<4>;
  VecX<S4> p(1);
  // Seed all four nesting levels with the same direction d/dt.
  S4 x(dual_t<3>(dual_t<2>(dual_t<1>(t, 1.0), 1.0), 1.0), 1.0);
  p[0] = x;
  S4 y = f(p);
  std::array<double, 5> d{};
  d[0] = y.a.a.a.a;
  d[1] = y.a.a.a.b;
  d[2] = y.a.a.b.b;
  d[3] = y.a.b.b.b;
  d[4] = y.b.b.b.b;
  return d;
}

}  // namespace tbg
