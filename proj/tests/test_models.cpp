#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tbgeo/models.hpp"
#include "tbgeo/sampling.hpp"
#include "tbgeo/variational.hpp"

using namespace tbg;

TEST_CASE("model chart lookup") {
  CHECK(model_chart("euclidean", 4).dim == 4);
  CHECK(model_chart("nil3").dim == 3);
  CHECK(model_chart("hyperbolic", 3, 2.0).dim == 3);
  CHECK_THROWS_AS(model_chart("torus"), ConfigError);
}

TEST_CASE("left-invariant frame on Nil3 is orthonormal") {
  Chart chart = nil3_chart();
  std::mt19937_64 rng(5);
  BoxDomain box = default_box(chart);
  VectorField e[3] = {nil3_frame_field(0), nil3_frame_field(1), nil3_frame_field(2)};
  for (int trial = 0; trial < 10; ++trial) {
    Point p = random_point_in_box(box, rng);
    Eigen::MatrixXd g = metric_at(chart, Point(p));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Eigen::VectorXd ei = e[i](Point(p)), ej = e[j](Point(p));
        CHECK(ei.dot(g * ej) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
      }
  }
}

TEST_CASE("scaling-equation exponents") {
  auto [lo, hi] = euler_exponents(2);
  CHECK(lo == doctest::Approx((1.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(hi == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  // y^r solves the second-order equation exactly for both roots.
  for (int n : {2, 3, 5}) {
    auto [r1, r2] = euler_exponents(n);
    for (double r : {r1, r2}) {
      SmoothScalarFn f = make_scalar_fn([r](const auto& q) { return pow(q[0], r); });
      for (double y : {0.5, 1.0, 1.8})
        CHECK(std::abs(ode_residual("hyperbolic-harmonic", f, y, n)) < 1e-10);
    }
  }
}

TEST_CASE("log substitution maps the fourth-order equation to constant coefficients") {
  // With v(t) = f(e^t) the residual of the y-form equation at y = e^t equals
  // the residual of the constant-coefficient form at t, for every f.
  std::mt19937_64 rng(17);
  for (auto [n, c] : {std::pair<int, double>{2, 1.0}, {3, 2.0}}) {
    for (int trial = 0; trial < 5; ++trial) {
      SmoothScalarFn f = random_univariate_profile(rng);
      SmoothScalarFn v = make_scalar_fn([f](const auto& q) {
        using S = typename std::decay_t<decltype(q)>::Scalar;
        VecX<S> y(1);
        y[0] = exp(q[0]);
        return f(y);
      });
      for (double t : {-0.5, 0.0, 0.4}) {
        double a = ode_residual("hyperbolic-biharmonic", f, std::exp(t), n, c);
        double b = ode_residual("transformed", v, t, n, c);
        CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("bitension of a scaled field reduces to the fourth-order equation") {
  // bitension(f V) = (c^4 * L[f](y) + 2 c^6 (n-1)^2 f^3) V where L is the
  // linear part of the y-form equation. Checked against the full chart-level
  // computation for random profiles.
  std::mt19937_64 rng(19);
  for (auto [n, c] : {std::pair<int, double>{2, 1.0}, {3, 2.0}}) {
    Chart chart = hyperbolic_chart(n, c);
    for (int trial = 0; trial < 3; ++trial) {
      SmoothScalarFn f = random_univariate_profile(rng);
      FieldFamilySpec spec;
      spec.id = "hyperbolic-fV";
      spec.reals = {static_cast<double>(n), c};
      spec.profiles = {f};
      VectorField X = field_family(spec);
      for (double y : {0.7, 1.3}) {
        Point p = Point::Constant(n, 0.1);
        p[n - 1] = y;
        Eigen::VectorXd bt = bitension(chart, X, p);
        auto d = scalar_derivatives(f, y);
        double nn = n;
        double lin = std::pow(y, 4) * d[4] + (8.0 - 2.0 * nn) * std::pow(y, 3) * d[3] +
                     (nn - 8.0) * (nn - 2.0) * y * y * d[2] +
                     (nn - 2.0) * (3.0 * nn - 4.0) * y * d[1] +
                     (nn - 1.0) * (nn - 1.0) * d[0];
        double coef = std::pow(c, 4) * lin +
                      2.0 * std::pow(c, 6) * (nn - 1.0) * (nn - 1.0) * std::pow(d[0], 3);
        Eigen::VectorXd expected = coef * hyperbolic_v_field(n, c)(Point(p));
        double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());
        CHECK((bt - expected).cwiseAbs().maxCoeff() < 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("RK4 is exact on polynomial solutions") {
  OdeSpec quiet;
  quiet.name = "free";
  quiet.rhs = [](double, const std::array<double, 4>&) { return 0.0; };
  Trajectory traj = integrate_local(quiet, {0.0, 1.0, 0.0, 0.0}, 0.0, 2.0, 0.1);
  CHECK(!traj.blow_up.has_value());
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    CHECK(traj.state[k][0] == doctest::Approx(traj.t[k]).epsilon(1e-13));
    CHECK(traj.state[k][1] == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(traj.t.back() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrator input guards") {
  OdeSpec ode = transformed_biharmonic_ode(2, 1.0);
  CHECK_THROWS_AS(integrate_local(ode, {1.0, 0.0, 0.0, 0.0}, 0.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(integrate_local(ode, {1.0, 0.0, 0.0, 0.0}, 0.0, 1.0, -0.1), ConfigError);
  CHECK_THROWS_AS(integrate_local(ode, {2e8, 0.0, 0.0, 0.0}, 0.0, 1.0, 0.01),
                  DegenerateInputError);
  double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(integrate_local(ode, {nan, 0.0, 0.0, 0.0}, 0.0, 1.0, 0.01),
                  DegenerateInputError);
}

TEST_CASE("family parameter validation") {
  FieldFamilySpec bad;
  bad.id = "r2-biharmonic";
  bad.reals = {1.0, 2.0};
  CHECK_THROWS_AS(field_family(bad), ConfigError);
  bad.id = "hyperbolic-fV";
  bad.reals = {2.0, 1.0};
  CHECK_THROWS_AS(field_family(bad), ConfigError);  // missing profile
  bad.id = "no-such-family";
  CHECK_THROWS_AS(field_family(bad), ConfigError);
}

TEST_CASE("cubic self-interaction drives finite-time escape") {
  OdeSpec ode = transformed_biharmonic_ode(2, 1.0);
  Trajectory traj = integrate_local(ode, {1.0, 0.0, 0.0, 0.0}, 0.0, 60.0, 1e-3);
  REQUIRE(traj.blow_up.has_value());
  CHECK(*traj.blow_up > 2.0);
  CHECK(*traj.blow_up < 10.0);
}
