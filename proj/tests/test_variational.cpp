#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tbgeo/models.hpp"
#include "tbgeo/sampling.hpp"
#include "tbgeo/variational.hpp"

using namespace tbg;

namespace {

VectorField parab_field() {
  return VectorField{make_vector_fn([](const auto& q) {
                       using S = typename std::decay_t<decltype(q)>::Scalar;
                       VecX<S> v(2);
                       v[0] = q[0] * q[0] + q[1] * q[1];
                       v[1] = S(0.0);
                       return v;
                     }),
                     "parab"};
}

BoxDomain unit_box2() {
  BoxDomain box;
  box.lower = Point::Constant(2, -1.0);
  box.upper = Point::Constant(2, 1.0);
  return box;
}

}  // namespace

TEST_CASE("tension splits into curvature and Laplacian parts") {
  Chart flat = euclidean_chart(2);
  VectorField X = parab_field();
  Point p(2);
  p << 0.3, -0.6;
  TensionValue t = tension(flat, X, p);
  CHECK(t.horizontal.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(t.vertical[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(t.vertical[1]) < 1e-12);
  CHECK(tension_squared_norm(flat, p, t) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(bienergy_density(flat, X, p) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("scaling field on hyperbolic space has constant bienergy density") {
  // |S(V)|^2 + |LapV|^2 = (n-1)^2 c^6 + (n-1)^2 c^4 with |V| = 1.
  for (int n : {2, 3}) {
    for (double c : {1.0, 2.0}) {
      Chart chart = hyperbolic_chart(n, c);
      VectorField V = hyperbolic_v_field(n, c);
      Point p = Point::Constant(n, 0.2);
      p[n - 1] = 1.4;
      double expected = 0.5 * (n - 1.0) * (n - 1.0) * (std::pow(c, 6) + std::pow(c, 4));
      CHECK(bienergy_density(chart, V, p) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("bitension reduces to the double Laplacian on flat charts") {
  Chart flat = euclidean_chart(2);
  std::mt19937_64 rng(13);
  BoxDomain box = default_box(flat);
  for (int trial = 0; trial < 5; ++trial) {
    VectorField X = random_vector_field(2, rng);
    Point p = random_point_in_box(box, rng);
    Eigen::VectorXd bt = bitension(flat, X, p);
    VectorField lap = rough_laplacian_field(flat, X);
    Eigen::VectorXd laplap = rough_laplacian(flat, lap, Point(p));
    CHECK((bt - laplap).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("classifier walks the verdict ladder on flat fields") {
  Chart flat = euclidean_chart(2);
  BoxDomain box = unit_box2();

  VectorField constant{make_vector_fn([](const auto& q) {
                         using S = typename std::decay_t<decltype(q)>::Scalar;
                         VecX<S> v(2);
                         v[0] = S(1.0);
                         v[1] = S(-2.0);
                         return v;
                       }),
                       "constant"};
  CHECK(classify(flat, constant, box).verdict == Verdict::parallel);

  VectorField rot{make_vector_fn([](const auto& q) {
                    using S = typename std::decay_t<decltype(q)>::Scalar;
                    VecX<S> v(2);
                    v[0] = -q[1];
                    v[1] = q[0];
                    return v;
                  }),
                  "rotation"};
  ClassificationReport rep = classify(flat, rot, box);
  CHECK(rep.verdict == Verdict::harmonic_map);
  CHECK(rep.nabla_sup > rep.tolerance);

  ClassificationReport rep2 = classify(flat, parab_field(), box);
  CHECK(rep2.verdict == Verdict::biharmonic_vector_field);
  CHECK(rep2.laplacian_sup > rep2.tolerance);

  VectorField quartic{make_vector_fn([](const auto& q) {
                        using S = typename std::decay_t<decltype(q)>::Scalar;
                        VecX<S> v(2);
                        v[0] = q[0] * q[0] * q[0] * q[0];
                        v[1] = S(0.0);
                        return v;
                      }),
                      "quartic"};
  CHECK(classify(flat, quartic, box).verdict == Verdict::none);
}

TEST_CASE("bienergy integral matches a constant-density closed form") {
  Chart flat = euclidean_chart(2);
  BoxDomain box = unit_box2();
  QuadResult res = bienergy(flat, parab_field(), box);
  // Density 8 on a box of area 4.
  CHECK(res.value == doctest::Approx(32.0).epsilon(1e-10));
  CHECK(res.converged);
}

TEST_CASE("bump is one at the center and vanishes outside the ellipse") {
  BoxDomain box = unit_box2();
  ScalarField h = bump_function(box);
  VecX<double> c(2);
  c << 0.0, 0.0;
  CHECK(h(c) == doctest::Approx(1.0).epsilon(1e-14));
  VecX<double> edge(2);
  edge << 0.999, 0.0;
  CHECK(h(edge) > 0.0);
  VecX<double> out(2);
  out << 0.8, 0.8;  // r^2 = 1.28 > 1
  CHECK(h(out) == 0.0);
  VecX<double> corner(2);
  corner << 1.0, 1.0;
  CHECK(h(corner) == 0.0);
}

TEST_CASE("first variation vanishes identically for a zero variation") {
  Chart flat = euclidean_chart(2);
  BoxDomain box = unit_box2();
  VectorField zero{make_vector_fn([](const auto& q) {
                     using S = typename std::decay_t<decltype(q)>::Scalar;
                     return VecX<S>(VecX<S>::Zero(2));
                   }),
                   "zero"};
  FirstVariation fv = first_variation(flat, parab_field(), zero, box);
  CHECK(std::abs(fv.lhs) < 1e-10);
  CHECK(std::abs(fv.rhs) < 1e-14);
}

TEST_CASE("divergence theorem holds for compactly supported data") {
  std::vector<Chart> charts = {euclidean_chart(2), nil3_chart()};
  int ci = 0;
  for (const Chart& chart : charts) {
    BoxDomain box = default_box(chart);
    // The bump's Laplacian oscillates sharply near the support boundary, so
    // the rule needs to be much finer than for the smooth densities.
    box.points_per_axis = 48;
    std::mt19937_64 rng(71 + ci++);

    // Integral of Delta h over the support of the bump h is zero.
    ScalarField h = bump_function(box);
    double lap_int = integrate_box(box, [&](const Point& p) {
      double vol = std::sqrt(determinant(Eigen::MatrixXd(metric_at(chart, Point(p)))));
      return laplace_beltrami(chart, h, Point(p)) * vol;
    });
    CHECK(std::abs(lap_int) < 1e-2);

    // Integral of div(theta) for a compactly supported one-form is zero.
    VectorField W = compactly_supported(box, random_vector_field(chart.dim, rng));
    VectorField Y = random_vector_field(chart.dim, rng);
    OneForm theta = theta_form(chart, W, Y);
    double div_int = integrate_box(box, [&](const Point& p) {
      double vol = std::sqrt(determinant(Eigen::MatrixXd(metric_at(chart, Point(p)))));
      return divergence_oneform(chart, theta, Point(p)) * vol;
    });
    CHECK(std::abs(div_int) < 1e-4);
  }
}
