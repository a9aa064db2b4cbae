#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tbgeo/geometry.hpp"
#include "tbgeo/sampling.hpp"

using namespace tbg;

namespace {

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("flat chart has zero Christoffels and curvature") {
  Chart chart = euclidean_chart(3);
  Point p(3);
  p << 0.3, -1.2, 2.0;
  ChristoffelSymbols gamma = christoffel(chart, p);
  for (double v : gamma.v) CHECK(v == 0.0);
  CurvatureTensor r = riemann(chart, p);
  for (double v : r.v) CHECK(v == 0.0);
}

TEST_CASE("half-plane Christoffels match the closed form") {
  // For the metric (cy)^-2 (dx^2 + dy^2) the nonzero symbols are
  // G^x_xy = G^x_yx = -1/y, G^y_xx = 1/y, G^y_yy = -1/y, independent of c.
  for (double c : {1.0, 2.0}) {
    Chart chart = hyperbolic_chart(2, c);
    Point p(2);
    p << 0.4, 1.7;
    double y = p[1];
    ChristoffelSymbols g = christoffel(chart, p);
    CHECK(g(0, 0, 1) == doctest::Approx(-1.0 / y).epsilon(1e-12));
    CHECK(g(0, 1, 0) == doctest::Approx(-1.0 / y).epsilon(1e-12));
    CHECK(g(1, 0, 0) == doctest::Approx(1.0 / y).epsilon(1e-12));
    CHECK(g(1, 1, 1) == doctest::Approx(-1.0 / y).epsilon(1e-12));
    CHECK(max_abs({g(0, 0, 0), g(0, 1, 1), g(1, 0, 1), g(1, 1, 0)}) < 1e-14);
  }
}

TEST_CASE("metric compatibility: covariant derivative of g vanishes") {
  std::vector<Chart> charts = {nil3_chart(), hyperbolic_chart(2, 1.0),
                               hyperbolic_chart(3, 2.0)};
  int ci = 0;
  for (const Chart& chart : charts) {
    std::mt19937_64 rng(11 + ci++);
    BoxDomain box = default_box(chart);
    const int m = chart.dim;
    for (int trial = 0; trial < 20; ++trial) {
      Point p = random_point_in_box(box, rng);
      Eigen::MatrixXd g = metric_at(chart, Point(p));
      ChristoffelSymbols gamma = christoffel(chart, p);
      for (int k = 0; k < m; ++k) {
        Eigen::MatrixXd dg =
            partial_matrix([&](const auto& q) { return metric_at(chart, q); }, Point(p), k);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            double nabla = dg(i, j);
            for (int l = 0; l < m; ++l)
              nabla -= g(l, j) * gamma(l, k, i) + g(i, l) * gamma(l, k, j);
            CHECK(std::abs(nabla) < 1e-8);
          }
      }
    }
  }
}

TEST_CASE("curvature symmetries and first Bianchi identity") {
  std::vector<Chart> charts = {nil3_chart(), hyperbolic_chart(3, 1.5)};
  int ci = 0;
  for (const Chart& chart : charts) {
    std::mt19937_64 rng(23 + ci++);
    BoxDomain box = default_box(chart);
    const int m = chart.dim;
    for (int trial = 0; trial < 10; ++trial) {
      Point p = random_point_in_box(box, rng);
      CurvatureTensor r = riemann(chart, p);
      CurvatureTensor low = lower_riemann(chart, p);
      for (int l = 0; l < m; ++l)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
              // Antisymmetry in the plane slots.
              CHECK(std::abs(r(l, i, j, k) + r(l, j, i, k)) < 1e-10);
              // First Bianchi on the cyclic lower slots.
              CHECK(std::abs(r(l, i, j, k) + r(l, j, k, i) + r(l, k, i, j)) < 1e-10);
              // Lowered tensor: antisymmetry and pair symmetry.
              // low(l,i,j,k) = g(R(d_i, d_j) d_k, d_l).
              CHECK(std::abs(low(l, i, j, k) + low(k, i, j, l)) < 1e-10);
              CHECK(std::abs(low(l, i, j, k) - low(j, k, l, i)) < 1e-10);
            }
    }
  }
}

TEST_CASE("hyperbolic space has constant curvature -c^2") {
  for (int n : {2, 3}) {
    for (double c : {1.0, 2.0}) {
      Chart chart = hyperbolic_chart(n, c);
      std::mt19937_64 rng(37);
      BoxDomain box = default_box(chart);
      for (int trial = 0; trial < 5; ++trial) {
        Point p = random_point_in_box(box, rng);
        Eigen::MatrixXd g = metric_at(chart, Point(p));
        CurvatureTensor r = riemann(chart, p);
        double K = -c * c;
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) {
                double expected = K * ((l == i ? g(j, k) : 0.0) - (l == j ? g(i, k) : 0.0));
                CHECK(r(l, i, j, k) == doctest::Approx(expected).epsilon(1e-10));
              }
      }
    }
  }
}

TEST_CASE("finite-difference backend agrees with the dual backend") {
  std::vector<Chart> charts = {nil3_chart(), hyperbolic_chart(2, 1.0)};
  int ci = 0;
  for (const Chart& chart : charts) {
    std::mt19937_64 rng(51 + ci++);
    BoxDomain box = default_box(chart);
    for (int trial = 0; trial < 10; ++trial) {
      Point p = random_point_in_box(box, rng);
      ChristoffelSymbols gd = christoffel(chart, p);
      ChristoffelSymbols gf = fd::christoffel(chart, p);
      for (std::size_t t = 0; t < gd.v.size(); ++t)
        CHECK(std::abs(gd.v[t] - gf.v[t]) < 1e-5);
      CurvatureTensor rd = riemann(chart, p);
      CurvatureTensor rf = fd::riemann(chart, p);
      for (std::size_t t = 0; t < rd.v.size(); ++t)
        CHECK(std::abs(rd.v[t] - rf.v[t]) < 1e-5);
    }
  }
}

TEST_CASE("curvature gradient matches a finite-difference oracle") {
  Chart chart = nil3_chart();
  std::mt19937_64 rng(67);
  BoxDomain box = default_box(chart);
  const int m = 3;
  const double h = 1e-4;
  for (int trial = 0; trial < 5; ++trial) {
    Point p = random_point_in_box(box, rng);
    CurvatureGradient dr = nabla_riemann(chart, p);
    ChristoffelSymbols gamma = christoffel(chart, p);
    CurvatureTensor r = riemann(chart, p);
    for (int a = 0; a < m; ++a) {
      Point hi = p, lo = p;
      hi[a] += h;
      lo[a] -= h;
      CurvatureTensor rp = riemann(chart, hi);
      CurvatureTensor rm = riemann(chart, lo);
      for (int l = 0; l < m; ++l)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
              double fd_partial = (rp(l, i, j, k) - rm(l, i, j, k)) / (2.0 * h);
              double expect = fd_partial;
              for (int t = 0; t < m; ++t) {
                expect += gamma(l, a, t) * r(t, i, j, k);
                expect -= gamma(t, a, i) * r(l, t, j, k);
                expect -= gamma(t, a, j) * r(l, i, t, k);
                expect -= gamma(t, a, k) * r(l, i, j, t);
              }
              CHECK(std::abs(dr(a, l, i, j, k) - expect) < 1e-6);
            }
    }
  }
}

TEST_CASE("second Bianchi identity for the curvature gradient") {
  std::vector<Chart> charts = {nil3_chart(), hyperbolic_chart(3, 1.0)};
  int ci = 0;
  for (const Chart& chart : charts) {
    std::mt19937_64 rng(83 + ci++);
    BoxDomain box = default_box(chart);
    const int m = chart.dim;
    for (int trial = 0; trial < 5; ++trial) {
      Point p = random_point_in_box(box, rng);
      CurvatureGradient dr = nabla_riemann(chart, p);
      for (int l = 0; l < m; ++l)
        for (int a = 0; a < m; ++a)
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              for (int k = 0; k < m; ++k) {
                double cyc = dr(a, l, i, j, k) + dr(i, l, j, a, k) + dr(j, l, a, i, k);
                CHECK(std::abs(cyc) < 1e-8);
              }
    }
  }
}

TEST_CASE("chart domain guard rejects out-of-domain points") {
  Chart chart = hyperbolic_chart(2, 1.0);
  Point bad(2);
  bad << 0.0, -1.0;
  CHECK_THROWS_AS(metric_at(chart, Point(bad)), ChartDomainError);
  Point good(2);
  good << 0.0, 1.0;
  CHECK(chart.contains(good));
  CHECK(!chart.contains(bad));
  Point wrong_dim(3);
  wrong_dim << 0.0, 1.0, 1.0;
  CHECK(!chart.contains(wrong_dim));
}
