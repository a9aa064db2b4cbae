#pragma once

// A manifold is a single coordinate chart: a dimension, a smooth metric
// component function, and an optional validity predicate (e.g. y > 0 for the
// upper half-space).

#include <functional>
#include <string>
#include <utility>

#include "tbgeo/linalg.hpp"
#include "tbgeo/smooth_fn.hpp"

namespace tbg {

struct Chart {
  int dim = 0;
  SmoothMatrixFn metric;
  std::function<bool(const Point&)> domain_guard;  // null means the whole of R^dim
  std::string name;

  bool contains(const Point& p) const {
    if (p.size() != dim) return false;
    return !domain_guard || domain_guard(p);
  }
};

/// Metric components at a point. Throws ChartDomainError outside the guard.
template <class S>
MatX<S> metric_at(const Chart& chart, const VecX<S>& p) {
  if (!chart.contains(value_of(p)))
    throw ChartDomainError("point outside the domain of chart '" + chart.name + "'");
  return chart.metric(p);
}

}  // namespace tbg
