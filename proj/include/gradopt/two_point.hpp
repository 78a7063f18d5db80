#pragma once

#include <Eigen/Core>

#include <stdexcept>

#include "gradopt/objective.hpp"

namespace gradopt {

struct TwoPointSample {
  Eigen::VectorXd gradient;  // (d/delta) * (f(x + delta*u) - f(x)) * u
  double value_at_x;
  double value_at_probe;
};

/// Two-point gradient estimate along a caller-supplied Gaussian direction u.
/// Costs exactly two objective evaluations; both raw values are returned so
/// the caller can charge them to the budget and record them in the trace.
///
/// For u ~ N(0, I_d) the estimate has expectation d * grad of the Gaussian
/// smoothing of f at radius delta (the factor d comes with the direction
/// distribution; SF-OGD is invariant to it).
inline TwoPointSample estimate_gradient(Objective& f, const Eigen::VectorXd& x,
                                        double delta, const Eigen::VectorXd& u) {
  if (delta <= 0.0) throw std::invalid_argument("estimate_gradient: delta must be positive");
  if (x.size() != u.size()) {
    throw std::invalid_argument("estimate_gradient: x and u dimensions differ");
  }
  const double d = static_cast<double>(x.size());
  double f_x = f(x);
  double f_probe = f(x + delta * u);
  Eigen::VectorXd g = (d / delta) * (f_probe - f_x) * u;
  return {std::move(g), f_x, f_probe};
}

}  // namespace gradopt
