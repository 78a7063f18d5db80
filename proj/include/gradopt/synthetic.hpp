#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gradopt/box.hpp"
#include "gradopt/objective.hpp"

namespace gradopt {

/// Closed-form values of the desk-scale test functions. All are total on R^d.
inline double eval_synthetic(std::string_view name, const Eigen::VectorXd& x) {
  if (name == "sphere") return x.squaredNorm();
  if (name == "shifted-sphere") {
    // default shift: 0.25 in every coordinate
    return (x.array() - 0.25).matrix().squaredNorm();
  }
  if (name == "l1-cone") return x.cwiseAbs().sum();
  if (name == "rosenbrock") {
    if (x.size() < 2) throw std::invalid_argument("rosenbrock needs dimension >= 2");
    double v = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      double a = x[i + 1] - x[i] * x[i];
      double b = 1.0 - x[i];
      v += 100.0 * a * a + b * b;
    }
    return v;
  }
  throw std::invalid_argument("eval_synthetic: unknown function name '" + std::string(name) + "'");
}

/// Synthetic minimization objective on its standard box. Lipschitz hints
/// (w.r.t. the Euclidean norm, over the stated box) where they are easy.
inline Objective make_synthetic(std::string_view name, Eigen::Index d) {
  std::string fname(name);
  if (name == "sphere" || name == "shifted-sphere") {
    // |grad| = 2|x - c| <= 2*sqrt(d)*(1 + |c|) on [-1,1]^d
    double hint = 2.0 * std::sqrt(static_cast<double>(d)) * 1.25;
    return Objective(fname, Box::cube(-1.0, 1.0, d),
                     [fname](const Eigen::VectorXd& x) { return eval_synthetic(fname, x); },
                     hint);
  }
  if (name == "l1-cone") {
    return Objective(fname, Box::cube(-1.0, 1.0, d),
                     [fname](const Eigen::VectorXd& x) { return eval_synthetic(fname, x); },
                     std::sqrt(static_cast<double>(d)));
  }
  if (name == "rosenbrock") {
    return Objective(fname, Box::cube(-2.0, 2.0, d),
                     [fname](const Eigen::VectorXd& x) { return eval_synthetic(fname, x); });
  }
  throw std::invalid_argument("make_synthetic: unknown function name '" + fname + "'");
}

/// Shifted sphere |x - c|^2 with an explicit center.
inline Objective make_shifted_sphere(const Eigen::VectorXd& center, const Box& box) {
  Eigen::VectorXd c = center;
  return Objective("shifted-sphere", box,
                   [c](const Eigen::VectorXd& x) { return (x - c).squaredNorm(); });
}

}  // namespace gradopt
