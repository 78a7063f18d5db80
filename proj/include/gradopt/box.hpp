#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <utility>

namespace gradopt {

/// Axis-aligned compact decision space: per-coordinate bounds with
/// lower[i] <= upper[i]. Equal bounds freeze a coordinate.
class Box {
 public:
  Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() == 0 || lower_.size() != upper_.size()) {
      throw std::invalid_argument("Box: bounds must be non-empty and of equal length");
    }
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
      if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || lower_[i] > upper_[i]) {
        throw std::invalid_argument("Box: requires finite lower[i] <= upper[i]");
      }
    }
  }

  /// Hypercube [lo, hi]^d.
  static Box cube(double lo, double hi, Eigen::Index d) {
    return Box(Eigen::VectorXd::Constant(d, lo), Eigen::VectorXd::Constant(d, hi));
  }

  Eigen::Index dim() const { return lower_.size(); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  /// Euclidean norm of (upper - lower).
  double diameter() const { return (upper_ - lower_).norm(); }

  Eigen::VectorXd center() const { return 0.5 * (lower_ + upper_); }

  bool contains(const Eigen::VectorXd& p, double tol = 0.0) const {
    if (p.size() != dim()) return false;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (p[i] < lower_[i] - tol || p[i] > upper_[i] + tol) return false;
    }
    return true;
  }

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

/// Euclidean projection onto a box: per-coordinate clamp. Idempotent.
/// Signed zeros are normalized (-0.0 -> 0.0).
inline Eigen::VectorXd project_box(const Eigen::VectorXd& point, const Box& box) {
  if (point.size() != box.dim()) {
    throw std::invalid_argument("project_box: point dimension does not match box");
  }
  Eigen::VectorXd out(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    double v = point[i];
    if (v < box.lower()[i]) v = box.lower()[i];
    if (v > box.upper()[i]) v = box.upper()[i];
    out[i] = v + 0.0;  // -0.0 + 0.0 == +0.0
  }
  return out;
}

}  // namespace gradopt
