#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace gradopt {

/// Scale-free online gradient descent state: per-coordinate accumulated
/// squared gradients. Each eta[i] is nonnegative and nondecreasing for the
/// life of the state.
class SfogdState {
 public:
  explicit SfogdState(Eigen::Index d) : eta_(Eigen::VectorXd::Zero(d)) {}

  const Eigen::VectorXd& eta() const { return eta_; }

  void reset() { eta_.setZero(); }

  /// Accumulates g^2 into eta and returns the unprojected iterate
  ///   x~[i] = x[i] - g[i] / sqrt(eta[i]),
  /// leaving x[i] unchanged where eta[i] stays zero (zero learning rate).
  /// A non-finite gradient component throws and leaves the state unmodified.
  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& g) {
    if (x.size() != eta_.size() || g.size() != eta_.size()) {
      throw std::invalid_argument("SfogdState::step: dimension mismatch");
    }
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (!std::isfinite(g[i])) {
        throw std::invalid_argument("SfogdState::step: non-finite gradient component");
      }
    }
    Eigen::VectorXd next(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      eta_[i] += g[i] * g[i];
      next[i] = eta_[i] > 0.0 ? x[i] - g[i] / std::sqrt(eta_[i]) : x[i];
    }
    return next;
  }

 private:
  Eigen::VectorXd eta_;
};

}  // namespace gradopt
