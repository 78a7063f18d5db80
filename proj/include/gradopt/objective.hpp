#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "gradopt/box.hpp"

namespace gradopt {

/// Thrown when an objective produces a non-finite value. Carries the
/// offending point so a run can report where it died.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string objective_name, Eigen::VectorXd point, double value)
      : std::runtime_error(describe(objective_name, value)),
        objective_name_(std::move(objective_name)),
        point_(std::move(point)),
        value_(value) {}

  const std::string& objective_name() const { return objective_name_; }
  const Eigen::VectorXd& point() const { return point_; }
  double value() const { return value_; }

 private:
  static std::string describe(const std::string& name, double value) {
    std::ostringstream os;
    os << "objective '" << name << "' returned non-finite value " << value;
    return os.str();
  }

  std::string objective_name_;
  Eigen::VectorXd point_;
  double value_;
};

/// Black-box function handle with an evaluation counter. Evaluation is
/// expected to be deterministic in the point. The optional Lipschitz hint is
/// metadata consumed only by property tests.
class Objective {
 public:
  using Fn = std::function<double(const Eigen::VectorXd&)>;

  Objective(std::string name, Box domain, Fn fn,
            std::optional<double> lipschitz_hint = std::nullopt)
      : name_(std::move(name)),
        domain_(std::move(domain)),
        fn_(std::move(fn)),
        lipschitz_hint_(lipschitz_hint) {}

  /// Evaluates, counts, and rejects non-finite values.
  double operator()(const Eigen::VectorXd& x) {
    if (x.size() != domain_.dim()) {
      throw std::invalid_argument("Objective: point dimension does not match domain");
    }
    ++eval_count_;
    double v = fn_(x);
    if (!std::isfinite(v)) throw EvaluationError(name_, x, v);
    return v;
  }

  Eigen::Index dim() const { return domain_.dim(); }
  const Box& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  std::size_t eval_count() const { return eval_count_; }
  std::optional<double> lipschitz_hint() const { return lipschitz_hint_; }

  /// Same function negated (fresh counter). Turns a score to maximize into a
  /// loss to minimize and back.
  Objective negated() const {
    Fn f = fn_;
    return Objective("neg(" + name_ + ")", domain_,
                     [f](const Eigen::VectorXd& x) { return -f(x); }, lipschitz_hint_);
  }

  /// Same function scaled by a constant (fresh counter).
  Objective scaled(double c) const {
    Fn f = fn_;
    return Objective(name_ + "*c", domain_,
                     [f, c](const Eigen::VectorXd& x) { return c * f(x); });
  }

  /// Same function shifted by a constant (fresh counter).
  Objective shifted(double k) const {
    Fn f = fn_;
    return Objective(name_ + "+k", domain_,
                     [f, k](const Eigen::VectorXd& x) { return f(x) + k; });
  }

 private:
  std::string name_;
  Box domain_;
  Fn fn_;
  std::optional<double> lipschitz_hint_;
  std::size_t eval_count_ = 0;
};

}  // namespace gradopt
