#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace gradopt {

struct Evaluation {
  Eigen::VectorXd point;
  double value;
};

/// Full record of one optimizer run, minimization convention: best_value is
/// the lowest value over the trace and best_point a trace point achieving it.
/// The trace holds every objective evaluation in order, so evals_used equals
/// the trace length.
struct RunResult {
  std::vector<Evaluation> trace;
  Eigen::VectorXd best_point;
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t evals_used = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string failure_reason;

  void record(const Eigen::VectorXd& point, double value) {
    trace.push_back({point, value});
    ++evals_used;
    if (value < best_value) {
      best_value = value;
      best_point = point;
    }
  }

  /// Values in evaluation order.
  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(trace.size());
    for (const auto& e : trace) v.push_back(e.value);
    return v;
  }
};

}  // namespace gradopt
