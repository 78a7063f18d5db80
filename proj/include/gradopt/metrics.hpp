#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gradopt {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1-based index of the first evaluation whose score reaches the threshold,
/// or nothing if the trace never crosses it.
inline std::optional<std::size_t> first_crossing(const std::vector<double>& trace_values,
                                                 double threshold) {
  for (std::size_t t = 0; t < trace_values.size(); ++t) {
    if (trace_values[t] >= threshold) return t + 1;
  }
  return std::nullopt;
}

/// Evaluations until a run first reaches target * reference_best, censored at
/// the budget when it never does. trace_values are maximization-convention
/// scores in evaluation order. The target fraction is meaningful only for a
/// positive reference.
inline std::size_t evals_to_target(const std::vector<double>& trace_values,
                                   double reference_best, double target,
                                   std::size_t budget) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw std::invalid_argument("evals_to_target: target must be in (0, 1]");
  }
  if (budget < 1) throw std::invalid_argument("evals_to_target: budget must be positive");
  if (!(reference_best > 0.0)) {
    throw MetricError("evals_to_target: undefined for non-positive reference best");
  }
  auto hit = first_crossing(trace_values, target * reference_best);
  return hit ? *hit : budget;
}

}  // namespace gradopt
