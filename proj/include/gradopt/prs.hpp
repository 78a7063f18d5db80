#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "gradopt/box.hpp"
#include "gradopt/objective.hpp"
#include "gradopt/random.hpp"
#include "gradopt/run_result.hpp"

namespace gradopt {

// Draw-protocol tags shared by the samplers. Both PRS and AdaLipo take box
// points from the stream derived with kPointStream, so AdaLipo with
// exploration probability 1 replays exactly the PRS trace for a given seed.
inline constexpr std::uint64_t kPointStream = 1;
inline constexpr std::uint64_t kDecisionStream = 2;

/// Pure random search: budget i.i.d. uniform points in the box, minimization
/// convention. Deterministic per seed.
inline RunResult run_prs(Objective& f, const Box& box, std::size_t budget,
                         std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("run_prs: budget must be >= 1");
  if (f.dim() != box.dim()) {
    throw std::invalid_argument("run_prs: objective and box dimensions differ");
  }
  RandomStream points(derive_seed(seed, {kPointStream}));
  RunResult result;
  result.seed = seed;
  result.trace.reserve(budget);
  try {
    for (std::size_t t = 0; t < budget; ++t) {
      Eigen::VectorXd x = points.uniform_in(box);
      result.record(x, f(x));
    }
  } catch (const EvaluationError& e) {
    result.failed = true;
    result.failure_reason = e.what();
  }
  return result;
}

}  // namespace gradopt
