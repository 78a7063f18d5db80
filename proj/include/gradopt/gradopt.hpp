#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gradopt/box.hpp"
#include "gradopt/epoch_schedule.hpp"
#include "gradopt/objective.hpp"
#include "gradopt/random.hpp"
#include "gradopt/run_result.hpp"
#include "gradopt/sfogd.hpp"
#include "gradopt/two_point.hpp"

namespace gradopt {

enum class InitPolicy { kUniformRandom, kBoxCenter, kUserPoint };

struct GradOptConfig {
  std::size_t eval_budget = 1000;  // counts objective evaluations, not iterations
  std::size_t num_epochs = 5;
  InitPolicy init = InitPolicy::kUniformRandom;
  Eigen::VectorXd init_point;  // used with kUserPoint
  std::uint64_t seed = 0;
  bool reset_eta_each_epoch = false;  // off by default: eta persists across epochs
};

/// Graduated zeroth-order minimization: per epoch, SF-OGD on two-point
/// Gaussian gradient estimates at a fixed smoothing radius, radius halved
/// between epochs, iterates projected into the box after every step. Probe
/// points x + delta*u are evaluated as drawn (never projected), so the
/// objective must tolerate points outside the box.
///
/// The trace alternates iterate and probe evaluations: trace[2k] is
/// (x_k, f(x_k)), trace[2k+1] the probe. Fully deterministic given the seed.
inline RunResult run_gradopt(Objective& f, const Box& box, const GradOptConfig& cfg) {
  if (f.dim() != box.dim()) {
    throw std::invalid_argument("run_gradopt: objective and box dimensions differ");
  }
  if (cfg.num_epochs == 0 || cfg.eval_budget < 2 * cfg.num_epochs) {
    throw std::invalid_argument("run_gradopt: budget must be >= 2 * num_epochs");
  }
  EpochSchedule schedule = make_epoch_schedule(box, cfg.eval_budget, cfg.num_epochs);

  RandomStream rng(cfg.seed);
  Eigen::VectorXd x;
  switch (cfg.init) {
    case InitPolicy::kUniformRandom:
      x = rng.uniform_in(box);
      break;
    case InitPolicy::kBoxCenter:
      x = box.center();
      break;
    case InitPolicy::kUserPoint:
      if (cfg.init_point.size() != box.dim()) {
        throw std::invalid_argument("run_gradopt: init_point dimension does not match box");
      }
      x = project_box(cfg.init_point, box);
      break;
  }

  RunResult result;
  result.seed = cfg.seed;
  result.trace.reserve(2 * schedule.total_iterations());
  SfogdState state(box.dim());

  try {
    for (const EpochEntry& epoch : schedule.entries) {
      if (cfg.reset_eta_each_epoch) state.reset();
      for (std::size_t it = 0; it < epoch.iterations; ++it) {
        Eigen::VectorXd u = rng.normal_vector(box.dim());
        TwoPointSample sample = estimate_gradient(f, x, epoch.delta, u);
        result.record(x, sample.value_at_x);
        result.record(x + epoch.delta * u, sample.value_at_probe);
        x = project_box(state.step(x, sample.gradient), box);
      }
    }
  } catch (const EvaluationError& e) {
    result.failed = true;
    result.failure_reason = e.what();
  }
  return result;
}

/// The iterate sequence x_1, x_2, ... of a GradOpt run, read back from the
/// even trace positions.
inline std::vector<Eigen::VectorXd> gradopt_iterates(const RunResult& result) {
  std::vector<Eigen::VectorXd> xs;
  xs.reserve(result.trace.size() / 2);
  for (std::size_t i = 0; i < result.trace.size(); i += 2) {
    xs.push_back(result.trace[i].point);
  }
  return xs;
}

}  // namespace gradopt
