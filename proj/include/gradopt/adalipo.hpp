#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gradopt/box.hpp"
#include "gradopt/objective.hpp"
#include "gradopt/prs.hpp"
#include "gradopt/random.hpp"
#include "gradopt/run_result.hpp"

namespace gradopt {

struct AdaLipoConfig {
  double exploration_prob = 0.1;  // in (0, 1]; 1 degenerates to pure random search
  double grid_base = 1.01;        // Lipschitz grid k_i = grid_base^i, i integer
  std::size_t rejection_cap = 0;  // candidates per exploitation step; 0 = 10*d*budget
  std::uint64_t seed = 0;
};

struct LipschitzEstimate {
  double k_hat = 0.0;
};

namespace detail {

// Smallest grid power >= s. Exact-comparison bump guards against pow/log
// rounding landing one notch below s.
inline double lipschitz_grid_round(double s, double grid_base) {
  if (s <= 0.0) return 0.0;
  double k = std::pow(grid_base, std::ceil(std::log(s) / std::log(grid_base)));
  while (k < s) k *= grid_base;
  return k;
}

}  // namespace detail

/// Smallest Lipschitz-grid value dominating all observed pairwise slopes.
/// Returns 0 for constant histories. Pairs at identical points are skipped.
inline LipschitzEstimate estimate_lipschitz(const std::vector<Evaluation>& history,
                                            double grid_base) {
  if (grid_base <= 1.0) {
    throw std::invalid_argument("estimate_lipschitz: grid_base must exceed 1");
  }
  double max_slope = 0.0;
  bool any_distinct = false;
  for (std::size_t i = 0; i < history.size(); ++i) {
    for (std::size_t j = i + 1; j < history.size(); ++j) {
      double dist = (history[i].point - history[j].point).norm();
      if (dist == 0.0) continue;
      any_distinct = true;
      double slope = std::abs(history[i].value - history[j].value) / dist;
      if (slope > max_slope) max_slope = slope;
    }
  }
  if (history.size() < 2 || !any_distinct) {
    throw std::invalid_argument("estimate_lipschitz: need at least 2 distinct points");
  }
  return {detail::lipschitz_grid_round(max_slope, grid_base)};
}

/// Per-step record for test-side verification of the acceptance condition.
struct AdaLipoStepInfo {
  enum class Kind { kFirst, kExplore, kExploitAccepted, kFallback };
  Kind kind;
  double k_hat_at_decision;  // grid estimate in force when the point was chosen
  std::size_t candidates_tried;
};

struct AdaLipoDiagnostics {
  std::vector<AdaLipoStepInfo> steps;
};

/// AdaLipo on a minimization objective (internally it maximizes -f, the form
/// the acceptance condition is stated in). First point uniform; afterwards a
/// coin with the exploration probability picks uniform sampling, otherwise
/// uniform candidates are drawn until one satisfies the Lipschitz upper-bound
/// condition
///   min_i (s(x_i) + k_hat * |x - x_i|) >= max_i s(x_i),   s = -f,
/// with a uniform fallback once rejection_cap candidates failed. k_hat is the
/// grid-rounded max observed pairwise slope, refreshed after every
/// evaluation. Deterministic per seed.
inline RunResult run_adalipo(Objective& f, const Box& box, std::size_t budget,
                             const AdaLipoConfig& cfg,
                             AdaLipoDiagnostics* diag = nullptr) {
  if (budget < 2) throw std::invalid_argument("run_adalipo: budget must be >= 2");
  if (f.dim() != box.dim()) {
    throw std::invalid_argument("run_adalipo: objective and box dimensions differ");
  }
  if (!(cfg.exploration_prob > 0.0 && cfg.exploration_prob <= 1.0)) {
    throw std::invalid_argument("run_adalipo: exploration_prob must be in (0, 1]");
  }
  if (cfg.grid_base <= 1.0) {
    throw std::invalid_argument("run_adalipo: grid_base must exceed 1");
  }
  const std::size_t cap =
      cfg.rejection_cap > 0
          ? cfg.rejection_cap
          : 10 * static_cast<std::size_t>(box.dim()) * budget;

  RandomStream points(derive_seed(cfg.seed, {kPointStream}));
  RandomStream decisions(derive_seed(cfg.seed, {kDecisionStream}));

  RunResult result;
  result.seed = cfg.seed;
  result.trace.reserve(budget);

  std::vector<Eigen::VectorXd> xs;
  std::vector<double> scores;  // s = -f values
  double score_max = -std::numeric_limits<double>::infinity();
  double max_slope = 0.0;
  double k_hat = 0.0;

  auto note = [&](AdaLipoStepInfo::Kind kind, double k, std::size_t tried) {
    if (diag) diag->steps.push_back({kind, k, tried});
  };

  // Upper-bound check with early exit: reject as soon as the running bound
  // drops below the incumbent maximum.
  auto accepts = [&](const Eigen::VectorXd& x) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (scores[i] + k_hat * (x - xs[i]).norm() < score_max) return false;
    }
    return true;
  };

  auto observe = [&](const Eigen::VectorXd& x, double score) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double dist = (x - xs[i]).norm();
      if (dist == 0.0) continue;
      double slope = std::abs(score - scores[i]) / dist;
      if (slope > max_slope) max_slope = slope;
    }
    xs.push_back(x);
    scores.push_back(score);
    if (score > score_max) score_max = score;
    k_hat = detail::lipschitz_grid_round(max_slope, cfg.grid_base);
  };

  try {
    for (std::size_t t = 0; t < budget; ++t) {
      Eigen::VectorXd x;
      if (t == 0) {
        x = points.uniform_in(box);
        note(AdaLipoStepInfo::Kind::kFirst, k_hat, 0);
      } else if (decisions.uniform01() < cfg.exploration_prob) {
        x = points.uniform_in(box);
        note(AdaLipoStepInfo::Kind::kExplore, k_hat, 0);
      } else {
        bool accepted = false;
        std::size_t tried = 0;
        while (tried < cap) {
          x = points.uniform_in(box);
          ++tried;
          if (accepts(x)) {
            accepted = true;
            break;
          }
        }
        if (accepted) {
          note(AdaLipoStepInfo::Kind::kExploitAccepted, k_hat, tried);
        } else {
          x = points.uniform_in(box);
          note(AdaLipoStepInfo::Kind::kFallback, k_hat, tried);
        }
      }
      double value = f(x);
      result.record(x, value);
      observe(x, -value);
    }
  } catch (const EvaluationError& e) {
    result.failed = true;
    result.failure_reason = e.what();
  }
  return result;
}

}  // namespace gradopt
