#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gradopt/adalipo.hpp"
#include "gradopt/box.hpp"
#include "gradopt/dataset.hpp"
#include "gradopt/folds.hpp"
#include "gradopt/gradopt.hpp"
#include "gradopt/krr.hpp"
#include "gradopt/metrics.hpp"
#include "gradopt/objective.hpp"
#include "gradopt/prs.hpp"
#include "gradopt/random.hpp"
#include "gradopt/results_table.hpp"

namespace gradopt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resolved benchmark problem: a maximization score function plus its box.
/// make_objective returns a fresh instance (own evaluation counter) so
/// concurrent runs never share mutable state.
struct Problem {
  std::string name;
  Box box;
  std::function<Objective()> make_objective;
};

struct ProblemSpec {
  enum class Kind { kSynthetic, kKrr, kKrrHd };
  std::string name;
  Kind kind = Kind::kSynthetic;
  std::string function;   // synthetic registry name
  Eigen::Index dim = 0;   // synthetic dimension; 0 = registry default
  std::filesystem::path manifest;  // dataset manifest for the krr kinds
};

struct AlgorithmSpec {
  enum class Kind { kPrs, kAdaLipo, kGradOpt };
  std::string name;  // table row label, unique within an experiment
  Kind kind = Kind::kPrs;
  // AdaLipo knobs
  double exploration_prob = 0.1;
  double grid_base = 1.01;
  std::size_t rejection_cap = 0;  // 0 = auto (10 * d * budget)
  // GradOpt knobs
  std::size_t epochs = 5;
  InitPolicy init = InitPolicy::kUniformRandom;
  bool reset_eta_each_epoch = false;
};

struct ExperimentConfig {
  std::size_t budget = 1000;
  std::size_t repetitions = 100;
  std::vector<double> targets = {0.90, 0.95, 0.99};
  std::uint64_t master_seed = 0;
  int workers = 1;
  std::vector<ProblemSpec> problems;
  std::vector<AlgorithmSpec> algorithms;
};

/// Synthetic maximization problems available by name.
///   sphere-max        1 - |x|^2 on [-1,1]^d            (default d = 2)
///   quad-surrogate-hd 1 - weighted quadratic on the KRR-HD-shaped box
///                     [-2,4] x [-5,5] x [0,1]^(d-2)    (default d = 52)
///   abs-peak          -|x - 0.7| on [0,1]              (d = 1)
inline Problem make_synthetic_problem(const std::string& name, const std::string& function,
                                      Eigen::Index dim) {
  if (function == "sphere-max") {
    Eigen::Index d = dim > 0 ? dim : 2;
    Box box = Box::cube(-1.0, 1.0, d);
    return {name, box, [name, box]() {
              return Objective(name, box, [](const Eigen::VectorXd& x) {
                return 1.0 - x.squaredNorm();
              });
            }};
  }
  if (function == "quad-surrogate-hd") {
    Eigen::Index d = dim > 0 ? dim : 52;
    if (d < 3) throw ConfigError("quad-surrogate-hd needs dimension >= 3");
    Eigen::VectorXd lo(d), hi(d);
    lo[0] = -2.0; hi[0] = 4.0;
    lo[1] = -5.0; hi[1] = 5.0;
    for (Eigen::Index i = 2; i < d; ++i) { lo[i] = 0.0; hi[i] = 1.0; }
    Box box(lo, hi);
    // Weighted quadratic shaped like the data-cleaning KRR problem: a 2-d
    // bowl in the hyperparameter block plus per-sample weight coordinates
    // whose optima sit on the box boundary (1 for clean samples, 0 for every
    // fifth "outlier"). Inputs are clamped into the box first, like the KRR
    // objectives clamp their hyperparameter transforms, so the score stays
    // bounded on probe points far outside the box.
    return {name, box, [name, box]() {
              return Objective(name, box, [box](const Eigen::VectorXd& x) {
                Eigen::VectorXd c = project_box(x, box);
                double q = 0.1 * (c[0] - 1.0) * (c[0] - 1.0) + 0.04 * c[1] * c[1];
                for (Eigen::Index i = 2; i < c.size(); ++i) {
                  double target = ((i - 2) % 5 == 4) ? 0.0 : 1.0;
                  double e = c[i] - target;
                  q += 0.02 * e * e;
                }
                return 1.0 - q;
              });
            }};
  }
  if (function == "abs-peak") {
    Box box = Box::cube(0.0, 1.0, 1);
    return {name, box, [name, box]() {
              return Objective(name, box, [](const Eigen::VectorXd& x) {
                return -std::abs(x[0] - 0.7);
              });
            }};
  }
  throw ConfigError("unknown synthetic problem function '" + function + "'");
}

inline std::vector<std::string> synthetic_problem_names() {
  return {"sphere-max", "quad-surrogate-hd", "abs-peak"};
}

/// Builds a KRR tuning problem from a dataset manifest. The fold split is
/// seeded by the manifest seed, so the objective is one fixed deterministic
/// function for the whole experiment.
inline Problem make_krr_problem(const std::string& name,
                                const std::filesystem::path& manifest_path, bool weighted) {
  DatasetManifest manifest = load_manifest(manifest_path);
  Dataset dataset = load_dataset(manifest);
  FoldSplit folds =
      make_fold_split(static_cast<std::size_t>(dataset.n()), 10, manifest.options.seed);
  auto scorer = std::make_shared<const KrrCvScorer>(std::move(dataset), std::move(folds));
  Box box = krr_box(scorer->dataset().n(), weighted);
  return {name, box, [name, scorer, weighted]() {
            return make_krr_objective(scorer, weighted, name);
          }};
}

struct ResolvedExperiment {
  ExperimentConfig cfg;
  std::vector<Problem> problems;
};

/// Validates the config and materializes every problem (loading datasets).
/// Fails before any run on unknown names, duplicate labels, or budgets the
/// configured algorithms cannot honor.
inline ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg) {
  if (cfg.budget < 1) throw ConfigError("budget must be positive");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (cfg.targets.empty()) throw ConfigError("need at least one target");
  for (double t : cfg.targets) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("targets must lie in (0, 1]");
  }
  if (cfg.problems.empty()) throw ConfigError("need at least one problem");
  if (cfg.algorithms.empty()) throw ConfigError("need at least one algorithm");

  for (const auto& a : cfg.algorithms) {
    if (a.name.empty()) throw ConfigError("algorithm label must not be empty");
    if (a.kind == AlgorithmSpec::Kind::kGradOpt && cfg.budget < 2 * a.epochs) {
      throw ConfigError("budget too small for GradOpt with " + std::to_string(a.epochs) +
                        " epochs (needs >= 2 per epoch)");
    }
    if (a.kind == AlgorithmSpec::Kind::kAdaLipo && cfg.budget < 2) {
      throw ConfigError("budget too small for AdaLipo (needs >= 2)");
    }
    if (std::count_if(cfg.algorithms.begin(), cfg.algorithms.end(),
                      [&](const AlgorithmSpec& b) { return b.name == a.name; }) != 1) {
      throw ConfigError("duplicate algorithm label '" + a.name + "'");
    }
  }

  ResolvedExperiment resolved;
  resolved.cfg = cfg;
  for (const auto& p : cfg.problems) {
    if (p.name.empty()) throw ConfigError("problem name must not be empty");
    if (std::count_if(cfg.problems.begin(), cfg.problems.end(),
                      [&](const ProblemSpec& q) { return q.name == p.name; }) != 1) {
      throw ConfigError("duplicate problem name '" + p.name + "'");
    }
    switch (p.kind) {
      case ProblemSpec::Kind::kSynthetic:
        resolved.problems.push_back(make_synthetic_problem(p.name, p.function, p.dim));
        break;
      case ProblemSpec::Kind::kKrr:
        resolved.problems.push_back(make_krr_problem(p.name, p.manifest, false));
        break;
      case ProblemSpec::Kind::kKrrHd:
        resolved.problems.push_back(make_krr_problem(p.name, p.manifest, true));
        break;
    }
  }
  return resolved;
}

/// Everything the harness knows about one executed run. Scores are the
/// maximization-convention values in evaluation order.
struct RunRecord {
  std::string problem;
  std::string algorithm;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::vector<double> scores;
  std::size_t evals_used = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  bool failed = false;
};

struct RunLog {
  std::vector<RunRecord> runs;  // problem-major, then algorithm, then repetition
};

namespace detail {

inline RunRecord execute_run(const Problem& problem, const AlgorithmSpec& alg,
                             std::size_t repetition, std::uint64_t child_seed,
                             std::size_t budget) {
  // All optimizers minimize; the harness negates the score objective and
  // flips the recorded values back.
  Objective score_objective = problem.make_objective();
  Objective loss = score_objective.negated();

  RunResult run;
  switch (alg.kind) {
    case AlgorithmSpec::Kind::kPrs:
      run = run_prs(loss, problem.box, budget, child_seed);
      break;
    case AlgorithmSpec::Kind::kAdaLipo: {
      AdaLipoConfig cfg;
      cfg.exploration_prob = alg.exploration_prob;
      cfg.grid_base = alg.grid_base;
      cfg.rejection_cap = alg.rejection_cap;
      cfg.seed = child_seed;
      run = run_adalipo(loss, problem.box, budget, cfg);
      break;
    }
    case AlgorithmSpec::Kind::kGradOpt: {
      GradOptConfig cfg;
      cfg.eval_budget = budget;
      cfg.num_epochs = alg.epochs;
      cfg.init = alg.init;
      cfg.seed = child_seed;
      cfg.reset_eta_each_epoch = alg.reset_eta_each_epoch;
      run = run_gradopt(loss, problem.box, cfg);
      break;
    }
  }

  RunRecord record;
  record.problem = problem.name;
  record.algorithm = alg.name;
  record.repetition = repetition;
  record.seed = child_seed;
  record.evals_used = run.evals_used;
  record.failed = run.failed;
  record.scores.reserve(run.trace.size());
  for (const auto& e : run.trace) record.scores.push_back(-e.value);
  if (!run.trace.empty()) record.best_score = -run.best_value;
  return record;
}

}  // namespace detail

/// Runs every (problem, algorithm, repetition) under the shared budget and
/// aggregates evals-to-target per target. Child seeds are a stable hash of
/// (master_seed, problem index, algorithm index, repetition index), so the
/// table is a pure function of the config regardless of worker count. The
/// reference best per problem is the maximum score any included run of any
/// algorithm observed (two-pass protocol).
inline ResultsTable run_experiment(const ResolvedExperiment& experiment,
                                   RunLog* log = nullptr) {
  const ExperimentConfig& cfg = experiment.cfg;
  const auto& problems = experiment.problems;
  const std::size_t n_problems = problems.size();
  const std::size_t n_algorithms = cfg.algorithms.size();
  const std::size_t n_reps = cfg.repetitions;
  const std::size_t n_tasks = n_problems * n_algorithms * n_reps;

  std::vector<RunRecord> records(n_tasks);
  auto run_task = [&](std::size_t task) {
    std::size_t p = task / (n_algorithms * n_reps);
    std::size_t a = (task / n_reps) % n_algorithms;
    std::size_t r = task % n_reps;
    std::uint64_t child_seed = derive_seed(
        cfg.master_seed, {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(a),
                          static_cast<std::uint64_t>(r)});
    records[task] =
        detail::execute_run(problems[p], cfg.algorithms[a], r, child_seed, cfg.budget);
  };

  int workers = std::max(1, cfg.workers);
  if (workers == 1 || n_tasks <= 1) {
    for (std::size_t task = 0; task < n_tasks; ++task) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        std::size_t task = next.fetch_add(1);
        if (task >= n_tasks) return;
        try {
          run_task(task);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(workers, static_cast<int>(n_tasks));
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  ResultsTable table;
  for (const auto& p : problems) table.problems.push_back(p.name);
  for (const auto& a : cfg.algorithms) table.algorithms.push_back(a.name);
  table.targets = cfg.targets;

  for (std::size_t p = 0; p < n_problems; ++p) {
    double ref = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t a = 0; a < n_algorithms; ++a) {
      for (std::size_t r = 0; r < n_reps; ++r) {
        const RunRecord& rec = records[(p * n_algorithms + a) * n_reps + r];
        if (rec.failed || rec.scores.empty()) continue;
        ref = std::max(ref, rec.best_score);
        any = true;
      }
    }
    if (any) table.reference_best[problems[p].name] = ref;

    for (std::size_t a = 0; a < n_algorithms; ++a) {
      for (double target : cfg.targets) {
        CellStats cell;
        std::vector<double> values;
        for (std::size_t r = 0; r < n_reps; ++r) {
          const RunRecord& rec = records[(p * n_algorithms + a) * n_reps + r];
          if (rec.failed) {
            ++cell.failed;
            continue;
          }
          if (!any || !(ref > 0.0)) continue;  // metric undefined for this problem
          double threshold = target * ref;
          auto hit = first_crossing(rec.scores, threshold);
          if (!hit) ++cell.censored;
          values.push_back(
              static_cast<double>(evals_to_target(rec.scores, ref, target, cfg.budget)));
        }
        if (values.empty()) {
          cell.undefined = true;
        } else {
          double mean = 0.0;
          for (double v : values) mean += v;
          mean /= static_cast<double>(values.size());
          double var = 0.0;
          for (double v : values) var += (v - mean) * (v - mean);
          var /= static_cast<double>(values.size());
          cell.mean = mean;
          cell.stddev = std::sqrt(var);
        }
        table.cells[{problems[p].name, cfg.algorithms[a].name, target}] = cell;
      }
    }
  }

  if (log) {
    log->runs.assign(records.begin(), records.end());
  }
  return table;
}

inline ResultsTable run_experiment(const ExperimentConfig& cfg, RunLog* log = nullptr) {
  return run_experiment(resolve_experiment(cfg), log);
}

}  // namespace gradopt
