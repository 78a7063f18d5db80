#pragma once

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "gradopt/experiment.hpp"
#include "gradopt/results_table.hpp"

namespace gradopt {

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline AlgorithmSpec::Kind parse_algorithm_kind(const std::string& s) {
  std::string k = lower(s);
  if (k == "prs" || k == "random" || k == "random-search") return AlgorithmSpec::Kind::kPrs;
  if (k == "adalipo") return AlgorithmSpec::Kind::kAdaLipo;
  if (k == "gradopt") return AlgorithmSpec::Kind::kGradOpt;
  throw ConfigError("unknown algorithm '" + s + "' (expected PRS, AdaLipo, or GradOpt)");
}

inline InitPolicy parse_init_policy(const std::string& s) {
  std::string k = lower(s);
  if (k == "uniform" || k == "uniform-random") return InitPolicy::kUniformRandom;
  if (k == "center" || k == "box-center") return InitPolicy::kBoxCenter;
  throw ConfigError("unknown init policy '" + s + "' (expected uniform-random or box-center)");
}

inline std::string init_policy_name(InitPolicy p) {
  switch (p) {
    case InitPolicy::kUniformRandom: return "uniform-random";
    case InitPolicy::kBoxCenter: return "box-center";
    case InitPolicy::kUserPoint: return "user-point";
  }
  return "uniform-random";
}

inline std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char c : s) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '-';
  }
  return out.empty() ? std::string("x") : out;
}

}  // namespace detail

/// Reads an experiment config from JSON. Recognized keys:
///   budget, repetitions, targets, master_seed, workers,
///   problems:   [{name, synthetic|krr|krr_hd, dim?}],
///   algorithms: [{name, kind?, exploration_prob?, grid_base?, rejection_cap?,
///                 epochs?, init?, reset_eta_each_epoch?}]
/// Dataset manifest paths are resolved relative to the config file.
inline ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.budget = j.value("budget", cfg.budget);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.workers = j.value("workers", cfg.workers);
    if (j.contains("targets")) cfg.targets = j.at("targets").get<std::vector<double>>();

    for (const auto& p : j.value("problems", nlohmann::json::array())) {
      ProblemSpec spec;
      spec.name = p.at("name").get<std::string>();
      if (p.contains("synthetic")) {
        spec.kind = ProblemSpec::Kind::kSynthetic;
        spec.function = p.at("synthetic").get<std::string>();
        spec.dim = p.value("dim", 0);
      } else if (p.contains("krr")) {
        spec.kind = ProblemSpec::Kind::kKrr;
        spec.manifest = path.parent_path() / p.at("krr").get<std::string>();
      } else if (p.contains("krr_hd")) {
        spec.kind = ProblemSpec::Kind::kKrrHd;
        spec.manifest = path.parent_path() / p.at("krr_hd").get<std::string>();
      } else {
        throw ConfigError("problem '" + spec.name +
                          "' needs one of: synthetic, krr, krr_hd");
      }
      cfg.problems.push_back(std::move(spec));
    }

    for (const auto& a : j.value("algorithms", nlohmann::json::array())) {
      AlgorithmSpec spec;
      spec.name = a.at("name").get<std::string>();
      spec.kind = detail::parse_algorithm_kind(a.value("kind", spec.name));
      spec.exploration_prob = a.value("exploration_prob", spec.exploration_prob);
      spec.grid_base = a.value("grid_base", spec.grid_base);
      spec.rejection_cap = a.value("rejection_cap", spec.rejection_cap);
      spec.epochs = a.value("epochs", spec.epochs);
      if (a.contains("init")) spec.init = detail::parse_init_policy(a.at("init"));
      spec.reset_eta_each_epoch = a.value("reset_eta_each_epoch", spec.reset_eta_each_epoch);
      cfg.algorithms.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return cfg;
}

/// Echo of the experiment-defining parts of a resolved config (execution
/// knobs like worker count excluded: they never change results).
inline std::string experiment_manifest_json(const ResolvedExperiment& experiment) {
  const ExperimentConfig& cfg = experiment.cfg;
  nlohmann::json j;
  j["budget"] = cfg.budget;
  j["repetitions"] = cfg.repetitions;
  j["targets"] = cfg.targets;
  j["master_seed"] = cfg.master_seed;
  j["problems"] = nlohmann::json::array();
  for (std::size_t i = 0; i < cfg.problems.size(); ++i) {
    const ProblemSpec& p = cfg.problems[i];
    nlohmann::json jp;
    jp["name"] = p.name;
    switch (p.kind) {
      case ProblemSpec::Kind::kSynthetic:
        jp["synthetic"] = p.function;
        if (p.dim > 0) jp["dim"] = p.dim;
        break;
      case ProblemSpec::Kind::kKrr:
        jp["krr"] = p.manifest.string();
        break;
      case ProblemSpec::Kind::kKrrHd:
        jp["krr_hd"] = p.manifest.string();
        break;
    }
    jp["box_dim"] = experiment.problems[i].box.dim();
    j["problems"].push_back(jp);
  }
  j["algorithms"] = nlohmann::json::array();
  for (const AlgorithmSpec& a : cfg.algorithms) {
    nlohmann::json ja;
    ja["name"] = a.name;
    switch (a.kind) {
      case AlgorithmSpec::Kind::kPrs:
        ja["kind"] = "PRS";
        break;
      case AlgorithmSpec::Kind::kAdaLipo:
        ja["kind"] = "AdaLipo";
        ja["exploration_prob"] = a.exploration_prob;
        ja["grid_base"] = a.grid_base;
        ja["rejection_cap"] = a.rejection_cap;
        break;
      case AlgorithmSpec::Kind::kGradOpt:
        ja["kind"] = "GradOpt";
        ja["epochs"] = a.epochs;
        ja["init"] = detail::init_policy_name(a.init);
        ja["reset_eta_each_epoch"] = a.reset_eta_each_epoch;
        break;
    }
    j["algorithms"].push_back(ja);
  }
  return j.dump(2) + "\n";
}

/// Writes the results table, per-run trace CSVs (eval_index,value,
/// best_so_far), and the config echo under out_dir. Byte-identical for
/// identical resolved experiments.
inline void write_experiment_outputs(const std::filesystem::path& out_dir,
                                     const ResolvedExperiment& experiment,
                                     const ResultsTable& table, const RunLog& log,
                                     TableFormat format) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "traces");

  const char* results_name = format == TableFormat::kCsv ? "results.csv" : "results.md";
  std::ofstream results(out_dir / results_name, std::ios::binary);
  results << emit_results(table, format);

  std::ofstream manifest(out_dir / "manifest.json", std::ios::binary);
  manifest << experiment_manifest_json(experiment);

  char buf[64];
  for (const RunRecord& run : log.runs) {
    std::snprintf(buf, sizeof(buf), "rep%03zu", run.repetition);
    fs::path trace_path =
        out_dir / "traces" /
        (detail::sanitize_filename(run.problem) + "__" +
         detail::sanitize_filename(run.algorithm) + "__" + buf + ".csv");
    std::ofstream trace(trace_path, std::ios::binary);
    trace << "eval_index,value,best_so_far\n";
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < run.scores.size(); ++t) {
      best = std::max(best, run.scores[t]);
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g", t + 1, run.scores[t], best);
      trace << buf << '\n';
    }
  }
}

}  // namespace gradopt
