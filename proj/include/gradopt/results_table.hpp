#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace gradopt {

/// One (problem, algorithm, target) cell: mean and standard deviation of
/// evals-to-target across repetitions, censored runs counted at the budget.
/// Cells whose reference best is non-positive are undefined (reported N/A).
struct CellStats {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double stddev = std::numeric_limits<double>::quiet_NaN();
  std::size_t censored = 0;  // repetitions that never reached the threshold
  std::size_t failed = 0;    // repetitions excluded after evaluation failures
  bool undefined = false;
};

struct ResultsTable {
  // Emission orders; cells are keyed independently so externally produced
  // results for other algorithm names can be merged in.
  std::vector<std::string> problems;
  std::vector<std::string> algorithms;
  std::vector<double> targets;
  std::map<std::tuple<std::string, std::string, double>, CellStats> cells;
  std::map<std::string, double> reference_best;

  const CellStats* cell(const std::string& problem, const std::string& algorithm,
                        double target) const {
    auto it = cells.find({problem, algorithm, target});
    return it == cells.end() ? nullptr : &it->second;
  }
};

enum class TableFormat { kMarkdown, kCsv };

namespace detail {

// Mean rounded to 2 decimals, trailing zeros stripped but at least one
// decimal digit kept: 1000 -> "1000.0", 8.10 -> "8.1", 10.38 -> "10.38".
inline std::string format_mean(double mean) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", mean);
  std::string s(buf);
  while (s.size() >= 2 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

inline std::string format_cell(const CellStats& c) {
  if (c.undefined) return "N/A";
  return format_mean(c.mean) + "(± " + std::to_string(std::llround(c.stddev)) + ")";
}

inline std::string format_target_percent(double target) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", target * 100.0);
  return std::string(buf) + "%";
}

}  // namespace detail

/// Renders the table, one block per target: algorithms as rows, problems as
/// columns, "mean(± std)" cells with the best (lowest mean) per column in
/// bold. CSV output is long-form: problem,algorithm,target,mean,std,censored.
inline std::string emit_results(const ResultsTable& table, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::kCsv) {
    out << "problem,algorithm,target,mean,std,censored\n";
    for (const auto& problem : table.problems) {
      for (const auto& algorithm : table.algorithms) {
        for (double target : table.targets) {
          const CellStats* c = table.cell(problem, algorithm, target);
          if (!c) continue;
          char buf[128];
          if (c->undefined) {
            out << problem << ',' << algorithm << ',' << target << ",,," << c->censored << '\n';
          } else {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", c->mean, c->stddev);
            out << problem << ',' << algorithm << ',' << target << ',' << buf << ','
                << c->censored << '\n';
          }
        }
      }
    }
    return out.str();
  }

  for (double target : table.targets) {
    out << "| " << detail::format_target_percent(target) << " Target |";
    for (const auto& problem : table.problems) out << " **" << problem << "** |";
    out << "\n|---|";
    for (std::size_t i = 0; i < table.problems.size(); ++i) out << "---|";
    out << '\n';

    // Best (lowest mean) defined cell per problem column gets bolded.
    std::map<std::string, double> best;
    for (const auto& problem : table.problems) {
      double b = std::numeric_limits<double>::infinity();
      for (const auto& algorithm : table.algorithms) {
        const CellStats* c = table.cell(problem, algorithm, target);
        if (c && !c->undefined && c->mean < b) b = c->mean;
      }
      best[problem] = b;
    }

    for (const auto& algorithm : table.algorithms) {
      out << "| " << algorithm << " |";
      for (const auto& problem : table.problems) {
        const CellStats* c = table.cell(problem, algorithm, target);
        if (!c) {
          out << " |";
          continue;
        }
        std::string cell = detail::format_cell(*c);
        if (!c->undefined && c->mean <= best[problem]) cell = "**" + cell + "**";
        out << ' ' << cell << " |";
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace gradopt
