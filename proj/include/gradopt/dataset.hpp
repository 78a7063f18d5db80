#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gradopt/random.hpp"

namespace gradopt {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Regression dataset after ingestion: standardized features and targets,
/// no non-finite entries. Immutable once built.
struct Dataset {
  Eigen::MatrixXd features;  // n x p, z-scored per column
  Eigen::VectorXd targets;   // length n, z-scored
  std::string name;
  std::size_t rows_parsed = 0;   // data rows seen in the file
  std::size_t rows_dropped = 0;  // rows lost to missing/non-numeric cells
  std::size_t columns_dropped = 0;  // constant feature columns removed

  Eigen::Index n() const { return targets.size(); }
  Eigen::Index p() const { return features.cols(); }
};

struct LoadOptions {
  // Target column by 0-based index (negative counts from the end, -1 = last)
  // or by header name.
  std::variant<int, std::string> target = -1;
  std::size_t max_rows = 200;  // seeded subsample cap; 0 disables
  std::uint64_t seed = 0;      // subsample (and downstream fold) seed
  std::string name;            // defaults to the file stem
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

inline std::optional<double> parse_cell(const std::string& cell) {
  if (cell.empty() || cell == "?") return std::nullopt;  // missing markers
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + cell.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Standardize one column in place with the n-1 (sample) variance convention;
// returns false for constant columns.
inline bool zscore(Eigen::Ref<Eigen::VectorXd> col) {
  const double n = static_cast<double>(col.size());
  double mean = col.mean();
  double var = (col.array() - mean).square().sum() / (n - 1.0);
  if (var <= 0.0) return false;
  col = (col.array() - mean) / std::sqrt(var);
  return true;
}

}  // namespace detail

/// Loads a comma-separated file into a standardized Dataset.
///
/// A header row is auto-detected (any non-numeric first row); '?' and empty
/// cells are missing values; rows with missing or non-numeric cells are
/// dropped whole. If more than max_rows rows survive, a seeded uniform
/// subsample (original row order preserved) is kept. Features and targets
/// are then z-scored; constant feature columns are removed. Fewer than 20
/// usable rows is an ingestion error.
inline Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t parsed = 0, dropped = 0, width = 0;
  bool first = true;

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> cells = detail::split_csv_line(line);
    if (first) {
      first = false;
      width = cells.size();
      bool all_numeric = true;
      for (const auto& c : cells) {
        if (!detail::parse_cell(c)) all_numeric = false;
      }
      if (!all_numeric) {
        header = cells;
        continue;  // header row, not data
      }
    }
    ++parsed;
    if (cells.size() != width) {
      ++dropped;
      continue;
    }
    std::vector<double> row;
    row.reserve(width);
    bool ok = true;
    for (const auto& c : cells) {
      auto v = detail::parse_cell(c);
      if (!v) {
        ok = false;
        break;
      }
      row.push_back(*v);
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (width < 2) throw IngestError("'" + path.string() + "': need a target and at least one feature column");

  // Resolve the target column.
  std::size_t target_col;
  if (std::holds_alternative<std::string>(opts.target)) {
    const std::string& want = std::get<std::string>(opts.target);
    auto it = std::find(header.begin(), header.end(), want);
    if (it == header.end()) {
      throw IngestError("'" + path.string() + "': no column named '" + want + "'");
    }
    target_col = static_cast<std::size_t>(it - header.begin());
  } else {
    int t = std::get<int>(opts.target);
    long resolved = t >= 0 ? t : static_cast<long>(width) + t;
    if (resolved < 0 || resolved >= static_cast<long>(width)) {
      throw IngestError("'" + path.string() + "': target column index out of range");
    }
    target_col = static_cast<std::size_t>(resolved);
  }

  // Seeded subsample above the cap, keeping file order.
  if (opts.max_rows > 0 && rows.size() > opts.max_rows) {
    std::vector<std::size_t> perm(rows.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    RandomStream rng(opts.seed);
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
      std::size_t j = rng.uniform_index(i + 1);
      std::swap(perm[i], perm[j]);
    }
    perm.resize(opts.max_rows);
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<double>> kept;
    kept.reserve(opts.max_rows);
    for (std::size_t i : perm) kept.push_back(std::move(rows[i]));
    rows = std::move(kept);
  }

  if (rows.size() < 20) {
    throw IngestError("'" + path.string() + "': only " + std::to_string(rows.size()) +
                      " usable rows after cleaning; need at least 20 for 10-fold CV");
  }

  const std::size_t n = rows.size();
  Eigen::MatrixXd feats(n, width - 1);
  Eigen::VectorXd targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == target_col) {
        targets[static_cast<Eigen::Index>(i)] = rows[i][j];
      } else {
        feats(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k++)) = rows[i][j];
      }
    }
  }

  Dataset ds;
  ds.name = opts.name.empty() ? path.stem().string() : opts.name;
  ds.rows_parsed = parsed;
  ds.rows_dropped = dropped;

  if (!detail::zscore(targets)) {
    throw IngestError("'" + path.string() + "': constant target column");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < feats.cols(); ++j) {
    if (detail::zscore(feats.col(j))) keep.push_back(j);
  }
  if (keep.empty()) throw IngestError("'" + path.string() + "': all feature columns constant");
  ds.columns_dropped = static_cast<std::size_t>(feats.cols()) - keep.size();
  ds.features.resize(feats.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    ds.features.col(static_cast<Eigen::Index>(j)) = feats.col(keep[j]);
  }
  ds.targets = std::move(targets);
  return ds;
}

/// Dataset manifest: one `key = value` per line, '#' comments. Keys: path
/// (required, relative to the manifest), target (index or name), max_rows,
/// seed, name.
struct DatasetManifest {
  std::filesystem::path csv_path;
  LoadOptions options;
};

inline DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open manifest '" + path.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw IngestError("manifest '" + path.string() + "': expected key = value, got '" + t + "'");
    }
    kv[detail::trim(t.substr(0, eq))] = detail::trim(t.substr(eq + 1));
  }
  if (!kv.count("path")) throw IngestError("manifest '" + path.string() + "': missing 'path'");

  DatasetManifest m;
  m.csv_path = path.parent_path() / kv.at("path");
  if (kv.count("target")) {
    const std::string& t = kv.at("target");
    if (auto v = detail::parse_cell(t); v && *v == std::floor(*v)) {
      m.options.target = static_cast<int>(*v);
    } else {
      m.options.target = t;
    }
  }
  if (kv.count("max_rows")) m.options.max_rows = std::stoull(kv.at("max_rows"));
  if (kv.count("seed")) m.options.seed = std::stoull(kv.at("seed"));
  m.options.name = kv.count("name") ? kv.at("name") : path.stem().string();
  return m;
}

inline Dataset load_dataset(const DatasetManifest& manifest) {
  return load_dataset(manifest.csv_path, manifest.options);
}

}  // namespace gradopt
