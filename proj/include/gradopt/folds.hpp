#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gradopt/random.hpp"

namespace gradopt {

/// Assignment of samples to cross-validation folds. Fold sizes differ by at
/// most one; deterministic given (n, num_folds, seed).
struct FoldSplit {
  std::vector<int> assignments;  // fold index in [0, num_folds) per sample
  int num_folds = 0;

  std::vector<std::size_t> fold_indices(int fold) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
      if (assignments[i] == fold) idx.push_back(i);
    }
    return idx;
  }

  std::vector<std::size_t> complement_indices(int fold) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
      if (assignments[i] != fold) idx.push_back(i);
    }
    return idx;
  }
};

/// Uniform random permutation (Fisher-Yates on our own stream, so the split
/// is identical everywhere) chopped into num_folds near-equal blocks.
inline FoldSplit make_fold_split(std::size_t n, int num_folds, std::uint64_t seed) {
  if (num_folds < 2) throw std::invalid_argument("make_fold_split: need at least 2 folds");
  if (n < 2 * static_cast<std::size_t>(num_folds)) {
    throw std::invalid_argument("make_fold_split: need at least 2 samples per fold");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RandomStream rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = rng.uniform_index(i + 1);
    std::swap(perm[i], perm[j]);
  }

  FoldSplit split;
  split.num_folds = num_folds;
  split.assignments.assign(n, 0);
  std::size_t base = n / static_cast<std::size_t>(num_folds);
  std::size_t remainder = n % static_cast<std::size_t>(num_folds);
  std::size_t pos = 0;
  for (int fold = 0; fold < num_folds; ++fold) {
    std::size_t size = base + (static_cast<std::size_t>(fold) < remainder ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k) split.assignments[perm[pos++]] = fold;
  }
  return split;
}

}  // namespace gradopt
