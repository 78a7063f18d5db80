#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "gradopt/folds.hpp"

using gradopt::FoldSplit;
using gradopt::make_fold_split;

TEST_CASE("fold sizes differ by at most one and cover everything") {
  for (std::size_t n : {20u, 57u, 100u, 203u}) {
    FoldSplit split = make_fold_split(n, 10, 42);
    REQUIRE(split.assignments.size() == n);
    std::vector<std::size_t> sizes(10, 0);
    for (int a : split.assignments) {
      REQUIRE(a >= 0);
      REQUIRE(a < 10);
      ++sizes[static_cast<std::size_t>(a)];
    }
    auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    REQUIRE(*hi - *lo <= 1);
  }
}

TEST_CASE("fold split is deterministic in the seed") {
  FoldSplit a = make_fold_split(100, 10, 7);
  FoldSplit b = make_fold_split(100, 10, 7);
  FoldSplit c = make_fold_split(100, 10, 8);
  REQUIRE(a.assignments == b.assignments);
  REQUIRE(a.assignments != c.assignments);
}

TEST_CASE("fold and complement indices partition the samples") {
  FoldSplit split = make_fold_split(45, 10, 3);
  for (int fold = 0; fold < 10; ++fold) {
    auto in = split.fold_indices(fold);
    auto out = split.complement_indices(fold);
    REQUIRE(in.size() + out.size() == 45);
    std::set<std::size_t> all(in.begin(), in.end());
    all.insert(out.begin(), out.end());
    REQUIRE(all.size() == 45);
  }
}

TEST_CASE("fold split rejects undersized inputs") {
  REQUIRE_THROWS_AS(make_fold_split(19, 10, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(make_fold_split(100, 1, 1), std::invalid_argument);
}
