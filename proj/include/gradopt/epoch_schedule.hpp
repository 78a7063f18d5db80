#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gradopt/box.hpp"

namespace gradopt {

struct EpochEntry {
  double delta;            // smoothing radius for this epoch
  std::size_t iterations;  // inner steps; each costs 2 evaluations
};

struct EpochSchedule {
  std::vector<EpochEntry> entries;

  std::size_t total_iterations() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.iterations;
    return n;
  }
};

/// Splits floor(budget/2) iterations as evenly as possible over num_epochs
/// epochs (earlier epochs take the remainder, one extra each). The smoothing
/// radius starts at half the box diameter and halves exactly per epoch.
inline EpochSchedule make_epoch_schedule(const Box& box, std::size_t budget,
                                         std::size_t num_epochs) {
  if (num_epochs == 0) {
    throw std::invalid_argument("make_epoch_schedule: need at least one epoch");
  }
  if (budget < 2 * num_epochs) {
    throw std::invalid_argument(
        "make_epoch_schedule: budget must be >= 2 * num_epochs (one iteration per "
        "epoch costs 2 evaluations)");
  }
  double delta = box.diameter() / 2.0;
  if (delta <= 0.0) {
    throw std::invalid_argument("make_epoch_schedule: zero-diameter box");
  }
  std::size_t iterations = budget / 2;
  std::size_t base = iterations / num_epochs;
  std::size_t remainder = iterations % num_epochs;

  EpochSchedule schedule;
  schedule.entries.reserve(num_epochs);
  for (std::size_t m = 0; m < num_epochs; ++m) {
    schedule.entries.push_back({delta, base + (m < remainder ? 1 : 0)});
    delta /= 2.0;
  }
  return schedule;
}

}  // namespace gradopt
