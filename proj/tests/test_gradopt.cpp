#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <limits>

#include "gradopt/gradopt.hpp"
#include "gradopt/synthetic.hpp"
#include "support/oracles.hpp"

using gradopt::Box;
using gradopt::GradOptConfig;
using gradopt::InitPolicy;
using gradopt::Objective;
using gradopt::RunResult;
using gradopt::run_gradopt;

namespace {

bool bits_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

GradOptConfig config(std::size_t budget, std::size_t epochs, std::uint64_t seed) {
  GradOptConfig cfg;
  cfg.eval_budget = budget;
  cfg.num_epochs = epochs;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("budget is spent exactly, two evaluations per iteration") {
  Objective f = gradopt::make_synthetic("sphere", 3);
  RunResult r = run_gradopt(f, f.domain(), config(100, 5, 1));
  REQUIRE(r.evals_used == 100);
  REQUIRE(r.trace.size() == 100);
  REQUIRE(f.eval_count() == 100);

  Objective g = gradopt::make_synthetic("sphere", 3);
  RunResult r2 = run_gradopt(g, g.domain(), config(101, 5, 1));
  REQUIRE(r2.evals_used == 100);  // odd budgets leave one evaluation unused
}

TEST_CASE("same seed and config give bitwise-identical traces") {
  Objective f1 = gradopt::make_synthetic("sphere", 4);
  Objective f2 = gradopt::make_synthetic("sphere", 4);
  RunResult a = run_gradopt(f1, f1.domain(), config(300, 5, 77));
  RunResult b = run_gradopt(f2, f2.domain(), config(300, 5, 77));
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    REQUIRE(bits_equal(a.trace[i].point, b.trace[i].point));
    REQUIRE(a.trace[i].value == b.trace[i].value);
  }
  REQUIRE(bits_equal(a.best_point, b.best_point));
}

TEST_CASE("converges on a smooth 1-d convex function") {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(1, 0.5);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Objective f = gradopt::make_shifted_sphere(c, Box::cube(0.0, 1.0, 1));
    RunResult r = run_gradopt(f, f.domain(), config(200, 4, seed));
    REQUIRE_FALSE(r.failed);
    REQUIRE(r.best_value <= 1e-3);
  }
}

TEST_CASE("all post-projection iterates lie in the box") {
  Objective f = gradopt::make_synthetic("sphere", 5);
  RunResult r = run_gradopt(f, f.domain(), config(400, 4, 9));
  for (const auto& x : gradopt_iterates(r)) {
    REQUIRE(f.domain().contains(x));
  }
}

TEST_CASE("probes stay within a practical envelope of the box") {
  // Probe points x + delta*u are evaluated as drawn; for these seeds every
  // |u_i| is well under 6, so probes sit inside the box inflated by 6*delta_1.
  Objective f = gradopt::make_synthetic("sphere", 3);
  auto schedule = gradopt::make_epoch_schedule(f.domain(), 400, 4);
  double envelope = 6.0 * schedule.entries[0].delta;
  for (std::uint64_t seed : {4ull, 5ull}) {
    Objective g = gradopt::make_synthetic("sphere", 3);
    RunResult r = run_gradopt(g, g.domain(), config(400, 4, seed));
    for (const auto& e : r.trace) {
      REQUIRE(g.domain().contains(e.point, envelope));
    }
  }
}

// Multiplying the objective by an exactly-representable power of two scales
// every gradient estimate by the same factor and eta by its square; the
// SF-OGD ratio g/sqrt(eta) and hence every iterate is bit-identical.
TEST_CASE("iterates are invariant to power-of-two rescaling, bitwise") {
  for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
    Objective f = gradopt::make_synthetic("sphere", 2);
    Objective f4 = gradopt::make_synthetic("sphere", 2).scaled(4.0);
    RunResult a = run_gradopt(f, f.domain(), config(300, 5, seed));
    RunResult b = run_gradopt(f4, f4.domain(), config(300, 5, seed));
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      REQUIRE(bits_equal(a.trace[i].point, b.trace[i].point));
      REQUIRE(b.trace[i].value == 4.0 * a.trace[i].value);
    }
  }
}

TEST_CASE("iterates are invariant to general positive rescaling, to rounding") {
  for (std::uint64_t seed : {13ull, 14ull}) {
    Objective f = gradopt::make_synthetic("sphere", 2);
    Objective fc = gradopt::make_synthetic("sphere", 2).scaled(3.7);
    RunResult a = run_gradopt(f, f.domain(), config(300, 5, seed));
    RunResult b = run_gradopt(fc, fc.domain(), config(300, 5, seed));
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      double scale = std::max(1.0, a.trace[i].point.cwiseAbs().maxCoeff());
      REQUIRE((a.trace[i].point - b.trace[i].point).cwiseAbs().maxCoeff() <=
              1e-9 * scale);
    }
  }
}

TEST_CASE("iterates are invariant to constant shifts, to rounding") {
  for (std::uint64_t seed : {15ull, 16ull}) {
    Objective f = gradopt::make_synthetic("sphere", 2);
    Objective fk = gradopt::make_synthetic("sphere", 2).shifted(3.7);
    RunResult a = run_gradopt(f, f.domain(), config(300, 5, seed));
    RunResult b = run_gradopt(fk, fk.domain(), config(300, 5, seed));
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      REQUIRE((a.trace[i].point - b.trace[i].point).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

// The run is the documented composition of the building blocks: x_1 drawn
// first, one Gaussian direction per iteration, eta carried across epoch
// boundaries. Replaying that composition by hand must reproduce the run
// bitwise, with eta monotone throughout.
TEST_CASE("run matches a hand-rolled replay of the composition, eta persists") {
  const std::uint64_t seed = 21;
  Objective f = gradopt::make_synthetic("sphere", 3);
  RunResult run = run_gradopt(f, f.domain(), config(240, 4, seed));

  Objective g = gradopt::make_synthetic("sphere", 3);
  const Box& box = g.domain();
  auto schedule = gradopt::make_epoch_schedule(box, 240, 4);
  gradopt::RandomStream rng(seed);
  Eigen::VectorXd x = rng.uniform_in(box);
  gradopt::SfogdState state(box.dim());
  Eigen::VectorXd eta_prev = state.eta();

  std::size_t k = 0;
  for (const auto& epoch : schedule.entries) {
    for (std::size_t it = 0; it < epoch.iterations; ++it) {
      Eigen::VectorXd u = rng.normal_vector(box.dim());
      auto sample = gradopt::estimate_gradient(g, x, epoch.delta, u);
      REQUIRE(bits_equal(run.trace[2 * k].point, x));
      REQUIRE(run.trace[2 * k].value == sample.value_at_x);
      REQUIRE(bits_equal(run.trace[2 * k + 1].point, x + epoch.delta * u));
      x = gradopt::project_box(state.step(x, sample.gradient), box);
      for (Eigen::Index i = 0; i < box.dim(); ++i) {
        REQUIRE(state.eta()[i] >= eta_prev[i]);
      }
      eta_prev = state.eta();
      ++k;
    }
  }
  REQUIRE(2 * k == run.trace.size());
}

TEST_CASE("resetting eta per epoch changes the trajectory") {
  Objective f1 = gradopt::make_synthetic("sphere", 2);
  Objective f2 = gradopt::make_synthetic("sphere", 2);
  GradOptConfig keep = config(200, 4, 30);
  GradOptConfig reset = keep;
  reset.reset_eta_each_epoch = true;
  RunResult a = run_gradopt(f1, f1.domain(), keep);
  RunResult b = run_gradopt(f2, f2.domain(), reset);
  bool same = true;
  for (std::size_t i = 0; i < a.trace.size() && same; ++i) {
    same = bits_equal(a.trace[i].point, b.trace[i].point);
  }
  REQUIRE_FALSE(same);
}

TEST_CASE("init policies") {
  Box box = Box::cube(-1.0, 3.0, 2);
  SECTION("box center") {
    Objective f = gradopt::make_shifted_sphere(Eigen::VectorXd::Zero(2), box);
    GradOptConfig cfg = config(100, 2, 1);
    cfg.init = InitPolicy::kBoxCenter;
    RunResult r = run_gradopt(f, box, cfg);
    REQUIRE(r.trace[0].point == box.center());
  }
  SECTION("user point is projected into the box") {
    Objective f = gradopt::make_shifted_sphere(Eigen::VectorXd::Zero(2), box);
    GradOptConfig cfg = config(100, 2, 1);
    cfg.init = InitPolicy::kUserPoint;
    cfg.init_point = Eigen::VectorXd::Constant(2, 99.0);
    RunResult r = run_gradopt(f, box, cfg);
    REQUIRE(r.trace[0].point == box.upper());
  }
  SECTION("uniform init lands in the box and depends on the seed") {
    Objective f1 = gradopt::make_shifted_sphere(Eigen::VectorXd::Zero(2), box);
    Objective f2 = gradopt::make_shifted_sphere(Eigen::VectorXd::Zero(2), box);
    RunResult a = run_gradopt(f1, box, config(100, 2, 1));
    RunResult b = run_gradopt(f2, box, config(100, 2, 2));
    REQUIRE(box.contains(a.trace[0].point));
    REQUIRE_FALSE(bits_equal(a.trace[0].point, b.trace[0].point));
  }
}

TEST_CASE("evaluation failure aborts with a flagged partial result") {
  int calls = 0;
  Objective f("explodes", Box::cube(-1.0, 1.0, 2), [&calls](const Eigen::VectorXd&) {
    return ++calls >= 21 ? std::numeric_limits<double>::infinity() : 1.0;
  });
  RunResult r = run_gradopt(f, f.domain(), config(100, 2, 3));
  REQUIRE(r.failed);
  REQUIRE_FALSE(r.failure_reason.empty());
  REQUIRE(r.evals_used == 20);  // completed iterations only
  REQUIRE(r.trace.size() == 20);
}

TEST_CASE("invalid configs are rejected") {
  Objective f = gradopt::make_synthetic("sphere", 2);
  REQUIRE_THROWS_AS(run_gradopt(f, f.domain(), config(9, 5, 1)), std::invalid_argument);
  REQUIRE_THROWS_AS(run_gradopt(f, f.domain(), config(100, 0, 1)), std::invalid_argument);
  GradOptConfig cfg = config(100, 2, 1);
  cfg.init = InitPolicy::kUserPoint;
  cfg.init_point = Eigen::VectorXd::Zero(3);  // wrong dimension
  REQUIRE_THROWS_AS(run_gradopt(f, f.domain(), cfg), std::invalid_argument);
}

TEST_CASE("evals_used never exceeds the configured budget") {
  for (std::size_t budget = 2; budget <= 40; ++budget) {
    for (std::size_t epochs = 1; epochs <= std::min<std::size_t>(budget / 2, 6); ++epochs) {
      Objective f = gradopt::make_synthetic("sphere", 2);
      RunResult r = run_gradopt(f, f.domain(), config(budget, epochs, budget));
      REQUIRE(r.evals_used <= budget);
      REQUIRE(r.evals_used == 2 * (budget / 2));
      REQUIRE(r.evals_used == r.trace.size());
    }
  }
}

TEST_CASE("best value and point agree with the trace") {
  Objective f = gradopt::make_synthetic("sphere", 3);
  RunResult r = run_gradopt(f, f.domain(), config(200, 4, 55));
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& e : r.trace) lowest = std::min(lowest, e.value);
  REQUIRE(r.best_value == lowest);
  REQUIRE(r.best_point.squaredNorm() == r.best_value);
}
