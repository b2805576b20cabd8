#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qdisc/random_states.hpp"

namespace qdisc::optimize {

using Objective = std::function<double(std::span<const double>)>;

struct LocalOptions {
  int max_iterations = 2000;
  double tolerance = 1e-8;  // spread of simplex values at convergence
  double initial_step = 0.5;
  int polish_rounds = 4;  // simplex restarts from the incumbent
};

struct LocalResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

/// Derivative-free simplex descent with dimension-adaptive coefficients.
/// The incumbent value never increases across iterations.
LocalResult nelder_mead(const Objective& f, std::vector<double> x0, const LocalOptions& opts);

/// Golden-section minimization of a unimodal function on [lo, hi].
struct ScalarResult {
  double x;
  double value;
};
ScalarResult golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// Produces the starting point of restart `index` from that restart's own stream.
using StartSampler = std::function<std::vector<double>(int index, Rng& rng)>;

struct MultiStartOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
  int threads = 0;  // 0: hardware concurrency
  LocalOptions local;
};

struct MultiStartResult {
  std::vector<double> x;
  double value;
  bool converged;
  double spread;  // worst minus best restart value
  int best_restart;
};

/// Runs independent local searches and keeps the minimum, breaking ties by
/// the lower restart index. Results do not depend on the thread count.
MultiStartResult multistart(const Objective& f, const StartSampler& start, const MultiStartOptions& opts);

}  // namespace qdisc::optimize
