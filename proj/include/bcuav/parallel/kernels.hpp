#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bcuav/experiment/config.hpp"
#include "bcuav/experiment/metrics.hpp"
#include "bcuav/fuzzy/inference.hpp"

// Data-parallel kernels. Each has a `_serial` twin with the same contract,
// kept as the reference the OpenMP version is tested and benchmarked against.

namespace bcuav::parallel {

/// One closed-loop run of a batch: mode, seed and channel parameters.
struct BatchJob {
  experiment::RunMode mode = experiment::RunMode::Shared;
  std::uint64_t seed = 1;
  double accuracy = 0.7;
  double recognition_interval = 1.0;
  double latency = 0.3;
};

struct BatchOutcome {
  experiment::RunMetrics metrics;
  bool diverged = false;
  std::string error;  // set when diverged
};

/// Runs every job; outcome i belongs to job i. Runs share no mutable state.
std::vector<BatchOutcome> run_batch(const experiment::ExperimentConfig& base, std::span<const BatchJob> jobs);
std::vector<BatchOutcome> run_batch_serial(const experiment::ExperimentConfig& base, std::span<const BatchJob> jobs);

/// infer() sampled on an n x n grid spanning the error and error-rate
/// universes; values[i * n + j] is at (error_i, rate_j).
struct GainSurface {
  std::size_t n = 0;
  std::vector<double> values;
};

GainSurface gain_surface(const fuzzy::MamdaniEngine& engine, const fuzzy::RuleTable& table, std::size_t n);
GainSurface gain_surface_serial(const fuzzy::MamdaniEngine& engine, const fuzzy::RuleTable& table, std::size_t n);

/// Median of a non-empty sample (mean of the two middle values for even sizes).
double median(std::vector<double> values);

}  // namespace bcuav::parallel
