#include "bcuav/parallel/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "bcuav/experiment/simulation.hpp"

namespace bcuav::parallel {

namespace {

BatchOutcome run_job(const experiment::ExperimentConfig& base, const BatchJob& job) {
  experiment::ExperimentConfig config = base;
  config.channel.accuracy = job.accuracy;
  config.channel.recognition_interval = job.recognition_interval;
  config.channel.latency = job.latency;
  BatchOutcome out;
  try {
    out.metrics = experiment::run_experiment(config, job.mode, job.seed).metrics;
  } catch (const experiment::SimulationDiverged& e) {
    out.diverged = true;
    out.error = e.what();
  }
  return out;
}

double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
  return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

std::vector<BatchOutcome> run_batch(const experiment::ExperimentConfig& base, std::span<const BatchJob> jobs) {
  base.validate();
  std::vector<BatchOutcome> outcomes(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    outcomes[static_cast<std::size_t>(i)] = run_job(base, jobs[static_cast<std::size_t>(i)]);
  }
  return outcomes;
}

std::vector<BatchOutcome> run_batch_serial(const experiment::ExperimentConfig& base,
                                           std::span<const BatchJob> jobs) {
  base.validate();
  std::vector<BatchOutcome> outcomes;
  outcomes.reserve(jobs.size());
  for (const auto& job : jobs) outcomes.push_back(run_job(base, job));
  return outcomes;
}

GainSurface gain_surface(const fuzzy::MamdaniEngine& engine, const fuzzy::RuleTable& table, std::size_t n) {
  GainSurface surface{n, std::vector<double>(n * n)};
  const auto& pe = engine.error_partition();
  const auto& pr = engine.error_rate_partition();
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const double e = grid_point(pe.lo(), pe.hi(), static_cast<std::size_t>(i), n);
    for (std::size_t j = 0; j < n; ++j) {
      surface.values[static_cast<std::size_t>(i) * n + j] = engine.infer(e, grid_point(pr.lo(), pr.hi(), j, n), table);
    }
  }
  return surface;
}

GainSurface gain_surface_serial(const fuzzy::MamdaniEngine& engine, const fuzzy::RuleTable& table, std::size_t n) {
  GainSurface surface{n, std::vector<double>(n * n)};
  const auto& pe = engine.error_partition();
  const auto& pr = engine.error_rate_partition();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      surface.values[i * n + j] =
          engine.infer(grid_point(pe.lo(), pe.hi(), i, n), grid_point(pr.lo(), pr.hi(), j, n), table);
    }
  }
  return surface;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace bcuav::parallel
