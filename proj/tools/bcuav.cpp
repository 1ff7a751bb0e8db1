// Command-line entry point: batch runs, parameter sweeps, live mode and
// rule-table dumps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bcuav/experiment/config.hpp"
#include "bcuav/experiment/simulation.hpp"
#include "bcuav/fuzzy/rule_table.hpp"
#include "bcuav/parallel/kernels.hpp"

#ifdef BCUAV_WITH_SERVICE
#include "bcuav/service/server.hpp"
#endif

namespace {

namespace fs = std::filesystem;
using bcuav::experiment::ConfigInvalid;
using bcuav::experiment::ExperimentConfig;
using bcuav::experiment::RunMode;

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 1;
constexpr int kExitDiverged = 2;

ExperimentConfig load(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : bcuav::experiment::load_config(path);
}

std::optional<RunMode> mode_from(const std::string& text) { return bcuav::experiment::parse_run_mode(text); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& mode_text,
            const std::string& out_dir) {
  ExperimentConfig config = load(config_path);
  RunMode mode = config.mode;
  if (!mode_text.empty()) {
    const auto parsed = mode_from(mode_text);
    if (!parsed) throw ConfigInvalid("--mode must be brain|auto|shared");
    mode = *parsed;
  }
  const std::uint64_t run_seed = seed.value_or(config.seed);

  const auto result = bcuav::experiment::run_experiment(config, mode, run_seed);
  fs::create_directories(out_dir);
  {
    std::ofstream csv(fs::path(out_dir) / "telemetry.csv", std::ios::binary);
    bcuav::experiment::write_telemetry_csv(csv, result.rows);
  }
  write_text(fs::path(out_dir) / "metrics.json", bcuav::experiment::metrics_json(result.metrics) + "\n");
  std::cout << bcuav::experiment::metrics_json(result.metrics) << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& accuracies,
              const std::vector<double>& intervals, const std::vector<std::string>& modes, int seeds,
              std::uint64_t first_seed, const std::string& out_dir) {
  const ExperimentConfig config = load(config_path);
  if (seeds < 1) throw ConfigInvalid("--seeds must be >= 1");
  std::vector<bcuav::parallel::BatchJob> jobs;
  for (const double accuracy : accuracies) {
    for (const double interval : intervals) {
      for (const auto& mode_text : modes) {
        const auto mode = mode_from(mode_text);
        if (!mode) throw ConfigInvalid("--modes entries must be brain|auto|shared");
        for (int k = 0; k < seeds; ++k) {
          jobs.push_back({*mode, first_seed + static_cast<std::uint64_t>(k), accuracy, interval,
                          config.channel.latency});
        }
      }
    }
  }
  const auto outcomes = bcuav::parallel::run_batch(config, jobs);

  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "sweep.csv", std::ios::binary);
  csv << "accuracy,recognition_interval,mode,seed,diverged,rms_cross_track,max_cross_track,rms_altitude_error,"
         "lap_completion,mode_switches,mean_alpha\n";
  bool any_diverged = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& j = jobs[i];
    const auto& m = outcomes[i].metrics;
    any_diverged = any_diverged || outcomes[i].diverged;
    csv << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", j.accuracy, j.recognition_interval,
                       bcuav::experiment::to_string(j.mode), j.seed, outcomes[i].diverged ? 1 : 0, m.rms_cross_track,
                       m.max_cross_track, m.rms_altitude_error, m.lap_completion, m.mode_switches, m.mean_alpha);
  }

  // Medians per (accuracy, interval, mode) cell.
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (std::size_t start = 0; start < jobs.size(); start += static_cast<std::size_t>(seeds)) {
    std::vector<double> rms, completion;
    for (std::size_t k = start; k < start + static_cast<std::size_t>(seeds); ++k) {
      if (outcomes[k].diverged) continue;
      rms.push_back(outcomes[k].metrics.rms_cross_track);
      completion.push_back(outcomes[k].metrics.lap_completion);
    }
    nlohmann::ordered_json cell;
    cell["accuracy"] = jobs[start].accuracy;
    cell["recognition_interval"] = jobs[start].recognition_interval;
    cell["mode"] = bcuav::experiment::to_string(jobs[start].mode);
    cell["runs"] = rms.size();
    if (!rms.empty()) {
      cell["median_rms_cross_track"] = bcuav::parallel::median(rms);
      cell["median_lap_completion"] = bcuav::parallel::median(completion);
    }
    summary.push_back(cell);
  }
  write_text(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return any_diverged ? kExitDiverged : kExitOk;
}

int cmd_dump_tables(const std::string& config_path) {
  const auto& rules = config_path.empty() ? bcuav::fuzzy::RuleSet::builtin() : load(config_path).rules;
  std::cout << bcuav::fuzzy::dump_tables(rules);
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  load(config_path);
  std::cout << "config ok\n";
  return kExitOk;
}

#ifdef BCUAV_WITH_SERVICE
int cmd_serve(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& mode_text,
              int port, std::optional<double> time_scale) {
  const ExperimentConfig config = load(config_path);
  bcuav::service::ServerOptions options;
  options.port = static_cast<std::uint16_t>(port);
  options.time_scale = time_scale.value_or(config.service.time_scale);
  options.telemetry_decimation = config.service.telemetry_decimation;
  options.telemetry_queue = config.service.telemetry_queue;
  options.seed = seed.value_or(config.seed);
  options.mode = config.mode;
  if (!mode_text.empty()) {
    const auto parsed = mode_from(mode_text);
    if (!parsed) throw ConfigInvalid("--mode must be brain|auto|shared");
    options.mode = *parsed;
  }
  bcuav::service::Server server(config, options);
  const auto bound = server.start();
  std::cerr << "serving ws://0.0.0.0:" << bound << "/ws (Ctrl-C to stop)\n";
  server.run_until_interrupted();
  return kExitOk;
}
#endif

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shared-control quadrotor simulator with a fuzzy PID autopilot and a simulated BCI channel"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string out_dir = "out";

  auto* run = app.add_subcommand("run", "Run one closed-loop experiment, write telemetry.csv and metrics.json");
  run->add_option("--config", config_path, "Experiment config (JSON)");
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--mode", mode, "brain|auto|shared");
  run->add_option("--out", out_dir, "Output directory");

  std::vector<double> accuracies = {0.5, 0.7, 0.9};
  std::vector<double> intervals = {0.5, 1.0, 2.0};
  std::vector<std::string> modes = {"brain", "shared"};
  int seeds = 10;
  std::uint64_t first_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "Grid over channel accuracy and recognition interval");
  sweep->add_option("--config", config_path, "Experiment config (JSON)");
  sweep->add_option("--accuracy", accuracies, "Channel accuracies")->delimiter(',');
  sweep->add_option("--interval", intervals, "Recognition intervals (s)")->delimiter(',');
  sweep->add_option("--modes", modes, "Modes to run")->delimiter(',');
  sweep->add_option("--seeds", seeds, "Seeds per grid cell");
  sweep->add_option("--seed", first_seed, "First seed");
  sweep->add_option("--out", out_dir, "Output directory");

  int port = 8765;
  std::optional<double> time_scale;
  auto* serve = app.add_subcommand("serve", "Live mode: real-time simulation with a WebSocket endpoint at /ws");
  serve->add_option("--config", config_path, "Experiment config (JSON)");
  serve->add_option("--seed", seed, "Random seed");
  serve->add_option("--mode", mode, "brain|auto|shared");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--time-scale", time_scale, "Simulated seconds per wall-clock second");

  auto* dump = app.add_subcommand("dump-tables", "Print the Kp/Ki/Kd rule tables as 7x7 label grids");
  dump->add_option("--config", config_path, "Take the tables from this config");

  auto* validate = app.add_subcommand("validate-config", "Check a config file and exit");
  validate->add_option("--config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (*run) return cmd_run(config_path, seed, mode, out_dir);
    if (*sweep) return cmd_sweep(config_path, accuracies, intervals, modes, seeds, first_seed, out_dir);
    if (*dump) return cmd_dump_tables(config_path);
    if (*validate) return cmd_validate(config_path);
    if (*serve) {
#ifdef BCUAV_WITH_SERVICE
      return cmd_serve(config_path, seed, mode, port, time_scale);
#else
      std::cerr << "error: built without the live service\n";
      return kExitInvalidConfig;
#endif
    }
  } catch (const ConfigInvalid& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const bcuav::experiment::SimulationDiverged& e) {
    std::cerr << "simulation diverged: " << e.what() << '\n';
    return kExitDiverged;
#ifdef BCUAV_WITH_SERVICE
  } catch (const bcuav::service::PortInUse& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
#endif
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return kExitOk;
}
