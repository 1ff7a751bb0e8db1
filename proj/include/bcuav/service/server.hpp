#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>

#include "bcuav/experiment/config.hpp"

namespace bcuav::service {

class PortInUse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServerOptions {
  std::uint16_t port = 8765;  // 0 picks an ephemeral port
  double time_scale = 1.0;    // simulated seconds per wall-clock second
  int telemetry_decimation = 5;
  std::size_t telemetry_queue = 64;  // per client, oldest telemetry dropped beyond this
  experiment::RunMode mode = experiment::RunMode::Shared;
  std::uint64_t seed = 1;
};

/// Live mode: one real-time simulation loop plus a WebSocket endpoint at /ws.
///
/// The loop and the network thread only exchange data through two ordered
/// queues (commands in, telemetry out). The first connected client holds
/// command authority; later clients receive telemetry only until authority
/// passes to them.
class Server {
 public:
  Server(const experiment::ExperimentConfig& config, const ServerOptions& options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts both threads. Returns the bound port. Throws PortInUse.
  std::uint16_t start();

  /// Stops both threads and closes all connections. Idempotent.
  void stop();

  /// Blocks until SIGINT or SIGTERM, then stops.
  void run_until_interrupted();

  /// Simulation steps taken so far.
  std::uint64_t steps() const;

  struct Impl;  // named by the session type in server.cpp

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace bcuav::service
