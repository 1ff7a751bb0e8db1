#include "bcuav/service/server.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <deque>
#include <mutex>
#include <thread>
#include <variant>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "bcuav/experiment/simulation.hpp"
#include "bcuav/service/wire.hpp"

namespace bcuav::service {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

using Inbound = std::variant<bci::BciCommand, ControlMessage>;

struct Outgoing {
  std::shared_ptr<const json> telemetry;  // set for telemetry messages
  json message;                           // everything else
};

}  // namespace

class Session;

struct Server::Impl {
  Impl(const experiment::ExperimentConfig& cfg, const ServerOptions& opts) : config(cfg), options(opts) {}

  void do_accept();
  void attach(const std::shared_ptr<Session>& session);
  void detach(Session* session);
  void broadcast(const std::shared_ptr<const json>& payload);
  void broadcast_error(const std::string& text);
  void push_inbound(Inbound item) {
    std::lock_guard lock(inbound_mutex);
    inbound.push_back(std::move(item));
  }
  void sim_loop();

  experiment::ExperimentConfig config;
  ServerOptions options;

  net::io_context ioc;
  tcp::acceptor acceptor{ioc};
  std::thread io_thread;
  std::thread sim_thread;
  std::atomic<bool> running{false};
  std::atomic<std::uint64_t> steps{0};

  std::mutex inbound_mutex;
  std::deque<Inbound> inbound;

  // Touched only on the io thread.
  std::vector<std::shared_ptr<Session>> sessions;
  Session* authority = nullptr;
};

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, Server::Impl& server) : ws_(std::move(socket)), server_(server) {}

  void start() {
    http::async_read(ws_.next_layer(), buffer_, request_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_request(ec); });
  }

  void enqueue(Outgoing item) {
    if (closed_) return;
    if (item.telemetry) {
      std::size_t telemetry_count = 0;
      for (const auto& queued : queue_) telemetry_count += queued.telemetry ? 1 : 0;
      if (telemetry_count >= server_.options.telemetry_queue) {
        const auto oldest = std::find_if(queue_.begin(), queue_.end(), [](const Outgoing& o) { return o.telemetry; });
        queue_.erase(oldest);
        ++dropped_;
      }
    }
    queue_.push_back(std::move(item));
    do_write();
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    beast::error_code ec;
    ws_.next_layer().socket().shutdown(tcp::socket::shutdown_both, ec);
    ws_.next_layer().socket().close(ec);
  }

 private:
  void on_request(beast::error_code ec) {
    if (ec) return;
    if (request_.target() != "/ws" || !websocket::is_upgrade(request_)) {
      auto response = std::make_shared<http::response<http::string_body>>(http::status::not_found,
                                                                          request_.version());
      response->set(http::field::content_type, "text/plain");
      response->body() = "websocket endpoint is /ws\n";
      response->prepare_payload();
      http::async_write(ws_.next_layer(), *response,
                        [self = shared_from_this(), response](beast::error_code, std::size_t) { self->close(); });
      return;
    }
    ws_.text(true);
    ws_.async_accept(request_, [self = shared_from_this()](beast::error_code accept_ec) {
      if (accept_ec) return;
      self->server_.attach(self);
      self->do_read();
    });
  }

  void do_read() {
    ws_.async_read(read_buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->closed_ = true;
        self->server_.detach(self.get());
        return;
      }
      const std::string text = beast::buffers_to_string(self->read_buffer_.data());
      self->read_buffer_.consume(self->read_buffer_.size());
      self->handle(text);
      self->do_read();
    });
  }

  void handle(const std::string& text) {
    ClientMessage message;
    try {
      message = parse_client_message(text);
    } catch (const MalformedMessage& e) {
      enqueue({nullptr, make_error(std::string("malformed message: ") + e.what())});
      return;
    }
    const bool has_authority = server_.authority == this;
    if (const auto* cmd = std::get_if<CommandMessage>(&message)) {
      if (!has_authority) {
        enqueue({nullptr, make_error("no command authority")});
        return;
      }
      server_.push_inbound(cmd->command);
      enqueue({nullptr, make_ack(cmd->seq, "command queued")});
      return;
    }
    const auto& control = std::get<ControlMessage>(message);
    if (!has_authority) {
      enqueue({nullptr, make_error("no command authority")});
      return;
    }
    server_.push_inbound(control);
    enqueue({nullptr, make_ack(control.seq, "control queued")});
  }

  void do_write() {
    if (writing_ || closed_) return;
    std::string text;
    if (dropped_ > 0) {
      text = finalize(make_gap(dropped_), ++seq_);
      dropped_ = 0;
    } else if (!queue_.empty()) {
      Outgoing next = std::move(queue_.front());
      queue_.pop_front();
      text = finalize(next.telemetry ? make_telemetry(*next.telemetry) : std::move(next.message), ++seq_);
    } else {
      return;
    }
    writing_ = true;
    auto payload = std::make_shared<std::string>(std::move(text));
    ws_.async_write(net::buffer(*payload), [self = shared_from_this(), payload](beast::error_code ec, std::size_t) {
      self->writing_ = false;
      if (ec) {
        self->closed_ = true;
        self->server_.detach(self.get());
        return;
      }
      self->do_write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  Server::Impl& server_;
  beast::flat_buffer buffer_;
  beast::flat_buffer read_buffer_;
  http::request<http::string_body> request_;
  std::deque<Outgoing> queue_;
  std::uint64_t seq_ = 0;
  std::uint64_t dropped_ = 0;
  bool writing_ = false;
  bool closed_ = false;
};

void Server::Impl::do_accept() {
  acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<Session>(std::move(socket), *this)->start();
    do_accept();
  });
}

void Server::Impl::attach(const std::shared_ptr<Session>& session) {
  sessions.push_back(session);
  if (authority == nullptr) authority = session.get();
}

void Server::Impl::detach(Session* session) {
  std::erase_if(sessions, [session](const auto& s) { return s.get() == session; });
  if (authority == session) authority = sessions.empty() ? nullptr : sessions.front().get();
}

void Server::Impl::broadcast(const std::shared_ptr<const json>& payload) {
  for (const auto& session : sessions) session->enqueue({payload, {}});
}

void Server::Impl::broadcast_error(const std::string& text) {
  for (const auto& session : sessions) session->enqueue({nullptr, make_error(text)});
}

void Server::Impl::sim_loop() {
  experiment::Simulation sim(config, options.mode, options.seed, experiment::IntentSource::External);
  bool paused = false;
  const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(config.dt / options.time_scale));
  auto next = std::chrono::steady_clock::now();

  while (running.load()) {
    std::deque<Inbound> batch;
    {
      std::lock_guard lock(inbound_mutex);
      batch.swap(inbound);
    }
    for (auto& item : batch) {
      if (const auto* cmd = std::get_if<bci::BciCommand>(&item)) {
        sim.submit_intent(*cmd);
        continue;
      }
      const auto& control = std::get<ControlMessage>(item);
      switch (control.action) {
        case ControlAction::Start: paused = false; break;
        case ControlAction::Pause: paused = true; break;
        case ControlAction::Reset: sim.reset(); break;
        case ControlAction::SetMode: sim.set_mode(*control.mode); break;
      }
    }

    if (!paused) {
      try {
        TelemetrySnapshot snapshot;
        snapshot.row = sim.step();
        steps.fetch_add(1);
        if (sim.steps() % static_cast<std::size_t>(options.telemetry_decimation) == 0) {
          snapshot.progress = sim.progress();
          snapshot.run_mode = std::string(experiment::to_string(sim.mode()));
          snapshot.events = sim.take_events();
          auto payload = std::make_shared<const json>(telemetry_payload(snapshot));
          net::post(ioc, [this, payload] { broadcast(payload); });
        }
      } catch (const experiment::SimulationDiverged& e) {
        net::post(ioc, [this, text = std::string("simulation diverged, resetting: ") + e.what()] {
          broadcast_error(text);
        });
        sim.reset();
      }
    }

    next += period;
    const auto now = std::chrono::steady_clock::now();
    if (now - next > std::chrono::milliseconds(500)) next = now;  // do not build up a backlog
    std::this_thread::sleep_until(next);
  }
}

Server::Server(const experiment::ExperimentConfig& config, const ServerOptions& options)
    : impl_(std::make_unique<Impl>(config, options)) {
  config.validate();
  if (!(options.time_scale > 0.0)) throw experiment::ConfigInvalid("time scale must be positive");
  if (options.telemetry_decimation < 1) throw experiment::ConfigInvalid("telemetry decimation must be >= 1");
  if (options.telemetry_queue < 1) throw experiment::ConfigInvalid("telemetry queue must be >= 1");
}

Server::~Server() { stop(); }

std::uint16_t Server::start() {
  auto& s = *impl_;
  beast::error_code ec;
  const tcp::endpoint endpoint(net::ip::make_address("0.0.0.0"), s.options.port);
  s.acceptor.open(endpoint.protocol(), ec);
  if (!ec) s.acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) s.acceptor.bind(endpoint, ec);
  if (!ec) s.acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) throw PortInUse("cannot listen on port " + std::to_string(s.options.port) + ": " + ec.message());
  const auto port = s.acceptor.local_endpoint().port();

  s.running = true;
  s.do_accept();
  s.io_thread = std::thread([&s] { s.ioc.run(); });
  s.sim_thread = std::thread([&s] { s.sim_loop(); });
  return port;
}

void Server::stop() {
  auto& s = *impl_;
  if (!s.running.exchange(false)) return;
  if (s.sim_thread.joinable()) s.sim_thread.join();
  net::post(s.ioc, [&s] {
    beast::error_code ec;
    s.acceptor.close(ec);
    for (const auto& session : s.sessions) session->close();
    s.sessions.clear();
    s.authority = nullptr;
    s.ioc.stop();
  });
  if (s.io_thread.joinable()) s.io_thread.join();
}

void Server::run_until_interrupted() {
  net::io_context signals_ioc;
  net::signal_set signals(signals_ioc, SIGINT, SIGTERM);
  signals.async_wait([](beast::error_code, int) {});
  signals_ioc.run();
  stop();
}

std::uint64_t Server::steps() const { return impl_->steps.load(); }

}  // namespace bcuav::service
