#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "giant/scenario.hpp"

namespace giant {

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8765;        // 0 picks an ephemeral port
  std::optional<double> snapshot_rate;  // Hz; defaults to the scenario value
  double realtime_factor = 1.0;      // simulated seconds per wall-clock second
  bool manual_ticks = false;         // ticks only advance through Server::step()
  std::size_t outbox_capacity = 16;  // queued snapshots per session before dropping oldest
  double snapshot_delay = 0.0;       // artificial delivery delay, seconds
  std::optional<std::filesystem::path> record_path;
  std::optional<std::uint64_t> seed;
};

// Owns the world and a single simulation thread. Client sessions speak the
// JSON wire protocol over WebSocket; their messages are funnelled into one
// queue drained at tick boundaries.
class Server {
 public:
  Server(Scenario scenario, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  void start();
  void stop();
  // Blocks until stop() is called from another thread or a signal handler.
  void wait();

  unsigned short port() const;
  std::string config_hash() const;

  // Manual tick mode only.
  void step();
  std::size_t pending_inbound() const;
  std::size_t session_count() const;
  std::int64_t tick() const;

  struct Impl;  // opaque; defined in server.cpp

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace giant
