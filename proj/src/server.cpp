#include "giant/server.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "giant/codec.hpp"
#include "giant/hash.hpp"
#include "giant/protocol.hpp"
#include "giant/record.hpp"

namespace giant {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

struct Inbound {
  int session = 0;
  std::int64_t index = 0;
  WireMessage message;
};

class WsSession;

}  // namespace

struct Server::Impl {
  Impl(Scenario s, ServerOptions o)
      : scenario(std::move(s)),
        options(std::move(o)),
        seed(options.seed.value_or(scenario.world.seed)),
        world(build_world(scenario, seed)),
        hash(giant::config_hash(scenario, seed)),
        acceptor(ioc) {}

  void accept_loop();
  void sim_loop();
  void tick_once();
  void broadcast(const std::string& text, std::int64_t tick);
  void send_to(int session, std::string text);
  void register_session(int id, const std::shared_ptr<WsSession>& s);
  void unregister_session(int id);
  void push_inbound(Inbound in);
  std::string latest_snapshot_text() const;

  Scenario scenario;
  ServerOptions options;
  std::uint64_t seed;
  World world;  // owned by the simulation thread after start()
  std::string hash;

  net::io_context ioc;
  tcp::acceptor acceptor;
  std::thread net_thread;
  std::thread sim_thread;
  std::atomic<bool> running{false};
  std::atomic<std::int64_t> current_tick{0};
  int next_session_id = 1;

  mutable std::mutex sessions_mu;
  std::map<int, std::weak_ptr<WsSession>> sessions;

  mutable std::mutex inbound_mu;
  std::deque<Inbound> inbound;

  std::mutex step_mu;
  std::condition_variable step_cv;
  int step_requests = 0;
  int steps_done = 0;
  std::condition_variable step_done_cv;

  mutable std::mutex snapshot_mu;
  std::string latest_snapshot;
  std::int64_t latest_tick = -1;

  // Simulation-thread state.
  std::map<int, SessionState> session_states;
  std::optional<MissionState> mission;
  std::ofstream record;
  std::int64_t decimation = 1;

  std::mutex stop_mu;
  std::condition_variable stop_cv;
  bool stopped = false;
};

namespace {

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, Server::Impl* server, int id)
      : ws_(std::move(socket)), server_(server), id_(id) {}

  void run() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

  // All calls below happen on the io_context thread.
  void enqueue(std::string text, bool snapshot, std::int64_t tick) {
    if (closed_) return;
    if (snapshot) {
      if (tick <= last_snapshot_tick_) return;
      last_snapshot_tick_ = tick;
      std::size_t queued = 0;
      for (const auto& m : outbox_) queued += m.snapshot ? 1 : 0;
      if (queued >= server_->options.outbox_capacity) {
        // Drop the oldest snapshot that is not in flight.
        for (auto it = outbox_.begin() + (writing_ ? 1 : 0); it != outbox_.end(); ++it) {
          if (it->snapshot) {
            outbox_.erase(it);
            break;
          }
        }
      }
    }
    outbox_.push_back({std::move(text), snapshot});
    if (!writing_) do_write();
  }

  void close_after_flush() {
    close_pending_ = true;
    if (!writing_ && outbox_.empty()) do_close();
  }

 private:
  struct Outgoing {
    std::string text;
    bool snapshot;
  };

  void on_accept(beast::error_code ec) {
    if (ec) return;
    server_->register_session(id_, shared_from_this());
    enqueue(encode_message(wire::Hello{kProtocolVersion, server_->hash}), false, 0);
    std::int64_t tick = -1;
    std::string snap;
    {
      std::lock_guard lock(server_->snapshot_mu);
      tick = server_->latest_tick;
      snap = server_->latest_snapshot;
    }
    if (tick >= 0) enqueue(std::move(snap), true, tick);
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      server_->unregister_session(id_);
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    handle(text);
    if (!closed_ && !close_pending_) do_read();
  }

  void handle(const std::string& text) {
    WireMessage msg;
    try {
      msg = decode_message(text);
    } catch (const std::exception& e) {
      enqueue(encode_message(wire::ErrorMsg{"malformed", e.what()}), false, 0);
      return;
    }
    if (const auto* hello = std::get_if<wire::Hello>(&msg)) {
      if (hello->version != kProtocolVersion) {
        enqueue(encode_message(wire::ErrorMsg{"version_mismatch",
                                              "server speaks protocol version " +
                                                  std::to_string(kProtocolVersion)}),
                false, 0);
        close_after_flush();
      }
      return;
    }
    if (std::holds_alternative<wire::EventMsg>(msg) || std::holds_alternative<wire::CommandMsg>(msg)) {
      server_->push_inbound({id_, next_index_++, std::move(msg)});
      return;
    }
    enqueue(encode_message(wire::ErrorMsg{"unexpected", "clients may send hello, event or command"}), false,
            0);
  }

  void do_write() {
    writing_ = true;
    ws_.text(true);
    ws_.async_write(net::buffer(outbox_.front().text),
                    beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    writing_ = false;
    if (ec) {
      closed_ = true;
      server_->unregister_session(id_);
      return;
    }
    outbox_.pop_front();
    if (!outbox_.empty()) {
      do_write();
    } else if (close_pending_) {
      do_close();
    }
  }

  void do_close() {
    closed_ = true;
    server_->unregister_session(id_);
    ws_.async_close(websocket::close_code::normal, [self = shared_from_this()](beast::error_code) {});
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  Server::Impl* server_;
  int id_;
  std::int64_t next_index_ = 0;
  std::int64_t last_snapshot_tick_ = -1;
  std::deque<Outgoing> outbox_;
  bool writing_ = false;
  bool closed_ = false;
  bool close_pending_ = false;
};

}  // namespace

void Server::Impl::register_session(int id, const std::shared_ptr<WsSession>& s) {
  std::lock_guard lock(sessions_mu);
  sessions[id] = s;
}

void Server::Impl::unregister_session(int id) {
  std::lock_guard lock(sessions_mu);
  sessions.erase(id);
}

void Server::Impl::push_inbound(Inbound in) {
  std::lock_guard lock(inbound_mu);
  inbound.push_back(std::move(in));
}

void Server::Impl::accept_loop() {
  acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
    if (!running) return;
    if (!ec) std::make_shared<WsSession>(std::move(socket), this, next_session_id++)->run();
    accept_loop();
  });
}

void Server::Impl::send_to(int session, std::string text) {
  net::post(ioc, [this, session, text = std::move(text)]() mutable {
    std::shared_ptr<WsSession> s;
    {
      std::lock_guard lock(sessions_mu);
      auto it = sessions.find(session);
      if (it != sessions.end()) s = it->second.lock();
    }
    if (s) s->enqueue(std::move(text), false, 0);
  });
}

void Server::Impl::broadcast(const std::string& text, std::int64_t tick) {
  auto fan_out = [this, text, tick]() {
    std::vector<std::shared_ptr<WsSession>> targets;
    {
      std::lock_guard lock(sessions_mu);
      for (auto& [id, w] : sessions) {
        if (auto s = w.lock()) targets.push_back(std::move(s));
      }
    }
    for (auto& s : targets) s->enqueue(text, true, tick);
  };
  if (options.snapshot_delay > 0.0) {
    auto timer = std::make_shared<net::steady_timer>(ioc);
    timer->expires_after(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(options.snapshot_delay)));
    timer->async_wait([timer, fan_out](beast::error_code ec) {
      if (!ec) fan_out();
    });
  } else {
    net::post(ioc, fan_out);
  }
}

void Server::Impl::tick_once() {
  std::deque<Inbound> batch;
  {
    std::lock_guard lock(inbound_mu);
    batch.swap(inbound);
  }
  Snapshot before = world.snapshot();
  std::vector<Command> cmds;
  std::vector<std::size_t> owner;  // index into batch
  for (std::size_t k = 0; k < batch.size(); ++k) {
    SessionState& ss = session_states[batch[k].session];
    ss.rule = scenario.counting;
    if (const auto* ev = std::get_if<wire::EventMsg>(&batch[k].message)) {
      auto outcome = apply_event(ss, ev->event, before);
      for (auto& c : outcome.commands) {
        cmds.push_back(std::move(c));
        owner.push_back(k);
      }
    } else if (const auto* cm = std::get_if<wire::CommandMsg>(&batch[k].message)) {
      cmds.push_back(cm->command);
      owner.push_back(k);
    }
  }

  const std::int64_t tick = world.tick();
  const auto results = world.step(cmds);
  std::vector<wire::AckMsg> acks(batch.size());
  for (std::size_t k = 0; k < batch.size(); ++k) acks[k].index = batch[k].index;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const int sid = batch[owner[i]].session;
    SessionState& ss = session_states[sid];
    record_command(ss, tick, cmds[i], results[i], sid);
    if (record.is_open()) record << json(ss.command_log.back()).dump() << '\n';
    if (!results[i].accepted) {
      acks[owner[i]].accepted = false;
      if (acks[owner[i]].error.empty()) acks[owner[i]].error = results[i].error;
    }
  }
  for (std::size_t k = 0; k < batch.size(); ++k) {
    acks[k].interaction_count = session_states[batch[k].session].interaction_count;
    send_to(batch[k].session, encode_message(acks[k]));
  }

  Snapshot snap = world.snapshot();
  current_tick = snap.tick;
  if (mission) *mission = update(std::move(*mission), snap);
  if (snap.tick % decimation == 0) {
    std::string text = encode_message(wire::SnapshotMsg{snap});
    {
      std::lock_guard lock(snapshot_mu);
      latest_snapshot = text;
      latest_tick = snap.tick;
    }
    broadcast(text, snap.tick);
    if (mission) {
      wire::MissionMsg mm;
      mm.tick = snap.tick;
      mm.counts = mission->counts;
      for (const auto& r : mission->spec.regions) mm.demands.push_back(r.demand);
      mm.dwell = mission->dwell.empty() ? 0.0 : mission->dwell.front();
      mm.complete = mission->complete();
      if (mission->complete_tick) {
        mm.completion_time = static_cast<double>(*mission->complete_tick - mission->start_tick) * mission->dt;
      }
      for (const auto& [id, ss] : session_states) mm.interaction_count += ss.interaction_count;
      const std::string mtext = encode_message(mm);
      net::post(ioc, [this, mtext]() {
        std::lock_guard lock(sessions_mu);
        for (auto& [id, w] : sessions) {
          if (auto s = w.lock()) s->enqueue(mtext, false, 0);
        }
      });
    }
  }
}

void Server::Impl::sim_loop() {
  using clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<clock::duration>(
      std::chrono::duration<double>(world.dt() / std::max(options.realtime_factor, 1e-6)));
  auto next = clock::now() + period;
  while (running) {
    if (options.manual_ticks) {
      std::unique_lock lock(step_mu);
      step_cv.wait(lock, [this] { return step_requests > 0 || !running; });
      if (!running) break;
      --step_requests;
      lock.unlock();
      tick_once();
      {
        std::lock_guard done(step_mu);
        ++steps_done;
      }
      step_done_cv.notify_all();
    } else {
      std::this_thread::sleep_until(next);
      next += period;
      tick_once();
    }
  }
}

Server::Server(Scenario scenario, ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(scenario), std::move(options))) {}

Server::~Server() { stop(); }

void Server::start() {
  Impl& s = *impl_;
  const double rate = s.options.snapshot_rate.value_or(s.scenario.server.snapshot_rate);
  s.decimation = std::max<std::int64_t>(1, std::llround(1.0 / (std::max(rate, 1e-6) * s.world.dt())));
  if (s.scenario.mission) s.mission = start_mission(*s.scenario.mission, s.world.dt(), s.world.tick());
  if (s.options.record_path) {
    s.record.open(*s.options.record_path);
    if (!s.record) throw std::runtime_error("cannot open record file " + s.options.record_path->string());
    s.record << log_header(s.hash, s.seed, s.world.dt(), s.scenario.name).dump() << '\n';
  }
  {
    const Snapshot snap = s.world.snapshot();
    s.latest_snapshot = encode_message(wire::SnapshotMsg{snap});
    s.latest_tick = snap.tick;
    s.current_tick = snap.tick;
  }

  const tcp::endpoint endpoint{net::ip::make_address(s.options.address), s.options.port};
  s.acceptor.open(endpoint.protocol());
  s.acceptor.set_option(net::socket_base::reuse_address(true));
  s.acceptor.bind(endpoint);
  s.acceptor.listen(net::socket_base::max_listen_connections);

  s.running = true;
  s.accept_loop();
  s.net_thread = std::thread([&s] {
    auto guard = net::make_work_guard(s.ioc);
    s.ioc.run();
  });
  s.sim_thread = std::thread([&s] { s.sim_loop(); });
}

void Server::stop() {
  Impl& s = *impl_;
  if (!s.running.exchange(false)) return;
  s.step_cv.notify_all();
  if (s.sim_thread.joinable()) s.sim_thread.join();
  if (s.record.is_open()) {
    std::optional<Metrics> m;
    std::vector<const SessionState*> all;
    for (const auto& [id, ss] : s.session_states) all.push_back(&ss);
    m = metrics(s.mission ? *s.mission : start_mission({}, s.world.dt(), 0), all);
    s.record << log_end(s.world.tick(), hex64(snapshot_hash(s.world.snapshot())), m).dump() << '\n';
    s.record.close();
  }
  net::post(s.ioc, [&s] {
    beast::error_code ec;
    s.acceptor.close(ec);
  });
  s.ioc.stop();
  if (s.net_thread.joinable()) s.net_thread.join();
  {
    std::lock_guard lock(s.stop_mu);
    s.stopped = true;
  }
  s.stop_cv.notify_all();
}

void Server::wait() {
  Impl& s = *impl_;
  std::unique_lock lock(s.stop_mu);
  s.stop_cv.wait(lock, [&s] { return s.stopped; });
}

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

std::string Server::config_hash() const { return impl_->hash; }

void Server::step() {
  Impl& s = *impl_;
  std::unique_lock lock(s.step_mu);
  const int target = s.steps_done + s.step_requests + 1;
  ++s.step_requests;
  s.step_cv.notify_all();
  s.step_done_cv.wait(lock, [&] { return s.steps_done >= target || !s.running; });
}

std::size_t Server::pending_inbound() const {
  std::lock_guard lock(impl_->inbound_mu);
  return impl_->inbound.size();
}

std::size_t Server::session_count() const {
  std::lock_guard lock(impl_->sessions_mu);
  return impl_->sessions.size();
}

std::int64_t Server::tick() const { return impl_->current_tick; }

}  // namespace giant
