#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "visualenv/protocol.hpp"
#include "visualenv/registry.hpp"

namespace visualenv {

/// Protocol state machine for one connection: owns at most one environment.
/// Every input line yields exactly one response line; it never throws.
class Session {
 public:
  explicit Session(EnvConfig config = {});

  std::string handle_line(std::string_view line);
  protocol::Response handle(const protocol::Request& request);

  /// True once a close request has been answered.
  bool closed() const { return closed_; }

 private:
  protocol::Response on_hello(const protocol::Hello& m);
  protocol::Response on_reset(const protocol::Reset& m);
  protocol::Response on_step(const protocol::Step& m);

  EnvConfig config_;
  std::unique_ptr<Environment> env_;
  std::uint64_t base_seed_ = 0;
  std::uint64_t resets_ = 0;
  bool closed_ = false;
};

inline constexpr std::size_t kMaxLineBytes = 1 << 20;

/// Serves one session over a pair of streams until EOF or close.
void serve_stream(std::istream& in, std::ostream& out, const EnvConfig& config);

/// TCP listener; one sequential Session per accepted connection, each on its
/// own thread.
class TcpServer {
 public:
  explicit TcpServer(EnvConfig config = {});
  ~TcpServer();

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  /// Binds 127.0.0.1:port (0 picks a free port). Throws std::runtime_error.
  void bind(std::uint16_t port, bool any_interface = false);
  std::uint16_t port() const { return port_; }

  /// Accept loop; returns after stop().
  void run();
  void stop();

 private:
  void serve_connection(int fd);

  EnvConfig config_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mutex_;
  std::vector<std::thread> workers_;
  std::vector<int> client_fds_;
};

}  // namespace visualenv
