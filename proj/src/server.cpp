#include "visualenv/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "visualenv/digest.hpp"

namespace visualenv {

using namespace protocol;

namespace {

Error env_error(const EnvError& e) {
  switch (e.code()) {
    case EnvErrorCode::InvalidAction: return {"invalid_action", e.what()};
    case EnvErrorCode::SteppedAfterDone: return {"done", e.what()};
    case EnvErrorCode::NotReset: return {"not_reset", e.what()};
    case EnvErrorCode::UnknownEnv: return {"unknown_env", e.what()};
    case EnvErrorCode::InvalidConfig: return {"invalid_config", e.what()};
  }
  return {"internal", e.what()};
}

Obs make_obs(const ObsStack& stack, double reward, bool done, Reason reason, int step) {
  return Obs{reward, done, reason, step, base64_encode(stack_to_tensor(stack))};
}

}  // namespace

Session::Session(EnvConfig config) : config_(std::move(config)) {}

std::string Session::handle_line(std::string_view line) {
  try {
    if (line.size() > kMaxLineBytes)
      return encode(Response{Error{"line_too_long", "request line exceeds 1 MiB"}});
    auto decoded = decode_request(line);
    if (auto* err = std::get_if<Error>(&decoded)) return encode(Response{*err});
    return encode(handle(std::get<Request>(decoded)));
  } catch (const std::exception& e) {
    return encode(Response{Error{"internal", e.what()}});
  } catch (...) {
    return encode(Response{Error{"internal", "unexpected failure"}});
  }
}

Response Session::handle(const Request& request) {
  try {
    if (const auto* m = std::get_if<Hello>(&request)) return on_hello(*m);
    if (const auto* m = std::get_if<Reset>(&request)) return on_reset(*m);
    if (const auto* m = std::get_if<Step>(&request)) return on_step(*m);
    closed_ = true;
    return Bye{};
  } catch (const EnvError& e) {
    return env_error(e);
  } catch (const std::exception& e) {
    return Error{"internal", e.what()};
  }
}

Response Session::on_hello(const Hello& m) {
  env_ = make_env(m.env, config_);
  base_seed_ = m.seed.value_or(0);
  resets_ = 0;
  return HelloAck{std::string(env_->name()), env_->observation_spec(), env_->action_space().n};
}

Response Session::on_reset(const Reset& m) {
  if (!env_) return Error{"no_env", "send hello before reset"};
  const std::uint64_t seed = m.seed ? *m.seed : derive_seed(base_seed_, resets_++);
  const ObsStack& obs = env_->reset(seed);
  return make_obs(obs, 0.0, false, Reason::Running, 0);
}

Response Session::on_step(const Step& m) {
  if (!env_) return Error{"no_env", "send hello before step"};
  if (!env_->is_reset()) return Error{"not_reset", "send reset before step"};
  if (env_->done()) return Error{"done", "episode is done; send reset"};
  const int n = env_->action_space().n;
  if (m.action < 0 || m.action >= n)
    return Error{"invalid_action",
                 "action " + std::to_string(m.action) + " outside [0, " + std::to_string(n) + ")"};
  const StepResult r = env_->step(static_cast<int>(m.action));
  return make_obs(r.obs, r.reward, r.done, r.reason, r.step_index);
}

void serve_stream(std::istream& in, std::ostream& out, const EnvConfig& config) {
  Session session(config);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    out << session.handle_line(line) << '\n';
    out.flush();
  }
}

TcpServer::TcpServer(EnvConfig config) : config_(std::move(config)) {}

TcpServer::~TcpServer() { stop(); }

void TcpServer::bind(std::uint16_t port, bool any_interface) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(any_interface ? INADDR_ANY : INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(listen_fd_, 16) < 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::runtime_error("cannot listen on port " + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

void TcpServer::run() {
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (stopping_) break;
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    std::lock_guard lock(mutex_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    client_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
  }
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
}

void TcpServer::serve_connection(int fd) {
  Session session(config_);
  std::string buffer;
  bool overflow = false;
  char chunk[65536];

  auto send_all = [fd](const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  };

  while (!session.closed()) {
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));

    std::size_t start = 0;
    bool ok = true;
    for (std::size_t nl; ok && !session.closed() && (nl = buffer.find('\n', start)) != std::string::npos;
         start = nl + 1) {
      if (overflow) {
        overflow = false;
        ok = send_all(encode(Response{Error{"line_too_long", "request line exceeds 1 MiB"}}) + "\n");
        continue;
      }
      ok = send_all(session.handle_line(std::string_view(buffer).substr(start, nl - start)) + "\n");
    }
    buffer.erase(0, start);
    if (!ok) break;
    if (buffer.size() > kMaxLineBytes) {
      overflow = true;
      buffer.clear();
    }
  }
  std::lock_guard lock(mutex_);
  std::erase(client_fds_, fd);
  ::close(fd);
}

}  // namespace visualenv
