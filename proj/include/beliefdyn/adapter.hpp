#pragma once

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "beliefdyn/serde.hpp"
#include "beliefdyn/types.hpp"

namespace beliefdyn {

// Adapter failures abort the run; the offending round is carried along.
struct AdapterError : std::runtime_error {
  int round;
  AdapterError(const std::string& message, int round_)
      : std::runtime_error(message), round(round_) {}
};

struct AdapterTimeoutError : AdapterError {
  using AdapterError::AdapterError;
};

struct AdapterProtocolError : AdapterError {
  using AdapterError::AdapterError;
};

struct AdapterObservation {
  int round = 0;
  std::vector<Post> feed;  // previous-round posts
};

struct AdapterAction {
  Stance stance = Stance::NI;
  std::optional<std::string> text;
};

// One newline-delimited JSON line each way. Implementations own their channel.
class LineTransport {
 public:
  virtual ~LineTransport() = default;
  virtual void write_line(const std::string& line) = 0;
  // Blocks up to deadline_ms; nullopt on timeout. Throws std::runtime_error
  // when the channel is closed or broken.
  virtual std::optional<std::string> read_line(int deadline_ms) = 0;
};

// Transport over a pair of file descriptors (pipe ends or a socket).
class FdTransport : public LineTransport {
 public:
  FdTransport(int read_fd, int write_fd) : read_fd_(read_fd), write_fd_(write_fd) {}

  FdTransport(const FdTransport&) = delete;
  FdTransport& operator=(const FdTransport&) = delete;

  ~FdTransport() override { close_fds(); }

  void write_line(const std::string& line) override {
    std::string payload = line;
    payload.push_back('\n');
    std::size_t written = 0;
    while (written < payload.size()) {
      const ssize_t n =
          ::write(write_fd_, payload.data() + written, payload.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("adapter channel write failed: ") +
                                 std::strerror(errno));
      }
      written += static_cast<std::size_t>(n);
    }
  }

  std::optional<std::string> read_line(int deadline_ms) override {
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::milliseconds(deadline_ms);
    for (;;) {
      const auto newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        std::string line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        return line;
      }
      const auto now = std::chrono::steady_clock::now();
      if (now >= deadline) return std::nullopt;
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
              .count();
      pollfd pfd{read_fd_, POLLIN, 0};
      const int rc = ::poll(&pfd, 1, static_cast<int>(remaining));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("adapter channel poll failed: ") +
                                 std::strerror(errno));
      }
      if (rc == 0) return std::nullopt;
      char chunk[4096];
      const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("adapter channel read failed: ") +
                                 std::strerror(errno));
      }
      if (n == 0) throw std::runtime_error("adapter channel closed");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 protected:
  void close_fds() {
    if (read_fd_ >= 0) ::close(read_fd_);
    if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
    read_fd_ = write_fd_ = -1;
  }

 private:
  int read_fd_;
  int write_fd_;
  std::string buffer_;
};

// Spawns a child process and speaks over its standard streams. The command is
// split on whitespace; no shell quoting.
class ProcessTransport final : public FdTransport {
 public:
  explicit ProcessTransport(const std::vector<std::string>& argv)
      : ProcessTransport(spawn(argv)) {}

  ~ProcessTransport() override {
    close_fds();  // child sees EOF on stdin
    if (pid_ > 0) {
      int status = 0;
      for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, &status, WNOHANG) != 0) return;
        ::usleep(10 * 1000);
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
  }

  static std::vector<std::string> split_command(const std::string& command) {
    std::vector<std::string> argv;
    std::istringstream in(command);
    std::string token;
    while (in >> token) argv.push_back(token);
    return argv;
  }

 private:
  struct Spawned {
    int read_fd;
    int write_fd;
    pid_t pid;
  };

  explicit ProcessTransport(Spawned s)
      : FdTransport(s.read_fd, s.write_fd), pid_(s.pid) {}

  static Spawned spawn(const std::vector<std::string>& argv) {
    if (argv.empty()) throw std::runtime_error("empty adapter command");
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
      throw std::runtime_error("failed to create adapter pipes");
    }
    const pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error("failed to fork adapter process");
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      std::vector<char*> args;
      for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
      args.push_back(nullptr);
      ::execvp(args[0], args.data());
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    return {from_child[0], to_child[1], pid};
  }

  pid_t pid_ = -1;
};

// Connects to an already-listening adapter over TCP.
class TcpTransport final : public FdTransport {
 public:
  TcpTransport(const std::string& host, const std::string& port)
      : FdTransport(connect_to(host, port), -1) {}

 private:
  static int connect_to(const std::string& host, const std::string& port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &result) != 0) {
      throw std::runtime_error("cannot resolve adapter address " + host + ":" +
                               port);
    }
    int fd = -1;
    for (addrinfo* rp = result; rp != nullptr; rp = rp->ai_next) {
      fd = ::socket(rp->ai_family, rp->ai_socktype, rp->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, rp->ai_addr, rp->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(result);
    if (fd < 0) {
      throw std::runtime_error("cannot connect to adapter at " + host + ":" +
                               port);
    }
    return fd;
  }
};

// NDJSON request/reply session. One outstanding request at a time.
//
// Request:  {"type":"observe","round":R,"feed":[{"stance":S,"is_ai":B,"style":T},...]}
// Reply:    {"type":"act","stance":"favor"|"ni"|"against","text":optional}
class AdapterSession {
 public:
  explicit AdapterSession(std::unique_ptr<LineTransport> transport,
                          int deadline_ms = 30000)
      : transport_(std::move(transport)), deadline_ms_(deadline_ms) {}

  AdapterAction step(const AdapterObservation& observation) {
    json feed = json::array();
    for (const Post& post : observation.feed) {
      feed.push_back(json{{"stance", post.stance},
                          {"is_ai", post.is_ai},
                          {"style", post.style}});
    }
    const json request{
        {"type", "observe"}, {"round", observation.round}, {"feed", feed}};

    std::optional<std::string> reply;
    try {
      transport_->write_line(request.dump());
      reply = transport_->read_line(deadline_ms_);
    } catch (const std::runtime_error& err) {
      throw AdapterProtocolError(err.what(), observation.round);
    }
    if (!reply) {
      throw AdapterTimeoutError(
          "adapter gave no reply within " + std::to_string(deadline_ms_) +
              " ms at round " + std::to_string(observation.round),
          observation.round);
    }
    return parse_action(*reply, observation.round);
  }

  int deadline_ms() const { return deadline_ms_; }

 private:
  static AdapterAction parse_action(const std::string& line, int round) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw AdapterProtocolError(
          "adapter reply is not valid JSON at round " + std::to_string(round) +
              ": " + line,
          round);
    }
    if (!j.is_object() || j.value("type", "") != "act" ||
        !j.contains("stance") || !j.at("stance").is_string()) {
      throw AdapterProtocolError(
          "adapter reply is not an act message at round " +
              std::to_string(round) + ": " + line,
          round);
    }
    const auto stance = stance_from_token(j.at("stance").get<std::string>());
    if (!stance) {
      throw AdapterProtocolError(
          "adapter replied with unknown stance token \"" +
              j.at("stance").get<std::string>() + "\" at round " +
              std::to_string(round),
          round);
    }
    AdapterAction action;
    action.stance = *stance;
    if (j.contains("text") && j.at("text").is_string()) {
      action.text = j.at("text").get<std::string>();
    }
    return action;
  }

  std::unique_ptr<LineTransport> transport_;
  int deadline_ms_;
};

// Runs one observe/act exchange and materializes the adapter's post. The
// is_ai tag comes from the adapter's declared role, not the reply.
inline Post external_agent_step(const AdapterObservation& observation,
                                AdapterSession& session,
                                const std::string& author_id, bool is_ai_role) {
  const AdapterAction action = session.step(observation);
  Post post;
  post.author_id = author_id;
  post.round = observation.round;
  post.stance = action.stance;
  post.is_ai = is_ai_role;
  post.style = StyleTag::Neutral;
  post.text = action.text;
  return post;
}

// Address forms: "exec:<command...>" spawns a subprocess; "tcp:<host>:<port>"
// connects to a listening socket.
inline std::unique_ptr<LineTransport> open_adapter(const std::string& address) {
  if (address.rfind("exec:", 0) == 0) {
    const auto argv = ProcessTransport::split_command(address.substr(5));
    return std::make_unique<ProcessTransport>(argv);
  }
  if (address.rfind("tcp:", 0) == 0) {
    const std::string rest = address.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("adapter address must be tcp:<host>:<port>");
    }
    return std::make_unique<TcpTransport>(rest.substr(0, colon),
                                          rest.substr(colon + 1));
  }
  throw std::runtime_error(
      "unknown adapter address \"" + address +
      "\" (expected exec:<command> or tcp:<host>:<port>)");
}

}  // namespace beliefdyn
