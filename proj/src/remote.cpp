// Copyright 2026 The ExeDec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exedec/remote.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "exedec/backends.hpp"
#include "spdlog/spdlog.h"

namespace exedec {
namespace {

void ignore_sigpipe() {
  static const bool done = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

bool write_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::write(fd, data.data() + sent, data.size() - sent);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

// Buffered line reader over a file descriptor with a per-line deadline.
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}

  std::optional<std::string> read_line(int timeout_ms) {
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    for (;;) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) return std::nullopt;
      pollfd p{fd_, POLLIN, 0};
      const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready <= 0) return std::nullopt;
      char chunk[4096];
      const ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return std::nullopt;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buffer_;
};

class ProcessTransport : public LineTransport {
 public:
  ProcessTransport(const std::string& command, int timeout_ms) : timeout_ms_(timeout_ms) {
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) throw std::runtime_error("pipe failed");
    pid_ = ::fork();
    if (pid_ < 0) throw std::runtime_error("fork failed");
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_ = to_child[1];
    out_ = from_child[0];
    reader_ = std::make_unique<LineReader>(out_);
  }

  ~ProcessTransport() override {
    ::close(in_);
    ::close(out_);
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }

  std::optional<std::string> roundtrip(const std::string& line) override {
    if (!write_all(in_, line + "\n")) return std::nullopt;
    return reader_->read_line(timeout_ms_);
  }

 private:
  int timeout_ms_;
  pid_t pid_ = -1;
  int in_ = -1, out_ = -1;
  std::unique_ptr<LineReader> reader_;
};

class SocketTransport : public LineTransport {
 public:
  SocketTransport(const std::string& host, const std::string& port, int timeout_ms) : timeout_ms_(timeout_ms) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &found) != 0 || !found)
      throw std::runtime_error("cannot resolve " + host + ":" + port);
    for (addrinfo* a = found; a; a = a->ai_next) {
      fd_ = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd_ < 0) continue;
      if (::connect(fd_, a->ai_addr, a->ai_addrlen) == 0) break;
      ::close(fd_);
      fd_ = -1;
    }
    ::freeaddrinfo(found);
    if (fd_ < 0) throw std::runtime_error("cannot connect to " + host + ":" + port);
    reader_ = std::make_unique<LineReader>(fd_);
  }

  ~SocketTransport() override { ::close(fd_); }

  std::optional<std::string> roundtrip(const std::string& line) override {
    if (!write_all(fd_, line + "\n")) return std::nullopt;
    return reader_->read_line(timeout_ms_);
  }

 private:
  int timeout_ms_;
  int fd_ = -1;
  std::unique_ptr<LineReader> reader_;
};

}  // namespace

std::unique_ptr<LineTransport> open_transport(const std::string& endpoint, int timeout_ms) {
  ignore_sigpipe();
  if (endpoint.rfind("exec:", 0) == 0) return std::make_unique<ProcessTransport>(endpoint.substr(5), timeout_ms);
  if (endpoint.rfind("tcp://", 0) == 0) {
    const std::string rest = endpoint.substr(6);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw std::runtime_error("tcp endpoint needs host:port");
    return std::make_unique<SocketTransport>(rest.substr(0, colon), rest.substr(colon + 1), timeout_ms);
  }
  throw std::runtime_error("unknown endpoint '" + endpoint + "' (use exec:<cmd> or tcp://host:port)");
}

Json make_request(Role role, Domain domain, int k, const Json& spec) {
  Json j;
  j["v"] = kWireVersion;
  j["role"] = std::string(role_id(role));
  j["domain"] = std::string(domain_id(domain));
  j["k"] = k;
  j["spec"] = spec;
  return j;
}

std::vector<Proposal> parse_response(const std::string& line, int k) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("response is not an object");
  if (require_int(j, "v") != kWireVersion) throw ProtocolError("unsupported protocol version");
  const Json& ps = require(j, "proposals");
  if (!ps.is_array()) throw ProtocolError("proposals must be an array");
  std::vector<Proposal> out;
  for (const Json& p : ps) {
    const std::string text = require_string(p, "text");
    const Json& lp = require(p, "logp");
    if (!lp.is_number()) throw ProtocolError("logp must be a number");
    const double logp = lp.get<double>();
    if (!std::isfinite(logp) || logp > 0.0) throw ProtocolError("logp must be finite and not positive");
    out.push_back({text, logp});
  }
  rank_proposals(out, k);
  return out;
}

RemoteClient::RemoteClient(std::string endpoint, int timeout_ms)
    : endpoint_(std::move(endpoint)), timeout_ms_(timeout_ms) {}

RemoteClient::~RemoteClient() = default;

std::vector<Proposal> RemoteClient::request(Role role, Domain domain, int k, const Json& spec) {
  ++requests_;
  try {
    if (!transport_) transport_ = open_transport(endpoint_, timeout_ms_);
    const auto reply = transport_->roundtrip(make_request(role, domain, k, spec).dump());
    if (!reply) {
      transport_.reset();  // reconnect on the next request
      throw ProtocolError("no response from " + endpoint_);
    }
    return parse_response(*reply, k);
  } catch (const std::exception& e) {
    ++errors_;
    spdlog::warn("dropping remote response: {}", e.what());
    return {};
  }
}

// ---------------------------------------------------------------------------
// Reference server

struct EchoResponder::Oracles {
  OracleBackend<RobustFill> rf_subgoal{Role::Subgoal}, rf_synth{Role::Synthesizer}, rf_combined{Role::Combined};
  OracleBackend<DeepCoder> dc_subgoal{Role::Subgoal}, dc_synth{Role::Synthesizer}, dc_combined{Role::Combined};

  template <class D>
  static ProposalBackend<D>& pick(Role role, OracleBackend<D>& s, OracleBackend<D>& y, OracleBackend<D>& c) {
    return role == Role::Subgoal ? s : role == Role::Synthesizer ? y : c;
  }
};

EchoResponder::EchoResponder(const EchoConfig& config) : config_(config) {
  if (config_.dataset.empty()) return;
  oracles_ = std::make_unique<Oracles>();
  for (const Json& line : read_jsonl_file(config_.dataset)) {
    std::visit(
        [&](const auto& task) {
          const auto trace = decompose(task);
          if constexpr (std::is_same_v<std::decay_t<decltype(task)>, Task<RobustFill>>) {
            oracles_->rf_subgoal.add(trace);
            oracles_->rf_synth.add(trace);
            oracles_->rf_combined.add(trace);
          } else {
            oracles_->dc_subgoal.add(trace);
            oracles_->dc_synth.add(trace);
            oracles_->dc_combined.add(trace);
          }
        },
        any_task_from_json(line));
  }
}

EchoResponder::~EchoResponder() = default;

std::string EchoResponder::respond(const std::string& line) {
  ++handled_;
  if (config_.malformed_every > 0 && handled_ % static_cast<std::size_t>(config_.malformed_every) == 0) {
    // Alternate between broken JSON and a contract violation.
    if ((handled_ / static_cast<std::size_t>(config_.malformed_every)) % 2 == 1) return "{\"v\":1,\"proposals\":[";
    return R"({"v":1,"proposals":[{"text":"Sort x0","logp":0.5}]})";
  }
  Json reply;
  reply["v"] = kWireVersion;
  try {
    const Json req = Json::parse(line);
    if (require_int(req, "v") != kWireVersion) throw ProtocolError("unsupported protocol version");
    const Role role = parse_role(require_string(req, "role"));
    const Domain domain = parse_domain(require_string(req, "domain"));
    const auto k = static_cast<int>(require_int(req, "k"));
    const Json& spec = require(req, "spec");
    std::vector<Proposal> proposals;
    if (oracles_) {
      auto& o = *oracles_;
      if (domain == Domain::RobustFill) {
        proposals = Oracles::pick<RobustFill>(role, o.rf_subgoal, o.rf_synth, o.rf_combined)
                        .propose(parse_spec<RobustFill>(spec), k);
      } else {
        proposals = Oracles::pick<DeepCoder>(role, o.dc_subgoal, o.dc_synth, o.dc_combined)
                        .propose(parse_spec<DeepCoder>(spec), k);
      }
    }
    if (proposals.empty()) proposals = config_.fixed;
    rank_proposals(proposals, k);
    Json ps = Json::array();
    for (const auto& p : proposals) {
      Json e;
      e["text"] = p.text;
      e["logp"] = p.logp;
      ps.push_back(std::move(e));
    }
    reply["proposals"] = std::move(ps);
  } catch (const std::exception& e) {
    reply["proposals"] = Json::array();
    reply["error"] = e.what();
  }
  return reply.dump();
}

void serve_stream(std::istream& in, std::ostream& out, EchoResponder& responder) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << responder.respond(line) << '\n' << std::flush;
  }
}

void serve_tcp(int port, EchoResponder& responder, std::size_t max_connections,
               const std::function<void(int)>& on_listen) {
  ignore_sigpipe();
  const int server = ::socket(AF_INET, SOCK_STREAM, 0);
  if (server < 0) throw std::runtime_error("socket failed");
  const int one = 1;
  ::setsockopt(server, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(server, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(server, 8) != 0) {
    ::close(server);
    throw std::runtime_error("cannot listen on port " + std::to_string(port) + ": " + std::strerror(errno));
  }
  socklen_t len = sizeof addr;
  ::getsockname(server, reinterpret_cast<sockaddr*>(&addr), &len);
  if (on_listen) on_listen(ntohs(addr.sin_port));
  for (std::size_t served = 0; max_connections == 0 || served < max_connections; ++served) {
    const int fd = ::accept(server, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    LineReader reader(fd);
    while (const auto line = reader.read_line(24 * 3600 * 1000)) {
      if (line->find_first_not_of(" \t") == std::string::npos) continue;
      if (!write_all(fd, responder.respond(*line) + "\n")) break;
    }
    ::close(fd);
  }
  ::close(server);
}

}  // namespace exedec
