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

// Newline-delimited JSON proposal protocol: client side and a reference
// server.
//
// Request:  {"v":1,"role":"subgoal"|"synthesizer"|"combined","domain":"rf"|"dc","k":N,"spec":{...}}
// Response: {"v":1,"proposals":[{"text":"...","logp":-1.23},...]}
//
// Endpoints: "exec:<shell command>" talks to a child process over its
// standard streams; "tcp://host:port" opens a socket.

#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "exedec/io.hpp"
#include "exedec/search.hpp"

namespace exedec {

class LineTransport {
 public:
  virtual ~LineTransport() = default;
  // Sends one line and waits for one reply line; nullopt on timeout or a
  // closed peer.
  virtual std::optional<std::string> roundtrip(const std::string& line) = 0;
};

// Throws std::runtime_error when the endpoint cannot be opened.
std::unique_ptr<LineTransport> open_transport(const std::string& endpoint, int timeout_ms);

Json make_request(Role role, Domain domain, int k, const Json& spec);
// Throws ProtocolError on any contract violation.
std::vector<Proposal> parse_response(const std::string& line, int k);

class RemoteClient {
 public:
  explicit RemoteClient(std::string endpoint, int timeout_ms = 30000);
  ~RemoteClient();

  // Protocol failures are logged and yield no proposals.
  std::vector<Proposal> request(Role role, Domain domain, int k, const Json& spec);

  std::size_t requests() const { return requests_; }
  std::size_t protocol_errors() const { return errors_; }

 private:
  std::string endpoint_;
  int timeout_ms_;
  std::unique_ptr<LineTransport> transport_;
  std::size_t requests_ = 0;
  std::size_t errors_ = 0;
};

template <class D>
class RemoteBackend : public ProposalBackend<D> {
 public:
  RemoteBackend(Role role, std::shared_ptr<RemoteClient> client) : role_(role), client_(std::move(client)) {}
  Role role() const override { return role_; }
  std::vector<Proposal> propose(const typename D::Spec& spec, int k) override {
    return client_->request(role_, D::kDomain, k, spec_to_json(spec));
  }

 private:
  Role role_;
  std::shared_ptr<RemoteClient> client_;
};

// ---------------------------------------------------------------------------
// Reference server

struct EchoConfig {
  std::vector<Proposal> fixed;  // answer when no dataset answer applies
  std::string dataset;          // JSONL tasks replayed as an oracle
  int malformed_every = 0;      // every n-th response is malformed; 0 never
};

class EchoResponder {
 public:
  explicit EchoResponder(const EchoConfig& config);
  ~EchoResponder();
  std::string respond(const std::string& line);
  std::size_t handled() const { return handled_; }

 private:
  struct Oracles;
  EchoConfig config_;
  std::unique_ptr<Oracles> oracles_;
  std::size_t handled_ = 0;
};

// Answers until end of input.
void serve_stream(std::istream& in, std::ostream& out, EchoResponder& responder);
// Serves connections one at a time; `max_connections` 0 means forever.
// Reports the bound port through `on_listen` (useful with port 0).
void serve_tcp(int port, EchoResponder& responder, std::size_t max_connections = 0,
               const std::function<void(int)>& on_listen = {});

}  // namespace exedec
