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

// Command-line entry point.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exedec/harness.hpp"
#include "exedec/remote.hpp"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace {

using namespace exedec;

// Writes to --out, or stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct GenArgs {
  std::string domain = "rf", split = "NONE", side = "train", out;
  std::size_t count = 100;
  std::uint64_t seed_start = 0;
  unsigned jobs = 1;
  bool verify = false, no_trace = false;
};

int cmd_gen(const GenArgs& a) {
  DatasetRequest req;
  req.domain = parse_domain(a.domain);
  req.split = parse_split(a.split);
  req.side = parse_side(a.side);
  req.count = a.count;
  req.seed_start = a.seed_start;
  req.jobs = a.jobs;
  req.verify = a.verify;
  req.with_trace = !a.no_trace;
  const auto lines = generate_dataset(req);
  Output out(a.out);
  for (const auto& j : lines) out.stream() << j.dump() << '\n';
  spdlog::info("wrote {} tasks", lines.size());
  return 0;
}

struct SearchArgs {
  std::string dataset, mode = "exedec", backend = "oracle", endpoint, out;
  int beam_size = 10, max_steps = 0, timeout_ms = 30000;
};

int cmd_search(const SearchArgs& a) {
  RunConfig cfg;
  cfg.mode = parse_mode(a.mode);
  cfg.backend = parse_backend(a.backend);
  cfg.search.beam_size = a.beam_size;
  cfg.search.max_steps = a.max_steps;
  cfg.endpoint = a.endpoint;
  cfg.timeout_ms = a.timeout_ms;
  SearchRunner runner(cfg);
  Output out(a.out);
  std::size_t solved = 0, total = 0;
  for (const Json& line : read_jsonl_file(a.dataset)) {
    const SearchRecord r = runner.run(any_task_from_json(line));
    out.stream() << record_to_json(r).dump() << '\n' << std::flush;
    solved += r.solved;
    ++total;
  }
  spdlog::info("solved {}/{} ({} protocol errors)", solved, total, runner.protocol_errors());
  return 0;
}

struct EvalArgs {
  std::string results, dataset, format = "table", out;
};

int cmd_eval(const EvalArgs& a) {
  const auto results = read_jsonl_file(a.results);
  const auto dataset = read_jsonl_file(a.dataset);
  const EvalReport report = evaluate(results, dataset);
  Output out(a.out);
  if (a.format == "json") out.stream() << report_to_json(report).dump(2) << '\n';
  else out.stream() << report_table(report);
  return 0;
}

struct StepArgs {
  std::string dataset, backend = "oracle", endpoint, format = "table", out;
  int timeout_ms = 30000;
};

template <class D>
void step_accuracy_for(const Task<D>& task, const StepArgs& a, std::shared_ptr<RemoteClient>& client,
                       EnumBackend<D>& enumerator, StepAccuracy& acc) {
  if (a.backend == "remote") {
    RemoteBackend<D> goals(Role::Subgoal, client), synth(Role::Synthesizer, client);
    add_step_accuracy(task, &goals, &synth, acc);
    return;
  }
  const auto trace = decompose(task);
  OracleBackend<D> goals(Role::Subgoal, trace);
  if (a.backend == "oracle") {
    OracleBackend<D> synth(Role::Synthesizer, trace);
    add_step_accuracy(task, &goals, &synth, acc);
  } else {
    add_step_accuracy(task, &goals, &enumerator, acc);
  }
}

int cmd_step(const StepArgs& a) {
  parse_backend(a.backend);
  std::shared_ptr<RemoteClient> client;
  if (a.backend == "remote") client = std::make_shared<RemoteClient>(a.endpoint, a.timeout_ms);
  EnumBackend<RobustFill> rf_enum;
  EnumBackend<DeepCoder> dc_enum;
  StepAccuracy rf_acc, dc_acc;
  for (const Json& line : read_jsonl_file(a.dataset)) {
    std::visit(
        [&](const auto& task) {
          if constexpr (std::is_same_v<std::decay_t<decltype(task)>, Task<RobustFill>>)
            step_accuracy_for(task, a, client, rf_enum, rf_acc);
          else
            step_accuracy_for(task, a, client, dc_enum, dc_acc);
        },
        any_task_from_json(line));
  }
  Output out(a.out);
  if (a.format == "json") {
    Json j;
    for (const auto& [name, acc] : {std::pair{"rf", &rf_acc}, std::pair{"dc", &dc_acc}}) {
      if (acc->steps == 0) continue;
      j[name] = {{"steps", acc->steps}, {"subgoal_accuracy", acc->subgoal_rate()},
                 {"synthesizer_accuracy", acc->behavior_rate()}};
    }
    out.stream() << j.dump(2) << '\n';
  } else {
    out.stream() << "domain  steps   subgoal  synthesizer\n";
    for (const auto& [name, acc] : {std::pair{"rf", &rf_acc}, std::pair{"dc", &dc_acc}}) {
      if (acc->steps == 0) continue;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-8s%-8zu%-9.1f%.1f\n", name, acc->steps, 100.0 * acc->subgoal_rate(),
                    100.0 * acc->behavior_rate());
      out.stream() << buf;
    }
  }
  return 0;
}

struct ExecArgs {
  std::string domain = "rf", program;
  std::vector<std::string> inputs;
};

// Exit codes: 0 all inputs ran, 1 some execution failed, 2 bad syntax.
int cmd_exec(const ExecArgs& a) {
  const Domain domain = parse_domain(a.domain);
  bool all_ok = true;
  try {
    if (domain == Domain::RobustFill) {
      const rf::Program p = rf::parse_program(a.program);
      for (const auto& in : a.inputs) {
        const auto out = rf::execute(p, in);
        all_ok = all_ok && out.has_value();
        std::cout << (out ? rf::quote(*out) : std::string("error")) << '\n';
      }
    } else {
      const dc::Program p = dc::parse_program(a.program);
      std::vector<std::vector<dc::Value>> parsed;
      for (const auto& in : a.inputs) parsed.push_back(dc::parse_value_list(in));
      for (const auto& args : parsed) {
        const auto out = dc::execute(p, args);
        all_ok = all_ok && out.has_value();
        std::cout << (out ? dc::to_string(*out) : std::string("error")) << '\n';
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  }
  return all_ok ? 0 : 1;
}

struct EchoArgs {
  std::string text, dataset;
  double logp = -1.0;
  int port = -1, malformed_every = 0;
  std::size_t max_connections = 0;
};

int cmd_echo(const EchoArgs& a) {
  EchoConfig cfg;
  if (!a.text.empty()) cfg.fixed.push_back({a.text, a.logp});
  cfg.dataset = a.dataset;
  cfg.malformed_every = a.malformed_every;
  EchoResponder responder(cfg);
  if (a.port < 0) {
    serve_stream(std::cin, std::cout, responder);
  } else {
    serve_tcp(a.port, responder, a.max_connections, [](int port) {
      std::cout << "listening on " << port << std::endl;
    });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("exedec");
  spdlog::set_default_logger(logger);

  CLI::App app{"Program synthesis by execution-guided decomposition"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  GenArgs gen;
  auto* g = app.add_subcommand("gen-dataset", "Generate train or test tasks as JSONL");
  g->add_option("--domain", gen.domain, "rf or dc")->required();
  g->add_option("--split", gen.split, "NONE, LENGTH, CONCEPT_MIX, CONCEPT_ORDER, NEW_OP or OP_FUNCTIONALITY");
  g->add_option("--side", gen.side, "train or test");
  g->add_option("--count", gen.count, "number of tasks");
  g->add_option("--seed-start,--seed", gen.seed_start, "seed of the first task");
  g->add_option("--out", gen.out, "output file (default stdout)");
  g->add_option("--jobs", gen.jobs, "worker threads");
  g->add_flag("--verify", gen.verify, "re-check every task invariant");
  g->add_flag("--no-trace", gen.no_trace, "omit decomposition traces");

  SearchArgs search;
  auto* s = app.add_subcommand("run-search", "Search every dataset task and write result records");
  s->add_option("--dataset", search.dataset)->required();
  s->add_option("--mode", search.mode, "exedec or nosubgoal");
  s->add_option("--backend", search.backend, "oracle, enum or remote");
  s->add_option("--beam-size", search.beam_size);
  s->add_option("--max-steps", search.max_steps, "0 uses the domain default");
  s->add_option("--endpoint", search.endpoint, "exec:<command> or tcp://host:port");
  s->add_option("--timeout-ms", search.timeout_ms);
  s->add_option("--out", search.out);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Verify result records against a dataset and report success rates");
  e->add_option("--results", ev.results)->required();
  e->add_option("--dataset", ev.dataset)->required();
  e->add_option("--format", ev.format)->check(CLI::IsMember({"json", "table"}));
  e->add_option("--out", ev.out);

  StepArgs step;
  auto* st = app.add_subcommand("step-accuracy", "Top-1 subgoal and synthesizer accuracy on dataset traces");
  st->add_option("--dataset", step.dataset)->required();
  st->add_option("--backend", step.backend, "oracle, enum (oracle subgoals) or remote");
  st->add_option("--endpoint", step.endpoint);
  st->add_option("--timeout-ms", step.timeout_ms);
  st->add_option("--format", step.format)->check(CLI::IsMember({"json", "table"}));
  st->add_option("--out", step.out);

  ExecArgs ex;
  auto* x = app.add_subcommand("exec", "Run a program on inputs");
  x->add_option("--domain", ex.domain, "rf or dc");
  x->add_option("--program", ex.program)->required();
  x->add_option("--input", ex.inputs, "one example; dc takes comma-separated values")
      ->required()
      ->allow_extra_args(false);

  EchoArgs echo;
  auto* p = app.add_subcommand("protocol-echo", "Reference proposal server (stdin/stdout or TCP)");
  p->add_option("--text", echo.text, "fixed proposal text");
  p->add_option("--logp", echo.logp, "log-probability of the fixed proposal");
  p->add_option("--dataset", echo.dataset, "answer from these tasks' traces");
  p->add_option("--malformed-every", echo.malformed_every, "make every n-th response malformed");
  p->add_option("--port", echo.port, "listen on TCP port (0 picks one); default stdin/stdout");
  p->add_option("--max-connections", echo.max_connections, "exit after this many connections");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_search(search);
    if (*e) return cmd_eval(ev);
    if (*st) return cmd_step(step);
    if (*x) return cmd_exec(ex);
    if (*p) return cmd_echo(echo);
  } catch (const std::exception& err) {
    spdlog::error("{}", err.what());
    return 1;
  }
  return 0;
}
