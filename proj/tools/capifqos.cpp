// capifqos: run scenarios in virtual time, or serve the CCF and NEF over
// HTTP for a live run.
//
//   capifqos run [flags]        see `capifqos run --help`
//   capifqos serve [--host h] [--ccf-port n] [--nef-port n] [scenario flags]

#include "capifqos/error.hpp"
#include "capifqos/harness/cli.hpp"
#include "capifqos/harness/live.hpp"

#include <csignal>
#include <iostream>
#include <pthread.h>

using namespace capifqos;

namespace {

bool is_spec_error(Errc code) {
  return code == Errc::BadFlag || code == Errc::BadConfig || code == Errc::SpecInvalid;
}

bool wants_help(const std::vector<std::string>& args) {
  for (const auto& a : args) {
    if (a == "--help" || a == "-h") return true;
  }
  return false;
}

int cmd_run(const std::vector<std::string>& args) {
  if (wants_help(args)) {
    std::cout << harness::run_usage();
    return 0;
  }
  const auto opts = harness::build_scenario_spec(args);
  const auto run = opts.live ? harness::run_live(opts) : harness::run_scenario(opts.spec);
  if (opts.out.empty()) {
    std::cout << harness::to_csv(run.series);
    std::cerr << harness::format_summary(run.summary);
  } else {
    harness::emit_csv(run.series, opts.out);
    std::cout << harness::format_summary(run.summary);
  }
  return 0;
}

int cmd_serve(const std::vector<std::string>& args) {
  if (wants_help(args)) {
    std::cout << "usage: capifqos serve [--host h] [--ccf-port n] [--nef-port n] [scenario flags]\n";
    return 0;
  }
  std::string host = "127.0.0.1";
  int ccfPort = 8080;
  int nefPort = 8081;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--host" || a == "--ccf-port" || a == "--nef-port") {
      if (i + 1 >= args.size()) throw Error(Errc::BadFlag, a + " requires a value");
      const auto& v = args[++i];
      if (a == "--host") {
        host = v;
        continue;
      }
      int port = 0;
      try {
        std::size_t used = 0;
        port = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw Error(Errc::BadFlag, a + ": not a port: " + v);
      }
      if (port < 0 || port > 65535) throw Error(Errc::BadFlag, a + ": out of range");
      (a == "--ccf-port" ? ccfPort : nefPort) = port;
    } else {
      rest.push_back(a);
    }
  }
  const auto opts = harness::build_scenario_spec(rest);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  harness::LiveNetwork network(opts.spec, host, ccfPort, nefPort);
  std::cout << "ccf=" << network.ccf_url() << "\nnef=" << network.nef_url() << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  network.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || (args[0] != "run" && args[0] != "serve")) {
    std::cerr << "usage: capifqos {run|serve} [flags]\n" << harness::run_usage();
    return 2;
  }
  const std::string command = args[0];
  args.erase(args.begin());
  try {
    return command == "run" ? cmd_run(args) : cmd_serve(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_spec_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
