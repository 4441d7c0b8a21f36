#pragma once

#include "capifqos/harness/cli.hpp"
#include "capifqos/harness/scenario.hpp"

#include <memory>
#include <string>

namespace capifqos::harness {

inline constexpr const char* kEmulatorBasePath = "/emulator/v1";

// Network side of a live run: the CCF and the NEF on separate HTTP servers,
// plus emulator routes on the NEF server that let a remote harness advance
// the cell tick by tick. Notifications go out over HTTP on a wall-clock
// dispatcher thread.
class LiveNetwork {
 public:
  // Port 0 picks an ephemeral port.
  explicit LiveNetwork(const ScenarioSpec& spec, std::string host = "127.0.0.1", int ccfPort = 0,
                       int nefPort = 0);
  ~LiveNetwork();

  LiveNetwork(const LiveNetwork&) = delete;
  LiveNetwork& operator=(const LiveNetwork&) = delete;

  std::string ccf_url() const;
  std::string nef_url() const;

  // Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs the client side against a LiveNetwork at opts.ccfUrl / opts.nefUrl.
// Timing is wall-clock, so only the eventual forms of the scenario
// properties are expected to hold.
ScenarioRun run_live(const RunOptions& opts);

}  // namespace capifqos::harness
