#pragma once

#include "capifqos/capif/core.hpp"
#include "capifqos/harness/scenario.hpp"
#include "capifqos/nef/notifications.hpp"
#include "capifqos/nef/service.hpp"
#include "capifqos/net/network_model.hpp"

#include <memory>
#include <mutex>

namespace capifqos::harness {

// Result of advancing the emulated network by one tick.
struct TickSnapshot {
  int tick = 0;
  bool videoActive = false;
  net::AllocationResult allocation;
  int activeBackgroundFlows = 0;
  double videoLatencyMs = 0.0;  // 0 while the video flow does not exist
  std::vector<nef::Notification> monitoringNotifications;
};

// Network side of a scenario: CCF, cell model, NEF and its dispatcher. The
// NEF registers as provider and publishes its four APIs at `nefEndpoint`.
class ScenarioWorld {
 public:
  ScenarioWorld(const ScenarioSpec& spec, std::shared_ptr<nef::NotificationTransport> transport,
                nef::RetryPolicy retry, const capif::Endpoint& nefEndpoint,
                capif::Clock clock = capif::system_clock());

  ScenarioWorld(const ScenarioWorld&) = delete;
  ScenarioWorld& operator=(const ScenarioWorld&) = delete;

  // Steps (1)-(3a) of a tick: background, allocation, monitoring evaluation.
  TickSnapshot advance(int tick);

  const ScenarioSpec& spec() const { return spec_; }
  int video_start_tick() const { return videoStart_; }
  capif::CoreFunction& ccf() { return ccf_; }
  net::NetworkModel& network() { return network_; }
  nef::NefService& nef() { return nef_; }
  nef::NotificationDispatcher& dispatcher() { return dispatcher_; }
  const std::vector<capif::ServiceApiDescription>& published() const { return published_; }

 private:
  ScenarioSpec spec_;
  int videoStart_;
  capif::CoreFunction ccf_;
  net::NetworkModel network_;
  nef::NotificationDispatcher dispatcher_;
  nef::NefService nef_;
  std::vector<capif::ServiceApiDescription> published_;
  std::mutex mutex_;
  bool videoAdded_ = false;
};

}  // namespace capifqos::harness
