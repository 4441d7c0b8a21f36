#pragma once

#include "capifqos/capif/core.hpp"
#include "capifqos/nef/types.hpp"
#include "capifqos/net/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace capifqos::client {

struct AdaptationConfig {
  bool enabled = true;  // false reproduces the no-QoS benchmark
  net::Mbps targetRate = 4.5;
  net::Mbps lowerThreshold = 4.2;
  int debounceSamples = 2;
  std::string qosReference = "qos-gbr-video";
  double monitorCellLoadThreshold = 0.9;
  bool requestEdgeRouting = true;
};

void validate(const AdaptationConfig& config);

enum class Phase {
  Init,
  Discovered,
  StreamingBestEffort,
  QosRequested,
  QosGuaranteed,
  QosRejected,
};

std::string_view to_string(Phase phase);

enum class Action { Noop, RequestQos, SubscribeMonitoring, RequestEdge };

std::string_view to_string(Action action);

struct ActiveSubscriptions {
  std::optional<std::string> qos;
  std::optional<std::string> monitoring;
  std::optional<std::string> trafficInfluence;
};

struct ClientState {
  Phase phase = Phase::Init;
  int belowCount = 0;
  // Set by a cell-load notification: the next below-threshold sample
  // requests QoS without waiting for the debounce count.
  bool congestionNotified = false;
  std::map<std::string, capif::Endpoint> discoveredEndpoints;
  ActiveSubscriptions activeSubscriptionIds;
};

struct StepResult {
  ClientState state;
  std::vector<Action> actions;  // empty means NOOP
};

// One tick of the adaptation state machine. DISCOVERED arms monitoring (and
// edge routing) and then treats the sample like STREAMING_BEST_EFFORT does.
StepResult control_step(net::Mbps measuredRate, const ClientState& state,
                        const AdaptationConfig& config);

// Throws UNKNOWN_SUBSCRIPTION for ids the client never created.
ClientState handle_notification(const nef::Notification& notification, const ClientState& state,
                                const AdaptationConfig& config);

net::Mbps measure_throughput(const std::string& flowId, const net::AllocationResult& allocation);

}  // namespace capifqos::client
