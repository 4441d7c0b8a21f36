#include "capifqos/client/adaptation.hpp"

#include "capifqos/error.hpp"

namespace capifqos::client {

void validate(const AdaptationConfig& config) {
  if (!(config.lowerThreshold > 0.0 && config.lowerThreshold <= config.targetRate)) {
    throw Error(Errc::SpecInvalid, "lowerThreshold must be in (0, targetRate]");
  }
  if (config.debounceSamples < 1) throw Error(Errc::SpecInvalid, "debounceSamples must be >= 1");
  if (!(config.monitorCellLoadThreshold > 0.0 && config.monitorCellLoadThreshold <= 1.0)) {
    throw Error(Errc::SpecInvalid, "monitorCellLoadThreshold must be in (0, 1]");
  }
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Init: return "INIT";
    case Phase::Discovered: return "DISCOVERED";
    case Phase::StreamingBestEffort: return "STREAMING_BEST_EFFORT";
    case Phase::QosRequested: return "QOS_REQUESTED";
    case Phase::QosGuaranteed: return "QOS_GUARANTEED";
    case Phase::QosRejected: return "QOS_REJECTED";
  }
  return "INIT";
}

std::string_view to_string(Action action) {
  switch (action) {
    case Action::Noop: return "NOOP";
    case Action::RequestQos: return "REQUEST_QOS";
    case Action::SubscribeMonitoring: return "SUBSCRIBE_MONITORING";
    case Action::RequestEdge: return "REQUEST_EDGE";
  }
  return "NOOP";
}

StepResult control_step(net::Mbps measuredRate, const ClientState& state,
                        const AdaptationConfig& config) {
  StepResult out{state, {}};
  auto& next = out.state;

  if (next.phase == Phase::Discovered) {
    next.phase = Phase::StreamingBestEffort;
    if (!config.enabled) return out;
    out.actions.push_back(Action::SubscribeMonitoring);
    if (config.requestEdgeRouting) out.actions.push_back(Action::RequestEdge);
  }

  if (next.phase != Phase::StreamingBestEffort || !config.enabled) return out;

  if (measuredRate < config.lowerThreshold) {
    next.belowCount = std::min(next.belowCount + 1, config.debounceSamples);
  } else {
    next.belowCount = 0;
  }

  const bool debounced = next.belowCount >= config.debounceSamples;
  const bool notifiedAndBelow = next.congestionNotified && measuredRate < config.lowerThreshold;
  if (debounced || notifiedAndBelow) {
    out.actions.push_back(Action::RequestQos);
    next.phase = Phase::QosRequested;
    next.belowCount = 0;
    next.congestionNotified = false;
  }
  return out;
}

ClientState handle_notification(const nef::Notification& notification, const ClientState& state,
                                const AdaptationConfig& config) {
  const auto& ids = state.activeSubscriptionIds;
  const auto& id = notification.subscriptionId;
  const bool fromMonitoring = ids.monitoring && *ids.monitoring == id;
  const bool fromQos = ids.qos && *ids.qos == id;
  const bool fromInfluence = ids.trafficInfluence && *ids.trafficInfluence == id;
  if (!fromMonitoring && !fromQos && !fromInfluence) {
    throw Error(Errc::UnknownSubscription, id);
  }

  ClientState next = state;
  switch (notification.kind) {
    case nef::NotificationKind::CellLoadCrossed:
      if (fromMonitoring && next.phase == Phase::StreamingBestEffort && config.enabled) {
        next.congestionNotified = true;
      }
      break;
    case nef::NotificationKind::QosGuaranteed:
      if (fromQos && (next.phase == Phase::QosRequested || next.phase == Phase::QosGuaranteed)) {
        next.phase = Phase::QosGuaranteed;
      }
      break;
    case nef::NotificationKind::QosNotGuaranteed:
      // In-life downgrades are not produced by the NEF; keep the state.
      break;
  }
  return next;
}

net::Mbps measure_throughput(const std::string& flowId, const net::AllocationResult& allocation) {
  auto it = allocation.achievedRate.find(flowId);
  if (it == allocation.achievedRate.end()) throw Error(Errc::UnknownFlow, flowId);
  return it->second;
}

}  // namespace capifqos::client
