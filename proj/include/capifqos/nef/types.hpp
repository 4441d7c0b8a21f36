#pragma once

#include "capifqos/net/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace capifqos::nef {

// Published API names and the exposing function id the NEF registers with.
inline constexpr const char* kAsSessionWithQosApi = "as-session-with-qos";
inline constexpr const char* kMonitoringEventApi = "monitoring-event";
inline constexpr const char* kTrafficInfluenceApi = "traffic-influence";
inline constexpr const char* kPdtqApi = "pdtq";
inline constexpr const char* kDefaultAefId = "nef-aef";

inline const std::vector<std::string>& nef_api_names() {
  static const std::vector<std::string> names{kAsSessionWithQosApi, kMonitoringEventApi,
                                              kTrafficInfluenceApi, kPdtqApi};
  return names;
}

enum class QosStatus { Guaranteed, NotGuaranteed };

struct QosSubscription {
  std::string subscriptionId;
  std::string afId;
  std::string flowId;
  std::string qosReference;
  std::string notificationUri;
  QosStatus status = QosStatus::Guaranteed;
};

using QosReferenceTable = std::map<std::string, net::Mbps>;

inline QosReferenceTable default_qos_references() { return {{"qos-gbr-video", 4.5}}; }

enum class LoadSide { Below, Above };

struct MonitoringSubscription {
  std::string subscriptionId;
  std::string afId;
  std::string cellId;
  std::string eventType = "CELL_LOAD";
  double upperThreshold = 0.9;
  std::string notificationUri;
  LoadSide lastReportedSide = LoadSide::Below;
};

struct TrafficInfluenceSubscription {
  std::string subscriptionId;
  std::string afId;
  std::string flowId;
  std::string dnai;
  std::string notificationUri;
};

struct CandidatePolicy {
  std::string policyId;
  net::TickWindow window;
  double predictedPeakLoad = 0.0;
};

struct PdtqNegotiation {
  std::string negotiationId;
  std::string afId;
  std::string flowId;
  std::vector<net::TickWindow> requestedWindows;
  net::Mbps desiredRate = 0.0;
  double efficiency = 1.0;
  std::vector<CandidatePolicy> candidatePolicies;
  std::optional<std::string> selectedPolicyId;
};

enum class NotificationKind { QosGuaranteed, QosNotGuaranteed, CellLoadCrossed };

struct Notification {
  std::string subscriptionId;
  NotificationKind kind = NotificationKind::CellLoadCrossed;
  // CELL_LOAD_CROSSED carries cellId/loadRatio; QoS kinds carry flowId/status.
  std::string cellId;
  double loadRatio = 0.0;
  std::string flowId;
  std::string status;
  std::uint64_t sequenceNumber = 0;
};

std::string_view to_string(QosStatus status);
std::string_view to_string(NotificationKind kind);
std::string_view to_string(LoadSide side);

}  // namespace capifqos::nef
