#include "capifqos/nef/json.hpp"

#include "capifqos/error.hpp"

namespace capifqos::net {

void to_json(nlohmann::json& j, const TickWindow& w) {
  j = nlohmann::json{{"startTick", w.startTick}, {"endTick", w.endTick}};
}

void from_json(const nlohmann::json& j, TickWindow& w) {
  j.at("startTick").get_to(w.startTick);
  j.at("endTick").get_to(w.endTick);
}

}  // namespace capifqos::net

namespace capifqos::nef {

using nlohmann::json;

std::string_view to_string(QosStatus status) {
  return status == QosStatus::Guaranteed ? "GUARANTEED" : "NOT_GUARANTEED";
}

std::string_view to_string(NotificationKind kind) {
  switch (kind) {
    case NotificationKind::QosGuaranteed: return "QOS_GUARANTEED";
    case NotificationKind::QosNotGuaranteed: return "QOS_NOT_GUARANTEED";
    case NotificationKind::CellLoadCrossed: return "CELL_LOAD_CROSSED";
  }
  return "CELL_LOAD_CROSSED";
}

std::string_view to_string(LoadSide side) { return side == LoadSide::Above ? "ABOVE" : "BELOW"; }

namespace {

NotificationKind kind_from(const std::string& s) {
  if (s == "QOS_GUARANTEED") return NotificationKind::QosGuaranteed;
  if (s == "QOS_NOT_GUARANTEED") return NotificationKind::QosNotGuaranteed;
  if (s == "CELL_LOAD_CROSSED") return NotificationKind::CellLoadCrossed;
  throw Error(Errc::BadRequest, "unknown notification kind " + s);
}

}  // namespace

void to_json(json& j, const QosSubscription& s) {
  j = json{{"subscriptionId", s.subscriptionId}, {"afId", s.afId},
           {"flowId", s.flowId},                 {"qosReference", s.qosReference},
           {"notificationUri", s.notificationUri}, {"status", std::string(to_string(s.status))}};
}

void from_json(const json& j, QosSubscription& s) {
  j.at("subscriptionId").get_to(s.subscriptionId);
  s.afId = j.value("afId", "");
  j.at("flowId").get_to(s.flowId);
  j.at("qosReference").get_to(s.qosReference);
  s.notificationUri = j.value("notificationUri", "");
  s.status = j.value("status", "GUARANTEED") == "GUARANTEED" ? QosStatus::Guaranteed
                                                             : QosStatus::NotGuaranteed;
}

void to_json(json& j, const MonitoringSubscription& s) {
  j = json{{"subscriptionId", s.subscriptionId},
           {"afId", s.afId},
           {"cellId", s.cellId},
           {"eventType", s.eventType},
           {"upperThreshold", s.upperThreshold},
           {"notificationUri", s.notificationUri},
           {"lastReportedSide", std::string(to_string(s.lastReportedSide))}};
}

void from_json(const json& j, MonitoringSubscription& s) {
  j.at("subscriptionId").get_to(s.subscriptionId);
  s.afId = j.value("afId", "");
  j.at("cellId").get_to(s.cellId);
  s.eventType = j.value("eventType", "CELL_LOAD");
  j.at("upperThreshold").get_to(s.upperThreshold);
  s.notificationUri = j.value("notificationUri", "");
  s.lastReportedSide = j.value("lastReportedSide", "BELOW") == "ABOVE" ? LoadSide::Above
                                                                       : LoadSide::Below;
}

void to_json(json& j, const TrafficInfluenceSubscription& s) {
  j = json{{"subscriptionId", s.subscriptionId},
           {"afId", s.afId},
           {"flowId", s.flowId},
           {"dnai", s.dnai},
           {"notificationUri", s.notificationUri}};
}

void from_json(const json& j, TrafficInfluenceSubscription& s) {
  j.at("subscriptionId").get_to(s.subscriptionId);
  s.afId = j.value("afId", "");
  j.at("flowId").get_to(s.flowId);
  j.at("dnai").get_to(s.dnai);
  s.notificationUri = j.value("notificationUri", "");
}

void to_json(json& j, const CandidatePolicy& c) {
  j = json{{"policyId", c.policyId},
           {"window", c.window},
           {"predictedPeakLoad", c.predictedPeakLoad}};
}

void from_json(const json& j, CandidatePolicy& c) {
  j.at("policyId").get_to(c.policyId);
  j.at("window").get_to(c.window);
  j.at("predictedPeakLoad").get_to(c.predictedPeakLoad);
}

void to_json(json& j, const PdtqNegotiation& n) {
  j = json{{"negotiationId", n.negotiationId},
           {"afId", n.afId},
           {"flowId", n.flowId},
           {"requestedWindows", n.requestedWindows},
           {"desiredRate", n.desiredRate},
           {"efficiency", n.efficiency},
           {"candidatePolicies", n.candidatePolicies}};
  if (n.selectedPolicyId) j["selectedPolicyId"] = *n.selectedPolicyId;
}

void from_json(const json& j, PdtqNegotiation& n) {
  j.at("negotiationId").get_to(n.negotiationId);
  n.afId = j.value("afId", "");
  n.flowId = j.value("flowId", "");
  j.at("requestedWindows").get_to(n.requestedWindows);
  j.at("desiredRate").get_to(n.desiredRate);
  j.at("efficiency").get_to(n.efficiency);
  j.at("candidatePolicies").get_to(n.candidatePolicies);
  if (j.contains("selectedPolicyId")) {
    n.selectedPolicyId = j.at("selectedPolicyId").get<std::string>();
  } else {
    n.selectedPolicyId.reset();
  }
}

void to_json(json& j, const Notification& n) {
  json payload = json::object();
  if (n.kind == NotificationKind::CellLoadCrossed) {
    payload = json{{"cellId", n.cellId}, {"loadRatio", n.loadRatio}};
  } else {
    payload = json{{"flowId", n.flowId}, {"status", n.status}};
  }
  j = json{{"subscriptionId", n.subscriptionId},
           {"kind", std::string(to_string(n.kind))},
           {"payload", payload},
           {"sequenceNumber", n.sequenceNumber}};
}

void from_json(const json& j, Notification& n) {
  j.at("subscriptionId").get_to(n.subscriptionId);
  n.kind = kind_from(j.at("kind").get<std::string>());
  const auto& payload = j.at("payload");
  n.cellId = payload.value("cellId", "");
  n.loadRatio = payload.value("loadRatio", 0.0);
  n.flowId = payload.value("flowId", "");
  n.status = payload.value("status", "");
  j.at("sequenceNumber").get_to(n.sequenceNumber);
}

}  // namespace capifqos::nef
