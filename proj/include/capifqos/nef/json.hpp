#pragma once

#include "capifqos/nef/types.hpp"

#include <json.hpp>

namespace capifqos::net {
void to_json(nlohmann::json& j, const TickWindow& w);
void from_json(const nlohmann::json& j, TickWindow& w);
}  // namespace capifqos::net

namespace capifqos::nef {

void to_json(nlohmann::json& j, const QosSubscription& s);
void from_json(const nlohmann::json& j, QosSubscription& s);
void to_json(nlohmann::json& j, const MonitoringSubscription& s);
void from_json(const nlohmann::json& j, MonitoringSubscription& s);
void to_json(nlohmann::json& j, const TrafficInfluenceSubscription& s);
void from_json(const nlohmann::json& j, TrafficInfluenceSubscription& s);
void to_json(nlohmann::json& j, const CandidatePolicy& c);
void from_json(const nlohmann::json& j, CandidatePolicy& c);
void to_json(nlohmann::json& j, const PdtqNegotiation& n);
void from_json(const nlohmann::json& j, PdtqNegotiation& n);
void to_json(nlohmann::json& j, const Notification& n);
void from_json(const nlohmann::json& j, Notification& n);

}  // namespace capifqos::nef
