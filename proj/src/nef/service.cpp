#include "capifqos/nef/service.hpp"

#include "capifqos/capif/http.hpp"
#include "capifqos/error.hpp"

#include <cstdio>

namespace capifqos::nef {

capif::IntrospectionResult HttpIntrospector::introspect(const std::string& token,
                                                        const std::string& aefId,
                                                        const std::string& apiName) {
  return ccf_->introspect_token(token, aefId, apiName);
}

NefService::NefService(net::NetworkModel& network,
                       std::shared_ptr<TokenIntrospector> introspector,
                       NotificationDispatcher& dispatcher, NefConfig config)
    : network_(network),
      introspector_(std::move(introspector)),
      dispatcher_(dispatcher),
      config_(std::move(config)) {
  for (const auto& [ref, rate] : config_.qosReferences) {
    if (!(rate > 0.0)) throw Error(Errc::InvalidModel, "QoS reference rate must be > 0: " + ref);
  }
}

std::string NefService::next_id(const char* prefix) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%06llu", prefix,
                static_cast<unsigned long long>(++idCounter_));
  return buf;
}

std::string NefService::authorize(const std::string& afId, const std::string& token,
                                  const std::string& apiName) {
  if (token.empty()) throw Error(Errc::Unauthenticated, "missing bearer token");
  // Introspection may be a remote call; it runs outside the service lock.
  const auto decision = introspector_->introspect(token, config_.aefId, apiName);
  if (!decision.active) {
    if (decision.reason == capif::TokenRejection::OutOfScope) {
      throw Error(Errc::AuthDenied, "token not scoped for " + apiName);
    }
    throw Error(Errc::Unauthenticated, std::string(capif::to_string(decision.reason)));
  }
  const std::string invokerId = decision.invokerId.value_or("");

  std::lock_guard lock(mutex_);
  auto [owner, inserted] = afOwners_.try_emplace(afId, invokerId);
  if (!inserted && owner->second != invokerId) {
    throw Error(Errc::AuthDenied, "afId " + afId + " belongs to another invoker");
  }
  return invokerId;
}

Notification NefService::stamp(Notification n) {
  n.sequenceNumber = ++sequence_[n.subscriptionId];
  return n;
}

QosSubscription NefService::create_qos_subscription(const std::string& afId,
                                                    const std::string& token,
                                                    const std::string& flowId,
                                                    const std::string& qosReference,
                                                    const std::string& notificationUri) {
  authorize(afId, token, kAsSessionWithQosApi);

  std::lock_guard lock(mutex_);
  if (!network_.has_flow(flowId)) throw Error(Errc::UnknownFlow, flowId);
  auto ref = config_.qosReferences.find(qosReference);
  if (ref == config_.qosReferences.end()) {
    throw Error(Errc::UnknownQosReference, qosReference);
  }
  for (const auto& [id, sub] : qos_) {
    if (sub.flowId == flowId) throw Error(Errc::DuplicateSubscription, flowId);
  }

  const auto decision = network_.admit_gbr(flowId, ref->second);
  if (!decision.admitted) throw Error(Errc::GbrBudgetExceeded, flowId);

  QosSubscription sub{next_id("qos"), afId, flowId, qosReference, notificationUri,
                      QosStatus::Guaranteed};
  qos_.emplace(sub.subscriptionId, sub);

  Notification n;
  n.subscriptionId = sub.subscriptionId;
  n.kind = NotificationKind::QosGuaranteed;
  n.flowId = flowId;
  n.status = std::string(to_string(QosStatus::Guaranteed));
  dispatcher_.enqueue(stamp(n), notificationUri);
  return sub;
}

QosSubscription NefService::get_qos_subscription(const std::string& afId,
                                                 const std::string& token,
                                                 const std::string& subscriptionId) {
  authorize(afId, token, kAsSessionWithQosApi);
  std::lock_guard lock(mutex_);
  auto it = qos_.find(subscriptionId);
  if (it == qos_.end() || it->second.afId != afId) {
    throw Error(Errc::UnknownSubscription, subscriptionId);
  }
  return it->second;
}

std::vector<QosSubscription> NefService::list_qos_subscriptions(const std::string& afId,
                                                                const std::string& token) {
  authorize(afId, token, kAsSessionWithQosApi);
  std::lock_guard lock(mutex_);
  std::vector<QosSubscription> out;
  for (const auto& [id, sub] : qos_) {
    if (sub.afId == afId) out.push_back(sub);
  }
  return out;
}

void NefService::delete_qos_subscription(const std::string& afId, const std::string& token,
                                         const std::string& subscriptionId) {
  authorize(afId, token, kAsSessionWithQosApi);
  std::lock_guard lock(mutex_);
  auto it = qos_.find(subscriptionId);
  if (it == qos_.end() || it->second.afId != afId) {
    throw Error(Errc::UnknownSubscription, subscriptionId);
  }
  if (it->second.status == QosStatus::Guaranteed) network_.release_gbr(it->second.flowId);
  qos_.erase(it);
}

MonitoringSubscription NefService::create_monitoring_subscription(
    const std::string& afId, const std::string& token, const std::string& cellId,
    double upperThreshold, const std::string& notificationUri) {
  authorize(afId, token, kMonitoringEventApi);
  if (cellId != network_.cell().cellId) throw Error(Errc::UnknownCell, cellId);
  if (!(upperThreshold > 0.0 && upperThreshold <= 1.0)) {
    throw Error(Errc::BadThreshold, std::to_string(upperThreshold));
  }

  std::lock_guard lock(mutex_);
  MonitoringSubscription sub;
  sub.subscriptionId = next_id("mon");
  sub.afId = afId;
  sub.cellId = cellId;
  sub.upperThreshold = upperThreshold;
  sub.notificationUri = notificationUri;
  sub.lastReportedSide =
      network_.current_load() >= upperThreshold ? LoadSide::Above : LoadSide::Below;
  monitoring_.emplace(sub.subscriptionId, sub);
  return sub;
}

void NefService::delete_monitoring_subscription(const std::string& afId,
                                                const std::string& token,
                                                const std::string& subscriptionId) {
  authorize(afId, token, kMonitoringEventApi);
  std::lock_guard lock(mutex_);
  auto it = monitoring_.find(subscriptionId);
  if (it == monitoring_.end() || it->second.afId != afId) {
    throw Error(Errc::UnknownSubscription, subscriptionId);
  }
  monitoring_.erase(it);
}

std::vector<Notification> NefService::evaluate_monitoring_tick(
    const std::map<std::string, double>& currentLoads) {
  std::lock_guard lock(mutex_);
  std::vector<Notification> emitted;
  for (auto& [id, sub] : monitoring_) {
    auto load = currentLoads.find(sub.cellId);
    if (load == currentLoads.end()) continue;
    const auto side = load->second >= sub.upperThreshold ? LoadSide::Above : LoadSide::Below;
    if (sub.lastReportedSide == LoadSide::Below && side == LoadSide::Above) {
      Notification n;
      n.subscriptionId = id;
      n.kind = NotificationKind::CellLoadCrossed;
      n.cellId = sub.cellId;
      n.loadRatio = load->second;
      n = stamp(n);
      dispatcher_.enqueue(n, sub.notificationUri);
      emitted.push_back(std::move(n));
    }
    sub.lastReportedSide = side;
  }
  return emitted;
}

TrafficInfluenceSubscription NefService::create_traffic_influence(
    const std::string& afId, const std::string& token, const std::string& flowId,
    const std::string& dnai, const std::string& notificationUri) {
  authorize(afId, token, kTrafficInfluenceApi);
  net::Route route;
  if (dnai == "edge") {
    route = net::Route::Edge;
  } else if (dnai == "core") {
    route = net::Route::Core;
  } else {
    throw Error(Errc::BadDnai, dnai);
  }

  std::lock_guard lock(mutex_);
  network_.apply_traffic_influence(flowId, route);
  TrafficInfluenceSubscription sub{next_id("ti"), afId, flowId, dnai, notificationUri};
  influence_.emplace(sub.subscriptionId, sub);
  return sub;
}

void NefService::delete_traffic_influence(const std::string& afId, const std::string& token,
                                          const std::string& subscriptionId) {
  authorize(afId, token, kTrafficInfluenceApi);
  std::lock_guard lock(mutex_);
  auto it = influence_.find(subscriptionId);
  if (it == influence_.end() || it->second.afId != afId) {
    throw Error(Errc::UnknownSubscription, subscriptionId);
  }
  const auto flowId = it->second.flowId;
  influence_.erase(it);
  // Fall back to the core path unless another live rule still steers the flow.
  bool stillSteered = false;
  for (const auto& [id, sub] : influence_) {
    if (sub.flowId == flowId && sub.dnai == "edge") stillSteered = true;
  }
  if (!stillSteered && network_.has_flow(flowId)) {
    network_.apply_traffic_influence(flowId, net::Route::Core);
  }
}

PdtqNegotiation NefService::pdtq_negotiate(const std::string& afId, const std::string& token,
                                           const std::string& flowId,
                                           const std::vector<net::TickWindow>& requestedWindows,
                                           net::Mbps desiredRate, double efficiency) {
  authorize(afId, token, kPdtqApi);
  if (requestedWindows.empty()) throw Error(Errc::NoWindows);
  for (const auto& w : requestedWindows) {
    if (w.startTick < 0 || w.startTick > w.endTick) {
      throw Error(Errc::BadWindow, std::to_string(w.startTick) + ".." + std::to_string(w.endTick));
    }
  }
  if (!(desiredRate > 0.0) || !(efficiency > 0.0 && efficiency <= 1.0)) {
    throw Error(Errc::BadRequest, "desiredRate must be > 0 and efficiency in (0, 1]");
  }

  std::lock_guard lock(mutex_);
  if (!network_.has_flow(flowId)) throw Error(Errc::UnknownFlow, flowId);

  PdtqNegotiation negotiation;
  negotiation.negotiationId = next_id("pdtq");
  negotiation.afId = afId;
  negotiation.flowId = flowId;
  negotiation.requestedWindows = requestedWindows;
  negotiation.desiredRate = desiredRate;
  negotiation.efficiency = efficiency;

  const net::GbrDemand demand{desiredRate, efficiency};
  for (std::size_t i = 0; i < requestedWindows.size(); ++i) {
    const auto& window = requestedWindows[i];
    if (!network_.would_admit_booking(window, demand).admitted) continue;
    const double peak = network_.predicted_load(window, demand);
    if (peak > config_.pdtqLoadCeiling) continue;
    negotiation.candidatePolicies.push_back({"policy-" + std::to_string(i + 1), window, peak});
  }
  negotiations_.emplace(negotiation.negotiationId, negotiation);
  return negotiation;
}

void NefService::pdtq_select(const std::string& afId, const std::string& token,
                             const std::string& negotiationId, const std::string& policyId) {
  authorize(afId, token, kPdtqApi);
  std::lock_guard lock(mutex_);
  auto it = negotiations_.find(negotiationId);
  if (it == negotiations_.end() || it->second.afId != afId) {
    throw Error(Errc::UnknownNegotiation, negotiationId);
  }
  auto& negotiation = it->second;
  const CandidatePolicy* chosen = nullptr;
  for (const auto& c : negotiation.candidatePolicies) {
    if (c.policyId == policyId) chosen = &c;
  }
  if (chosen == nullptr) throw Error(Errc::UnknownPolicy, policyId);
  if (negotiation.selectedPolicyId) throw Error(Errc::AlreadySelected, *negotiation.selectedPolicyId);

  const auto booked = network_.book_gbr(negotiation.flowId, chosen->window, negotiation.desiredRate);
  if (!booked.admitted) throw Error(Errc::GbrBudgetExceeded, policyId);
  negotiation.selectedPolicyId = policyId;
}

PdtqNegotiation NefService::pdtq_get(const std::string& afId, const std::string& token,
                                     const std::string& negotiationId) {
  authorize(afId, token, kPdtqApi);
  std::lock_guard lock(mutex_);
  auto it = negotiations_.find(negotiationId);
  if (it == negotiations_.end() || it->second.afId != afId) {
    throw Error(Errc::UnknownNegotiation, negotiationId);
  }
  return it->second;
}

std::set<std::string> NefService::guaranteed_flows() const {
  std::lock_guard lock(mutex_);
  std::set<std::string> out;
  for (const auto& [id, sub] : qos_) {
    if (sub.status == QosStatus::Guaranteed) out.insert(sub.flowId);
  }
  return out;
}

}  // namespace capifqos::nef
