#pragma once

#include "capifqos/capif/core.hpp"
#include "capifqos/nef/notifications.hpp"
#include "capifqos/nef/types.hpp"
#include "capifqos/net/network_model.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>

namespace capifqos::capif {
class HttpCcf;
}

namespace capifqos::nef {

// AEF-side view of the CCF: answers "may this token call (aefId, apiName)".
class TokenIntrospector {
 public:
  virtual ~TokenIntrospector() = default;
  virtual capif::IntrospectionResult introspect(const std::string& token,
                                                const std::string& aefId,
                                                const std::string& apiName) = 0;
};

class CoreIntrospector : public TokenIntrospector {
 public:
  explicit CoreIntrospector(const capif::CoreFunction& core) : core_(core) {}
  capif::IntrospectionResult introspect(const std::string& token, const std::string& aefId,
                                        const std::string& apiName) override {
    return core_.introspect_token(token, aefId, apiName);
  }

 private:
  const capif::CoreFunction& core_;
};

class HttpIntrospector : public TokenIntrospector {
 public:
  explicit HttpIntrospector(std::shared_ptr<capif::HttpCcf> ccf) : ccf_(std::move(ccf)) {}
  capif::IntrospectionResult introspect(const std::string& token, const std::string& aefId,
                                        const std::string& apiName) override;

 private:
  std::shared_ptr<capif::HttpCcf> ccf_;
};

struct NefConfig {
  std::string aefId = kDefaultAefId;
  QosReferenceTable qosReferences = default_qos_references();
  double pdtqLoadCeiling = 0.95;
};

// Northbound API service. Each operation authorizes the bearer token for
// (aefId, apiName) through the introspector, then mutates NEF and network
// state under the service lock. The first invoker to use an afId owns it;
// other invokers presenting that afId get AUTH_DENIED.
class NefService {
 public:
  NefService(net::NetworkModel& network, std::shared_ptr<TokenIntrospector> introspector,
             NotificationDispatcher& dispatcher, NefConfig config = {});

  const NefConfig& config() const { return config_; }

  QosSubscription create_qos_subscription(const std::string& afId, const std::string& token,
                                          const std::string& flowId,
                                          const std::string& qosReference,
                                          const std::string& notificationUri);
  QosSubscription get_qos_subscription(const std::string& afId, const std::string& token,
                                       const std::string& subscriptionId);
  std::vector<QosSubscription> list_qos_subscriptions(const std::string& afId,
                                                      const std::string& token);
  void delete_qos_subscription(const std::string& afId, const std::string& token,
                               const std::string& subscriptionId);

  MonitoringSubscription create_monitoring_subscription(const std::string& afId,
                                                        const std::string& token,
                                                        const std::string& cellId,
                                                        double upperThreshold,
                                                        const std::string& notificationUri);
  void delete_monitoring_subscription(const std::string& afId, const std::string& token,
                                      const std::string& subscriptionId);

  // Edge-triggered: a subscription fires only on a BELOW -> ABOVE change.
  // Emitted notifications are also queued on the dispatcher.
  std::vector<Notification> evaluate_monitoring_tick(
      const std::map<std::string, double>& currentLoads);

  TrafficInfluenceSubscription create_traffic_influence(const std::string& afId,
                                                        const std::string& token,
                                                        const std::string& flowId,
                                                        const std::string& dnai,
                                                        const std::string& notificationUri);
  void delete_traffic_influence(const std::string& afId, const std::string& token,
                                const std::string& subscriptionId);

  PdtqNegotiation pdtq_negotiate(const std::string& afId, const std::string& token,
                                 const std::string& flowId,
                                 const std::vector<net::TickWindow>& requestedWindows,
                                 net::Mbps desiredRate, double efficiency);
  void pdtq_select(const std::string& afId, const std::string& token,
                   const std::string& negotiationId, const std::string& policyId);
  PdtqNegotiation pdtq_get(const std::string& afId, const std::string& token,
                           const std::string& negotiationId);

  // Flow ids of live subscriptions in GUARANTEED status.
  std::set<std::string> guaranteed_flows() const;

 private:
  std::string authorize(const std::string& afId, const std::string& token,
                        const std::string& apiName);
  Notification stamp(Notification n);
  std::string next_id(const char* prefix);

  net::NetworkModel& network_;
  std::shared_ptr<TokenIntrospector> introspector_;
  NotificationDispatcher& dispatcher_;
  NefConfig config_;

  mutable std::mutex mutex_;
  std::uint64_t idCounter_ = 0;
  std::map<std::string, std::string> afOwners_;  // afId -> invokerId
  std::map<std::string, QosSubscription> qos_;
  std::map<std::string, MonitoringSubscription> monitoring_;
  std::map<std::string, TrafficInfluenceSubscription> influence_;
  std::map<std::string, PdtqNegotiation> negotiations_;
  std::map<std::string, std::uint64_t> sequence_;  // subscriptionId -> last number
};

}  // namespace capifqos::nef
