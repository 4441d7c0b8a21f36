#pragma once

#include "capifqos/nef/service.hpp"
#include "capifqos/wire.hpp"

#include <httplib.h>

namespace capifqos::nef {

// REST paths relative to the NEF root; these are also the basePaths the NEF
// publishes in the CAPIF catalog.
inline constexpr const char* kAsSessionWithQosBase = "/nef/3gpp-as-session-with-qos/v1";
inline constexpr const char* kMonitoringEventBase = "/nef/3gpp-monitoring-event/v1";
inline constexpr const char* kTrafficInfluenceBase = "/nef/3gpp-traffic-influence/v1";
inline constexpr const char* kPdtqBase = "/nef/pdtq/v1";

std::string base_path_for(const std::string& apiName);

// Binds the four northbound APIs onto `server`. Tokens arrive as
// "Authorization: Bearer <token>".
void mount_routes(httplib::Server& server, NefService& service);

// Client for one NEF instance, addressed per API by the endpoints found in
// CAPIF discovery (host:port + basePath).
class HttpNef {
 public:
  struct ApiEndpoint {
    std::string host;
    int port = 0;
    std::string basePath;
  };

  explicit HttpNef(std::map<std::string, ApiEndpoint> endpoints, double timeoutSeconds = 5.0);

  QosSubscription create_qos_subscription(const std::string& afId, const std::string& token,
                                          const std::string& flowId,
                                          const std::string& qosReference,
                                          const std::string& notificationUri);
  QosSubscription get_qos_subscription(const std::string& afId, const std::string& token,
                                       const std::string& subscriptionId);
  void delete_qos_subscription(const std::string& afId, const std::string& token,
                               const std::string& subscriptionId);
  MonitoringSubscription create_monitoring_subscription(const std::string& afId,
                                                        const std::string& token,
                                                        const std::string& cellId,
                                                        double upperThreshold,
                                                        const std::string& notificationUri);
  TrafficInfluenceSubscription create_traffic_influence(const std::string& afId,
                                                        const std::string& token,
                                                        const std::string& flowId,
                                                        const std::string& dnai,
                                                        const std::string& notificationUri);
  PdtqNegotiation pdtq_negotiate(const std::string& afId, const std::string& token,
                                 const std::string& flowId,
                                 const std::vector<net::TickWindow>& requestedWindows,
                                 net::Mbps desiredRate, double efficiency);
  void pdtq_select(const std::string& afId, const std::string& token,
                   const std::string& negotiationId, const std::string& policyId);

 private:
  wire::JsonClient& client_for(const std::string& apiName);

  std::map<std::string, std::unique_ptr<wire::JsonClient>> clients_;
};

}  // namespace capifqos::nef
