#include "capifqos/client/ports.hpp"

#include "capifqos/capif/http.hpp"
#include "capifqos/nef/http.hpp"
#include "capifqos/nef/service.hpp"

namespace capifqos::client {

capif::InvokerProfile InProcessCcf::onboard_invoker(const std::string& displayName) {
  return core_.onboard_invoker(displayName);
}

std::vector<capif::ServiceApiDescription> InProcessCcf::discover_service_apis(
    const capif::DiscoveryQuery& query) {
  return core_.discover_service_apis(query);
}

capif::AccessToken InProcessCcf::issue_token(const std::string& invokerId,
                                             const std::string& onboardingCredential,
                                             const capif::Scope& scope) {
  return core_.issue_token(invokerId, onboardingCredential, scope);
}

nef::QosSubscription InProcessNef::create_qos_subscription(const std::string& afId,
                                                           const std::string& token,
                                                           const std::string& flowId,
                                                           const std::string& qosReference,
                                                           const std::string& notificationUri) {
  return service_.create_qos_subscription(afId, token, flowId, qosReference, notificationUri);
}

nef::MonitoringSubscription InProcessNef::create_monitoring_subscription(
    const std::string& afId, const std::string& token, const std::string& cellId,
    double upperThreshold, const std::string& notificationUri) {
  return service_.create_monitoring_subscription(afId, token, cellId, upperThreshold,
                                                 notificationUri);
}

nef::TrafficInfluenceSubscription InProcessNef::create_traffic_influence(
    const std::string& afId, const std::string& token, const std::string& flowId,
    const std::string& dnai, const std::string& notificationUri) {
  return service_.create_traffic_influence(afId, token, flowId, dnai, notificationUri);
}

HttpCcfPort::HttpCcfPort(const std::string& ccfUrl)
    : ccf_(std::make_unique<capif::HttpCcf>(ccfUrl)) {}

HttpCcfPort::~HttpCcfPort() = default;

capif::InvokerProfile HttpCcfPort::onboard_invoker(const std::string& displayName) {
  return ccf_->onboard_invoker(displayName);
}

std::vector<capif::ServiceApiDescription> HttpCcfPort::discover_service_apis(
    const capif::DiscoveryQuery& query) {
  return ccf_->discover_service_apis(query);
}

capif::AccessToken HttpCcfPort::issue_token(const std::string& invokerId,
                                            const std::string& onboardingCredential,
                                            const capif::Scope& scope) {
  return ccf_->issue_token(invokerId, onboardingCredential, scope);
}

namespace {

std::map<std::string, nef::HttpNef::ApiEndpoint> to_api_endpoints(
    const std::map<std::string, capif::Endpoint>& endpoints) {
  std::map<std::string, nef::HttpNef::ApiEndpoint> out;
  for (const auto& [name, ep] : endpoints) out[name] = {ep.host, ep.port, ep.basePath};
  return out;
}

}  // namespace

HttpNefPort::HttpNefPort(const std::map<std::string, capif::Endpoint>& endpoints)
    : nef_(std::make_unique<nef::HttpNef>(to_api_endpoints(endpoints))) {}

HttpNefPort::~HttpNefPort() = default;

nef::QosSubscription HttpNefPort::create_qos_subscription(const std::string& afId,
                                                          const std::string& token,
                                                          const std::string& flowId,
                                                          const std::string& qosReference,
                                                          const std::string& notificationUri) {
  return nef_->create_qos_subscription(afId, token, flowId, qosReference, notificationUri);
}

nef::MonitoringSubscription HttpNefPort::create_monitoring_subscription(
    const std::string& afId, const std::string& token, const std::string& cellId,
    double upperThreshold, const std::string& notificationUri) {
  return nef_->create_monitoring_subscription(afId, token, cellId, upperThreshold,
                                              notificationUri);
}

nef::TrafficInfluenceSubscription HttpNefPort::create_traffic_influence(
    const std::string& afId, const std::string& token, const std::string& flowId,
    const std::string& dnai, const std::string& notificationUri) {
  return nef_->create_traffic_influence(afId, token, flowId, dnai, notificationUri);
}

}  // namespace capifqos::client
