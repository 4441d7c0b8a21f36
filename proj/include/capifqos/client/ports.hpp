#pragma once

// What the invoker needs from the CCF and the NEF, with in-process and HTTP
// implementations so the same agent runs in simulation and live mode.

#include "capifqos/capif/core.hpp"
#include "capifqos/nef/types.hpp"

#include <functional>
#include <map>
#include <memory>

namespace capifqos::capif {
class HttpCcf;
}
namespace capifqos::nef {
class NefService;
class HttpNef;
}  // namespace capifqos::nef

namespace capifqos::client {

class CcfPort {
 public:
  virtual ~CcfPort() = default;
  virtual capif::InvokerProfile onboard_invoker(const std::string& displayName) = 0;
  virtual std::vector<capif::ServiceApiDescription> discover_service_apis(
      const capif::DiscoveryQuery& query) = 0;
  virtual capif::AccessToken issue_token(const std::string& invokerId,
                                         const std::string& onboardingCredential,
                                         const capif::Scope& scope) = 0;
};

class NefPort {
 public:
  virtual ~NefPort() = default;
  virtual nef::QosSubscription create_qos_subscription(const std::string& afId,
                                                       const std::string& token,
                                                       const std::string& flowId,
                                                       const std::string& qosReference,
                                                       const std::string& notificationUri) = 0;
  virtual nef::MonitoringSubscription create_monitoring_subscription(
      const std::string& afId, const std::string& token, const std::string& cellId,
      double upperThreshold, const std::string& notificationUri) = 0;
  virtual nef::TrafficInfluenceSubscription create_traffic_influence(
      const std::string& afId, const std::string& token, const std::string& flowId,
      const std::string& dnai, const std::string& notificationUri) = 0;
};

// Builds a NefPort once endpoints are known from discovery.
using NefPortFactory = std::function<std::unique_ptr<NefPort>(
    const std::map<std::string, capif::Endpoint>& endpoints)>;

class InProcessCcf : public CcfPort {
 public:
  explicit InProcessCcf(capif::CoreFunction& core) : core_(core) {}
  capif::InvokerProfile onboard_invoker(const std::string& displayName) override;
  std::vector<capif::ServiceApiDescription> discover_service_apis(
      const capif::DiscoveryQuery& query) override;
  capif::AccessToken issue_token(const std::string& invokerId,
                                 const std::string& onboardingCredential,
                                 const capif::Scope& scope) override;

 private:
  capif::CoreFunction& core_;
};

class InProcessNef : public NefPort {
 public:
  explicit InProcessNef(nef::NefService& service) : service_(service) {}
  nef::QosSubscription create_qos_subscription(const std::string& afId, const std::string& token,
                                               const std::string& flowId,
                                               const std::string& qosReference,
                                               const std::string& notificationUri) override;
  nef::MonitoringSubscription create_monitoring_subscription(
      const std::string& afId, const std::string& token, const std::string& cellId,
      double upperThreshold, const std::string& notificationUri) override;
  nef::TrafficInfluenceSubscription create_traffic_influence(
      const std::string& afId, const std::string& token, const std::string& flowId,
      const std::string& dnai, const std::string& notificationUri) override;

 private:
  nef::NefService& service_;
};

class HttpCcfPort : public CcfPort {
 public:
  explicit HttpCcfPort(const std::string& ccfUrl);
  ~HttpCcfPort() override;
  capif::InvokerProfile onboard_invoker(const std::string& displayName) override;
  std::vector<capif::ServiceApiDescription> discover_service_apis(
      const capif::DiscoveryQuery& query) override;
  capif::AccessToken issue_token(const std::string& invokerId,
                                 const std::string& onboardingCredential,
                                 const capif::Scope& scope) override;

 private:
  std::unique_ptr<capif::HttpCcf> ccf_;
};

class HttpNefPort : public NefPort {
 public:
  explicit HttpNefPort(const std::map<std::string, capif::Endpoint>& endpoints);
  ~HttpNefPort() override;
  nef::QosSubscription create_qos_subscription(const std::string& afId, const std::string& token,
                                               const std::string& flowId,
                                               const std::string& qosReference,
                                               const std::string& notificationUri) override;
  nef::MonitoringSubscription create_monitoring_subscription(
      const std::string& afId, const std::string& token, const std::string& cellId,
      double upperThreshold, const std::string& notificationUri) override;
  nef::TrafficInfluenceSubscription create_traffic_influence(
      const std::string& afId, const std::string& token, const std::string& flowId,
      const std::string& dnai, const std::string& notificationUri) override;

 private:
  std::unique_ptr<nef::HttpNef> nef_;
};

}  // namespace capifqos::client
