#pragma once

#include "capifqos/capif/core.hpp"
#include "capifqos/wire.hpp"

#include <httplib.h>

namespace capifqos::capif {

// Binds the CCF resources under /capif onto `server`:
//   POST   /capif/providers
//   POST   /capif/providers/{providerId}/service-apis      (X-Provider-Secret)
//   DELETE /capif/providers/{providerId}/service-apis/{apiId}
//   POST   /capif/invokers
//   GET    /capif/service-apis?api-invoker-id=&api-name=&aef-id=
//   POST   /capif/security/token
//   POST   /capif/security/introspect
void mount_routes(httplib::Server& server, CoreFunction& core);

inline constexpr const char* kProviderSecretHeader = "X-Provider-Secret";

// Client-side mirror of CoreFunction over the REST binding.
class HttpCcf {
 public:
  explicit HttpCcf(const std::string& baseUrl, double timeoutSeconds = 5.0);

  ProviderRegistration register_provider(const std::string& domainName);
  ServiceApiDescription publish_service_api(const std::string& providerId,
                                            const std::string& providerSecret,
                                            const ServiceApiDraft& draft);
  void unpublish_service_api(const std::string& providerId,
                             const std::string& providerSecret,
                             const std::string& apiId);
  InvokerProfile onboard_invoker(const std::string& displayName);
  std::vector<ServiceApiDescription> discover_service_apis(const DiscoveryQuery& query);
  AccessToken issue_token(const std::string& invokerId,
                          const std::string& onboardingCredential,
                          const Scope& requestedScope);
  IntrospectionResult introspect_token(const std::string& tokenString,
                                       const std::string& aefId,
                                       const std::string& apiName);

 private:
  wire::JsonClient client_;
};

}  // namespace capifqos::capif
