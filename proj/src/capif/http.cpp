#include "capifqos/capif/http.hpp"

#include "capifqos/capif/json.hpp"

namespace capifqos::capif {

using wire::guarded;
using wire::json;
using wire::send_json;

void mount_routes(httplib::Server& server, CoreFunction& core) {
  server.Post("/capif/providers", [&core](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      auto reg = core.register_provider(body.value("domainName", ""));
      send_json(res, 201, reg);
    });
  });

  server.Post(R"(/capif/providers/([^/]+)/service-apis)",
              [&core](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  auto draft = wire::parse_body(req).get<ServiceApiDraft>();
                  auto desc = core.publish_service_api(
                      req.matches[1], req.get_header_value(kProviderSecretHeader), draft);
                  send_json(res, 201, desc);
                });
              });

  server.Delete(R"(/capif/providers/([^/]+)/service-apis/([^/]+))",
                [&core](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    core.unpublish_service_api(req.matches[1],
                                               req.get_header_value(kProviderSecretHeader),
                                               req.matches[2]);
                    res.status = 204;
                  });
                });

  server.Post("/capif/invokers", [&core](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      send_json(res, 201, core.onboard_invoker(body.value("displayName", "")));
    });
  });

  server.Get("/capif/service-apis", [&core](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      DiscoveryQuery query;
      query.invokerId = req.get_param_value("api-invoker-id");
      if (req.has_param("api-name")) query.apiNameFilter = req.get_param_value("api-name");
      if (req.has_param("aef-id")) query.aefIdFilter = req.get_param_value("aef-id");
      send_json(res, 200, json(core.discover_service_apis(query)));
    });
  });

  server.Post("/capif/security/token", [&core](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      auto token = core.issue_token(body.at("invokerId").get<std::string>(),
                                    body.value("onboardingCredential", ""),
                                    body.at("scope").get<Scope>());
      send_json(res, 201, token);
    });
  });

  server.Post("/capif/security/introspect",
              [&core](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  auto body = wire::parse_body(req);
                  auto result = core.introspect_token(body.value("token", ""),
                                                      body.value("aefId", ""),
                                                      body.value("apiName", ""));
                  send_json(res, 200, result);
                });
              });
}

HttpCcf::HttpCcf(const std::string& baseUrl, double timeoutSeconds)
    : client_(wire::parse_url(baseUrl), Errc::CcfUnreachable, timeoutSeconds) {}

ProviderRegistration HttpCcf::register_provider(const std::string& domainName) {
  return client_.post("/capif/providers", json{{"domainName", domainName}})
      .get<ProviderRegistration>();
}

ServiceApiDescription HttpCcf::publish_service_api(const std::string& providerId,
                                                   const std::string& providerSecret,
                                                   const ServiceApiDraft& draft) {
  return client_
      .post("/capif/providers/" + providerId + "/service-apis", json(draft),
            {{kProviderSecretHeader, providerSecret}})
      .get<ServiceApiDescription>();
}

void HttpCcf::unpublish_service_api(const std::string& providerId,
                                    const std::string& providerSecret,
                                    const std::string& apiId) {
  client_.del("/capif/providers/" + providerId + "/service-apis/" + apiId,
              {{kProviderSecretHeader, providerSecret}});
}

InvokerProfile HttpCcf::onboard_invoker(const std::string& displayName) {
  return client_.post("/capif/invokers", json{{"displayName", displayName}})
      .get<InvokerProfile>();
}

std::vector<ServiceApiDescription> HttpCcf::discover_service_apis(const DiscoveryQuery& query) {
  httplib::Params params{{"api-invoker-id", query.invokerId}};
  if (query.apiNameFilter) params.emplace("api-name", *query.apiNameFilter);
  if (query.aefIdFilter) params.emplace("aef-id", *query.aefIdFilter);
  return client_.get(httplib::append_query_params("/capif/service-apis", params))
      .get<std::vector<ServiceApiDescription>>();
}

AccessToken HttpCcf::issue_token(const std::string& invokerId,
                                 const std::string& onboardingCredential,
                                 const Scope& requestedScope) {
  json body{{"invokerId", invokerId},
            {"onboardingCredential", onboardingCredential},
            {"scope", requestedScope}};
  return client_.post("/capif/security/token", body).get<AccessToken>();
}

IntrospectionResult HttpCcf::introspect_token(const std::string& tokenString,
                                              const std::string& aefId,
                                              const std::string& apiName) {
  json body{{"token", tokenString}, {"aefId", aefId}, {"apiName", apiName}};
  return client_.post("/capif/security/introspect", body).get<IntrospectionResult>();
}

}  // namespace capifqos::capif
