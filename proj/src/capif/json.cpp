#include "capifqos/capif/json.hpp"

#include "capifqos/error.hpp"

namespace capifqos::capif {

using nlohmann::json;

namespace {

SecurityMethod security_from(const std::string& s) {
  if (s == "TOKEN") return SecurityMethod::Token;
  throw Error(Errc::InvalidDescription, "unsupported securityMethod " + s);
}

ApiStatus status_from(const std::string& s) {
  if (s == "PUBLISHED") return ApiStatus::Published;
  if (s == "UNPUBLISHED") return ApiStatus::Unpublished;
  throw Error(Errc::BadRequest, "bad status " + s);
}

TokenRejection rejection_from(const std::string& s) {
  if (s == "NONE") return TokenRejection::None;
  if (s == "EXPIRED") return TokenRejection::Expired;
  if (s == "OUT_OF_SCOPE") return TokenRejection::OutOfScope;
  return TokenRejection::UnknownToken;
}

}  // namespace

void to_json(json& j, const Endpoint& e) {
  j = json{{"host", e.host}, {"port", e.port}, {"basePath", e.basePath}};
}

void from_json(const json& j, Endpoint& e) {
  j.at("host").get_to(e.host);
  j.at("port").get_to(e.port);
  e.basePath = j.value("basePath", "");
}

void to_json(json& j, const ProviderRegistration& p) {
  j = json{{"providerId", p.providerId},
           {"domainName", p.domainName},
           {"providerSecret", p.providerSecret}};
}

void from_json(const json& j, ProviderRegistration& p) {
  j.at("providerId").get_to(p.providerId);
  j.at("domainName").get_to(p.domainName);
  p.providerSecret = j.value("providerSecret", "");
}

void to_json(json& j, const ServiceApiDraft& d) {
  j = json{{"apiName", d.apiName},
           {"aefId", d.aefId},
           {"endpoint", d.endpoint},
           {"securityMethod", "TOKEN"},
           {"version", d.version}};
}

void from_json(const json& j, ServiceApiDraft& d) {
  j.at("apiName").get_to(d.apiName);
  j.at("aefId").get_to(d.aefId);
  j.at("endpoint").get_to(d.endpoint);
  d.securityMethod = security_from(j.value("securityMethod", "TOKEN"));
  d.version = j.value("version", "v1");
}

void to_json(json& j, const ServiceApiDescription& d) {
  j = json{{"apiId", d.apiId},
           {"apiName", d.apiName},
           {"providerId", d.providerId},
           {"aefId", d.aefId},
           {"endpoint", d.endpoint},
           {"securityMethod", "TOKEN"},
           {"version", d.version},
           {"status", std::string(to_string(d.status))}};
}

void from_json(const json& j, ServiceApiDescription& d) {
  j.at("apiId").get_to(d.apiId);
  j.at("apiName").get_to(d.apiName);
  j.at("providerId").get_to(d.providerId);
  j.at("aefId").get_to(d.aefId);
  j.at("endpoint").get_to(d.endpoint);
  d.securityMethod = security_from(j.value("securityMethod", "TOKEN"));
  j.at("version").get_to(d.version);
  d.status = status_from(j.value("status", "PUBLISHED"));
}

void to_json(json& j, const InvokerProfile& p) {
  j = json{{"invokerId", p.invokerId},
           {"displayName", p.displayName},
           {"onboardingCredential", p.onboardingCredential}};
}

void from_json(const json& j, InvokerProfile& p) {
  j.at("invokerId").get_to(p.invokerId);
  j.at("displayName").get_to(p.displayName);
  p.onboardingCredential = j.value("onboardingCredential", "");
}

void to_json(json& j, const ScopeEntry& s) {
  j = json{{"aefId", s.aefId}, {"apiName", s.apiName}};
}

void from_json(const json& j, ScopeEntry& s) {
  j.at("aefId").get_to(s.aefId);
  j.at("apiName").get_to(s.apiName);
}

void to_json(json& j, const AccessToken& t) {
  j = json{{"accessToken", t.tokenString},
           {"invokerId", t.invokerId},
           {"scope", t.scope},
           {"issuedAt", t.issuedAt},
           {"expiresIn", t.expiresIn}};
}

void from_json(const json& j, AccessToken& t) {
  j.at("accessToken").get_to(t.tokenString);
  j.at("invokerId").get_to(t.invokerId);
  t.scope = j.at("scope").get<Scope>();
  j.at("issuedAt").get_to(t.issuedAt);
  j.at("expiresIn").get_to(t.expiresIn);
}

void to_json(json& j, const IntrospectionResult& r) {
  j = json{{"active", r.active}, {"reason", std::string(to_string(r.reason))}};
  if (r.invokerId) j["invokerId"] = *r.invokerId;
}

void from_json(const json& j, IntrospectionResult& r) {
  j.at("active").get_to(r.active);
  r.reason = rejection_from(j.value("reason", "UNKNOWN_TOKEN"));
  if (j.contains("invokerId")) {
    r.invokerId = j.at("invokerId").get<std::string>();
  } else {
    r.invokerId.reset();
  }
}

}  // namespace capifqos::capif
