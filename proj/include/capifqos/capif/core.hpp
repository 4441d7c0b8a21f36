#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace capifqos::capif {

struct ProviderRegistration {
  std::string providerId;
  std::string domainName;
  std::string providerSecret;
};

struct Endpoint {
  std::string host;
  int port = 0;
  std::string basePath;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

enum class SecurityMethod { Token };
enum class ApiStatus { Published, Unpublished };

// What a provider supplies at publication; the CCF assigns ids and status.
struct ServiceApiDraft {
  std::string apiName;
  std::string aefId;
  Endpoint endpoint;
  SecurityMethod securityMethod = SecurityMethod::Token;
  std::string version = "v1";
};

struct ServiceApiDescription {
  std::string apiId;
  std::string apiName;
  std::string providerId;
  std::string aefId;
  Endpoint endpoint;
  SecurityMethod securityMethod = SecurityMethod::Token;
  std::string version;
  ApiStatus status = ApiStatus::Published;
};

struct InvokerProfile {
  std::string invokerId;
  std::string displayName;
  std::string onboardingCredential;
};

struct ScopeEntry {
  std::string aefId;
  std::string apiName;

  friend auto operator<=>(const ScopeEntry&, const ScopeEntry&) = default;
};

using Scope = std::set<ScopeEntry>;

struct AccessToken {
  std::string tokenString;
  std::string invokerId;
  Scope scope;
  std::int64_t issuedAt = 0;
  std::int64_t expiresIn = 3600;
};

struct DiscoveryQuery {
  std::string invokerId;
  std::optional<std::string> apiNameFilter;
  std::optional<std::string> aefIdFilter;
};

// Why an introspection came back inactive. Lets an exposing function tell
// "who are you" (401) apart from "not allowed" (403).
enum class TokenRejection { None, UnknownToken, Expired, OutOfScope };

struct IntrospectionResult {
  bool active = false;
  std::optional<std::string> invokerId;
  TokenRejection reason = TokenRejection::UnknownToken;
};

std::string_view to_string(ApiStatus status);
std::string_view to_string(TokenRejection reason);

// Wall-clock source in whole seconds.
using Clock = std::function<std::int64_t()>;

Clock system_clock();

// Single CAPIF Core Function instance: provider registry, published API
// catalog, invoker registry and token store. Every public operation runs
// under one registry lock.
class CoreFunction {
 public:
  static constexpr std::int64_t kDefaultTokenLifetime = 3600;

  explicit CoreFunction(Clock clock = system_clock(),
                        std::optional<std::uint64_t> seed = std::nullopt);

  ProviderRegistration register_provider(const std::string& domainName);

  ServiceApiDescription publish_service_api(const std::string& providerId,
                                            const std::string& providerSecret,
                                            const ServiceApiDraft& draft);

  void unpublish_service_api(const std::string& providerId,
                             const std::string& providerSecret,
                             const std::string& apiId);

  InvokerProfile onboard_invoker(const std::string& displayName);

  // Published entries matching every present filter, ascending apiId.
  std::vector<ServiceApiDescription> discover_service_apis(
      const DiscoveryQuery& query) const;

  AccessToken issue_token(const std::string& invokerId,
                          const std::string& onboardingCredential,
                          const Scope& requestedScope);

  IntrospectionResult introspect_token(const std::string& tokenString,
                                       const std::string& aefId,
                                       const std::string& apiName) const;

  // Full catalog including unpublished entries, ascending apiId.
  std::vector<ServiceApiDescription> catalog() const;
  std::size_t provider_count() const;
  std::size_t invoker_count() const;

 private:
  std::string next_id(const char* prefix, std::uint64_t& counter);
  std::string random_hex(std::size_t chars);
  bool is_published(const ScopeEntry& entry) const;

  mutable std::mutex mutex_;
  Clock clock_;
  std::mt19937_64 rng_;

  std::uint64_t providerCounter_ = 0;
  std::uint64_t apiCounter_ = 0;
  std::uint64_t invokerCounter_ = 0;

  std::map<std::string, ProviderRegistration> providers_;
  std::map<std::string, ServiceApiDescription> apis_;
  std::map<std::string, InvokerProfile> invokers_;
  std::map<std::string, AccessToken> tokens_;
};

}  // namespace capifqos::capif
