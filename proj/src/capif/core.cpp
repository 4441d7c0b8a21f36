#include "capifqos/capif/core.hpp"

#include "capifqos/error.hpp"

#include <chrono>
#include <cstdio>

namespace capifqos::capif {

std::string_view to_string(ApiStatus status) {
  return status == ApiStatus::Published ? "PUBLISHED" : "UNPUBLISHED";
}

std::string_view to_string(TokenRejection reason) {
  switch (reason) {
    case TokenRejection::None: return "NONE";
    case TokenRejection::UnknownToken: return "UNKNOWN_TOKEN";
    case TokenRejection::Expired: return "EXPIRED";
    case TokenRejection::OutOfScope: return "OUT_OF_SCOPE";
  }
  return "UNKNOWN_TOKEN";
}

Clock system_clock() {
  return [] {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

CoreFunction::CoreFunction(Clock clock, std::optional<std::uint64_t> seed)
    : clock_(std::move(clock)),
      rng_(seed ? *seed : std::random_device{}()) {}

std::string CoreFunction::next_id(const char* prefix, std::uint64_t& counter) {
  // Zero-padded so lexicographic order equals creation order.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%08llu", prefix,
                static_cast<unsigned long long>(++counter));
  return buf;
}

// Not a CSPRNG; credentials here only need to be unguessable within the sandbox.
std::string CoreFunction::random_hex(std::size_t chars) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(chars);
  while (out.size() < chars) {
    auto word = rng_();
    for (int i = 0; i < 16 && out.size() < chars; ++i, word >>= 4) {
      out.push_back(kDigits[word & 0xF]);
    }
  }
  return out;
}

bool CoreFunction::is_published(const ScopeEntry& entry) const {
  for (const auto& [id, api] : apis_) {
    if (api.status == ApiStatus::Published && api.aefId == entry.aefId &&
        api.apiName == entry.apiName) {
      return true;
    }
  }
  return false;
}

ProviderRegistration CoreFunction::register_provider(
    const std::string& domainName) {
  if (domainName.empty()) throw Error(Errc::EmptyDomainName);
  std::lock_guard lock(mutex_);
  ProviderRegistration reg{next_id("prov", providerCounter_), domainName,
                           random_hex(32)};
  providers_.emplace(reg.providerId, reg);
  return reg;
}

ServiceApiDescription CoreFunction::publish_service_api(
    const std::string& providerId, const std::string& providerSecret,
    const ServiceApiDraft& draft) {
  if (draft.apiName.empty() || draft.aefId.empty()) {
    throw Error(Errc::InvalidDescription, "apiName and aefId are required");
  }
  if (draft.endpoint.port < 1 || draft.endpoint.port > 65535) {
    throw Error(Errc::InvalidDescription, "endpoint port out of range");
  }

  std::lock_guard lock(mutex_);
  auto provider = providers_.find(providerId);
  if (provider == providers_.end()) throw Error(Errc::UnknownProvider, providerId);
  if (provider->second.providerSecret != providerSecret) throw Error(Errc::BadSecret);

  for (const auto& [id, api] : apis_) {
    if (api.status == ApiStatus::Published && api.providerId == providerId &&
        api.apiName == draft.apiName && api.version == draft.version) {
      throw Error(Errc::DuplicateApi, draft.apiName + " " + draft.version);
    }
  }

  ServiceApiDescription desc;
  desc.apiId = next_id("api", apiCounter_);
  desc.apiName = draft.apiName;
  desc.providerId = providerId;
  desc.aefId = draft.aefId;
  desc.endpoint = draft.endpoint;
  desc.securityMethod = draft.securityMethod;
  desc.version = draft.version;
  desc.status = ApiStatus::Published;
  apis_.emplace(desc.apiId, desc);
  return desc;
}

void CoreFunction::unpublish_service_api(const std::string& providerId,
                                         const std::string& providerSecret,
                                         const std::string& apiId) {
  std::lock_guard lock(mutex_);
  auto provider = providers_.find(providerId);
  if (provider == providers_.end()) throw Error(Errc::UnknownProvider, providerId);
  if (provider->second.providerSecret != providerSecret) throw Error(Errc::BadSecret);

  auto api = apis_.find(apiId);
  if (api == apis_.end()) throw Error(Errc::UnknownApi, apiId);
  if (api->second.providerId != providerId) throw Error(Errc::NotOwner, apiId);
  // Outstanding tokens naming this API stay valid until they expire.
  api->second.status = ApiStatus::Unpublished;
}

InvokerProfile CoreFunction::onboard_invoker(const std::string& displayName) {
  if (displayName.empty()) throw Error(Errc::EmptyName);
  std::lock_guard lock(mutex_);
  InvokerProfile profile{next_id("inv", invokerCounter_), displayName,
                         random_hex(32)};
  invokers_.emplace(profile.invokerId, profile);
  return profile;
}

std::vector<ServiceApiDescription> CoreFunction::discover_service_apis(
    const DiscoveryQuery& query) const {
  std::lock_guard lock(mutex_);
  if (!invokers_.contains(query.invokerId)) {
    throw Error(Errc::UnknownInvoker, query.invokerId);
  }
  std::vector<ServiceApiDescription> out;
  // std::map iteration already yields ascending apiId.
  for (const auto& [id, api] : apis_) {
    if (api.status != ApiStatus::Published) continue;
    if (query.apiNameFilter && api.apiName != *query.apiNameFilter) continue;
    if (query.aefIdFilter && api.aefId != *query.aefIdFilter) continue;
    out.push_back(api);
  }
  return out;
}

AccessToken CoreFunction::issue_token(const std::string& invokerId,
                                      const std::string& onboardingCredential,
                                      const Scope& requestedScope) {
  std::lock_guard lock(mutex_);
  auto invoker = invokers_.find(invokerId);
  if (invoker == invokers_.end()) throw Error(Errc::UnknownInvoker, invokerId);
  if (invoker->second.onboardingCredential != onboardingCredential) {
    throw Error(Errc::BadCredential);
  }
  if (requestedScope.empty()) throw Error(Errc::EmptyScope);
  for (const auto& entry : requestedScope) {
    if (!is_published(entry)) {
      throw Error(Errc::ScopeNotPublished, entry.aefId + "/" + entry.apiName);
    }
  }

  AccessToken token;
  do {
    token.tokenString = random_hex(40);
  } while (tokens_.contains(token.tokenString));
  token.invokerId = invokerId;
  token.scope = requestedScope;
  token.issuedAt = clock_();
  token.expiresIn = kDefaultTokenLifetime;
  tokens_.emplace(token.tokenString, token);
  return token;
}

IntrospectionResult CoreFunction::introspect_token(
    const std::string& tokenString, const std::string& aefId,
    const std::string& apiName) const {
  std::lock_guard lock(mutex_);
  IntrospectionResult result;
  auto it = tokens_.find(tokenString);
  if (it == tokens_.end()) return result;

  const auto& token = it->second;
  if (clock_() >= token.issuedAt + token.expiresIn) {
    result.reason = TokenRejection::Expired;
    return result;
  }
  if (!token.scope.contains(ScopeEntry{aefId, apiName})) {
    result.reason = TokenRejection::OutOfScope;
    result.invokerId = token.invokerId;
    return result;
  }
  result.active = true;
  result.invokerId = token.invokerId;
  result.reason = TokenRejection::None;
  return result;
}

std::vector<ServiceApiDescription> CoreFunction::catalog() const {
  std::lock_guard lock(mutex_);
  std::vector<ServiceApiDescription> out;
  out.reserve(apis_.size());
  for (const auto& [id, api] : apis_) out.push_back(api);
  return out;
}

std::size_t CoreFunction::provider_count() const {
  std::lock_guard lock(mutex_);
  return providers_.size();
}

std::size_t CoreFunction::invoker_count() const {
  std::lock_guard lock(mutex_);
  return invokers_.size();
}

}  // namespace capifqos::capif
