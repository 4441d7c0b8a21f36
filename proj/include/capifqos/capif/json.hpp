#pragma once

#include "capifqos/capif/core.hpp"

#include <json.hpp>

namespace capifqos::capif {

void to_json(nlohmann::json& j, const Endpoint& e);
void from_json(const nlohmann::json& j, Endpoint& e);
void to_json(nlohmann::json& j, const ProviderRegistration& p);
void from_json(const nlohmann::json& j, ProviderRegistration& p);
void to_json(nlohmann::json& j, const ServiceApiDraft& d);
void from_json(const nlohmann::json& j, ServiceApiDraft& d);
void to_json(nlohmann::json& j, const ServiceApiDescription& d);
void from_json(const nlohmann::json& j, ServiceApiDescription& d);
void to_json(nlohmann::json& j, const InvokerProfile& p);
void from_json(const nlohmann::json& j, InvokerProfile& p);
void to_json(nlohmann::json& j, const ScopeEntry& s);
void from_json(const nlohmann::json& j, ScopeEntry& s);
void to_json(nlohmann::json& j, const AccessToken& t);
void from_json(const nlohmann::json& j, AccessToken& t);
void to_json(nlohmann::json& j, const IntrospectionResult& r);
void from_json(const nlohmann::json& j, IntrospectionResult& r);

}  // namespace capifqos::capif
