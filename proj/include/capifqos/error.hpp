#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capifqos {

// Error codes shared by every module. The string form is the wire name used
// in HTTP error bodies; several codes map onto the same HTTP status.
enum class Errc {
  // capif-core
  EmptyDomainName,
  UnknownProvider,
  BadSecret,
  DuplicateApi,
  UnknownApi,
  NotOwner,
  EmptyName,
  UnknownInvoker,
  BadCredential,
  ScopeNotPublished,
  EmptyScope,
  InvalidDescription,
  // network-model
  UnknownUe,
  UnknownCell,
  InfeasibleGbr,
  NotAdmitted,
  UnknownFlow,
  InvalidModel,
  // nef-service
  Unauthenticated,  // AUTH_DENIED, 401
  AuthDenied,       // AUTH_DENIED, 403
  UnknownQosReference,
  DuplicateSubscription,
  GbrBudgetExceeded,
  UnknownSubscription,
  BadThreshold,
  BadDnai,
  NoWindows,
  BadWindow,
  UnknownNegotiation,
  UnknownPolicy,
  AlreadySelected,
  DeliveryExhausted,
  // invoker-client
  DiscoveryEmpty,
  CcfUnreachable,
  NefUnreachable,
  // scenario-harness
  SpecInvalid,
  BadFlag,
  BadConfig,
  IoError,
  // transport
  BadRequest,
  Internal,
};

std::string_view to_string(Errc code);

// HTTP status an error maps to at the REST bindings.
int http_status(Errc code);

// Inverse of (to_string, http_status); unknown names map to Errc::Internal.
Errc errc_from_wire(std::string_view name, int status);

class Error : public std::runtime_error {
 public:
  explicit Error(Errc code, const std::string& detail = {});

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace capifqos
