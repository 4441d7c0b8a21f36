#include "capifqos/error.hpp"

#include <array>
#include <utility>

namespace capifqos {

namespace {

struct ErrcInfo {
  Errc code;
  std::string_view name;
  int status;
};

constexpr std::array kErrcTable{
    ErrcInfo{Errc::EmptyDomainName, "EMPTY_DOMAIN_NAME", 400},
    ErrcInfo{Errc::UnknownProvider, "UNKNOWN_PROVIDER", 404},
    ErrcInfo{Errc::BadSecret, "BAD_SECRET", 401},
    ErrcInfo{Errc::DuplicateApi, "DUPLICATE_API", 409},
    ErrcInfo{Errc::UnknownApi, "UNKNOWN_API", 404},
    ErrcInfo{Errc::NotOwner, "NOT_OWNER", 403},
    ErrcInfo{Errc::EmptyName, "EMPTY_NAME", 400},
    ErrcInfo{Errc::UnknownInvoker, "UNKNOWN_INVOKER", 404},
    ErrcInfo{Errc::BadCredential, "BAD_CREDENTIAL", 401},
    ErrcInfo{Errc::ScopeNotPublished, "SCOPE_NOT_PUBLISHED", 403},
    ErrcInfo{Errc::EmptyScope, "EMPTY_SCOPE", 400},
    ErrcInfo{Errc::InvalidDescription, "INVALID_DESCRIPTION", 400},
    ErrcInfo{Errc::UnknownUe, "UNKNOWN_UE", 404},
    ErrcInfo{Errc::UnknownCell, "UNKNOWN_CELL", 404},
    ErrcInfo{Errc::InfeasibleGbr, "INFEASIBLE_GBR", 500},
    ErrcInfo{Errc::NotAdmitted, "NOT_ADMITTED", 404},
    ErrcInfo{Errc::UnknownFlow, "UNKNOWN_FLOW", 404},
    ErrcInfo{Errc::InvalidModel, "INVALID_MODEL", 400},
    ErrcInfo{Errc::Unauthenticated, "AUTH_DENIED", 401},
    ErrcInfo{Errc::AuthDenied, "AUTH_DENIED", 403},
    ErrcInfo{Errc::UnknownQosReference, "UNKNOWN_QOS_REFERENCE", 422},
    ErrcInfo{Errc::DuplicateSubscription, "DUPLICATE_SUBSCRIPTION", 409},
    ErrcInfo{Errc::GbrBudgetExceeded, "GBR_BUDGET_EXCEEDED", 409},
    ErrcInfo{Errc::UnknownSubscription, "UNKNOWN_SUBSCRIPTION", 404},
    ErrcInfo{Errc::BadThreshold, "BAD_THRESHOLD", 422},
    ErrcInfo{Errc::BadDnai, "BAD_DNAI", 422},
    ErrcInfo{Errc::NoWindows, "NO_WINDOWS", 422},
    ErrcInfo{Errc::BadWindow, "BAD_WINDOW", 422},
    ErrcInfo{Errc::UnknownNegotiation, "UNKNOWN_NEGOTIATION", 404},
    ErrcInfo{Errc::UnknownPolicy, "UNKNOWN_POLICY", 404},
    ErrcInfo{Errc::AlreadySelected, "ALREADY_SELECTED", 409},
    ErrcInfo{Errc::DeliveryExhausted, "DELIVERY_EXHAUSTED", 504},
    ErrcInfo{Errc::DiscoveryEmpty, "DISCOVERY_EMPTY", 404},
    ErrcInfo{Errc::CcfUnreachable, "CCF_UNREACHABLE", 503},
    ErrcInfo{Errc::NefUnreachable, "NEF_UNREACHABLE", 503},
    ErrcInfo{Errc::SpecInvalid, "SPEC_INVALID", 400},
    ErrcInfo{Errc::BadFlag, "BAD_FLAG", 400},
    ErrcInfo{Errc::BadConfig, "BAD_CONFIG", 400},
    ErrcInfo{Errc::IoError, "IO_ERROR", 500},
    ErrcInfo{Errc::BadRequest, "BAD_REQUEST", 400},
    ErrcInfo{Errc::Internal, "INTERNAL", 500},
};

const ErrcInfo& lookup(Errc code) {
  for (const auto& info : kErrcTable) {
    if (info.code == code) return info;
  }
  return kErrcTable.back();
}

std::string make_message(Errc code, const std::string& detail) {
  std::string msg{to_string(code)};
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

std::string_view to_string(Errc code) { return lookup(code).name; }

int http_status(Errc code) { return lookup(code).status; }

Errc errc_from_wire(std::string_view name, int status) {
  Errc fallback = Errc::Internal;
  bool have_fallback = false;
  for (const auto& info : kErrcTable) {
    if (info.name != name) continue;
    if (info.status == status) return info.code;
    if (!have_fallback) {
      fallback = info.code;
      have_fallback = true;
    }
  }
  return fallback;
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(make_message(code, detail)), code_(code) {}

}  // namespace capifqos
