#include "capifqos/client/invoker.hpp"

#include "capifqos/error.hpp"

namespace capifqos::client {

InvokerClient::InvokerClient(CcfPort& ccf, NefPortFactory nefFactory, AdaptationConfig config,
                             ClientBinding binding)
    : ccf_(ccf),
      nefFactory_(std::move(nefFactory)),
      config_(std::move(config)),
      binding_(std::move(binding)) {
  validate(config_);
}

const ClientState& InvokerClient::onboard_and_discover() {
  std::lock_guard lock(mutex_);
  if (!profile_) profile_ = ccf_.onboard_invoker(binding_.displayName);

  const auto apis = ccf_.discover_service_apis({profile_->invokerId, std::nullopt, std::nullopt});

  std::map<std::string, capif::Endpoint> endpoints;
  capif::Scope scope;
  for (const auto& required : nef::nef_api_names()) {
    const capif::ServiceApiDescription* match = nullptr;
    for (const auto& api : apis) {
      if (api.apiName == required) {
        match = &api;
        break;
      }
    }
    if (match == nullptr) throw Error(Errc::DiscoveryEmpty, required);
    endpoints[required] = match->endpoint;
    scope.insert({match->aefId, match->apiName});
  }

  token_ = ccf_.issue_token(profile_->invokerId, profile_->onboardingCredential, scope);
  nef_ = nefFactory_(endpoints);
  state_.discoveredEndpoints = std::move(endpoints);
  if (state_.phase == Phase::Init) state_.phase = Phase::Discovered;
  return state_;
}

void InvokerClient::enqueue_notification(const nef::Notification& notification) {
  std::lock_guard lock(inboxMutex_);
  inbox_.push_back(notification);
}

StepOutcome InvokerClient::step(net::Mbps measuredRate) {
  std::lock_guard lock(mutex_);
  StepOutcome outcome;

  std::deque<nef::Notification> inbox;
  {
    std::lock_guard inboxLock(inboxMutex_);
    inbox.swap(inbox_);
  }
  for (const auto& notification : inbox) {
    try {
      const auto before = state_.phase;
      state_ = handle_notification(notification, state_, config_);
      outcome.events.push_back("NOTIFY_" + std::string(nef::to_string(notification.kind)));
      if (before != state_.phase) outcome.events.emplace_back(to_string(state_.phase));
    } catch (const Error&) {
      outcome.events.push_back("STRAY_NOTIFICATION");
    }
  }

  if (state_.phase == Phase::Init) return outcome;

  auto result = control_step(measuredRate, state_, config_);
  state_ = std::move(result.state);
  outcome.actions = std::move(result.actions);
  for (auto action : outcome.actions) execute(action, outcome);
  return outcome;
}

void InvokerClient::execute(Action action, StepOutcome& outcome) {
  if (action == Action::Noop) return;
  outcome.events.emplace_back(to_string(action));
  if (!nef_ || !token_) {
    outcome.events.push_back("NEF_NOT_DISCOVERED");
    return;
  }
  const auto& token = token_->tokenString;
  ++nefCalls_;
  try {
    switch (action) {
      case Action::SubscribeMonitoring: {
        auto sub = nef_->create_monitoring_subscription(binding_.afId, token, binding_.cellId,
                                                        config_.monitorCellLoadThreshold,
                                                        binding_.notificationUri);
        state_.activeSubscriptionIds.monitoring = sub.subscriptionId;
        break;
      }
      case Action::RequestEdge: {
        auto sub = nef_->create_traffic_influence(binding_.afId, token, binding_.flowId, "edge",
                                                  binding_.notificationUri);
        state_.activeSubscriptionIds.trafficInfluence = sub.subscriptionId;
        break;
      }
      case Action::RequestQos: {
        auto sub = nef_->create_qos_subscription(binding_.afId, token, binding_.flowId,
                                                 config_.qosReference, binding_.notificationUri);
        state_.activeSubscriptionIds.qos = sub.subscriptionId;
        break;
      }
      case Action::Noop:
        break;
    }
  } catch (const Error& e) {
    outcome.events.push_back("NEF_ERROR_" + std::string(capifqos::to_string(e.code())));
    if (action == Action::RequestQos) {
      // Rejection (or any failure to obtain the upgrade) ends adaptation for this run.
      state_.phase = Phase::QosRejected;
      outcome.events.emplace_back(to_string(Phase::QosRejected));
    }
  }
}

ClientState InvokerClient::state() const {
  std::lock_guard lock(mutex_);
  return state_;
}

std::optional<capif::AccessToken> InvokerClient::token() const {
  std::lock_guard lock(mutex_);
  return token_;
}

std::optional<capif::InvokerProfile> InvokerClient::profile() const {
  std::lock_guard lock(mutex_);
  return profile_;
}

std::size_t InvokerClient::nef_calls() const {
  std::lock_guard lock(mutex_);
  return nefCalls_;
}

}  // namespace capifqos::client
