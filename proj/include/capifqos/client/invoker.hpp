#pragma once

#include "capifqos/client/adaptation.hpp"
#include "capifqos/client/ports.hpp"

#include <deque>
#include <memory>
#include <mutex>

namespace capifqos::client {

// Which flow and cell the agent manages and where its callbacks land.
struct ClientBinding {
  std::string displayName = "enhanced-vlc";
  std::string afId = "enhanced-vlc";
  std::string flowId;
  std::string cellId;
  std::string notificationUri;
};

struct StepOutcome {
  std::vector<Action> actions;
  std::vector<std::string> events;
};

// The application-side agent: onboards with the CCF, discovers the NEF APIs,
// and runs control_step once per measurement, executing the emitted actions
// against the NEF. Notifications may arrive from any thread; they are queued
// and consumed at the start of the next step.
class InvokerClient {
 public:
  InvokerClient(CcfPort& ccf, NefPortFactory nefFactory, AdaptationConfig config,
                ClientBinding binding);

  // Repeat calls keep the invoker identity, refresh the token and endpoints.
  const ClientState& onboard_and_discover();

  void enqueue_notification(const nef::Notification& notification);

  StepOutcome step(net::Mbps measuredRate);

  ClientState state() const;
  const AdaptationConfig& config() const { return config_; }
  const ClientBinding& binding() const { return binding_; }
  std::optional<capif::AccessToken> token() const;
  std::optional<capif::InvokerProfile> profile() const;
  std::size_t nef_calls() const;

 private:
  void execute(Action action, StepOutcome& outcome);

  CcfPort& ccf_;
  NefPortFactory nefFactory_;
  std::unique_ptr<NefPort> nef_;
  AdaptationConfig config_;
  ClientBinding binding_;

  mutable std::mutex mutex_;
  ClientState state_;
  std::optional<capif::InvokerProfile> profile_;
  std::optional<capif::AccessToken> token_;
  std::mutex inboxMutex_;
  std::deque<nef::Notification> inbox_;
  std::size_t nefCalls_ = 0;
};

}  // namespace capifqos::client
