#include "capifqos/client/invoker.hpp"
#include "capifqos/harness/world.hpp"
#include "test_util.hpp"

#include <algorithm>

using namespace capifqos;
using namespace capifqos::client;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

struct Rig {
  std::shared_ptr<nef::InProcessTransport> transport = std::make_shared<nef::InProcessTransport>();
  harness::ScenarioWorld world;
  InProcessCcf ccfPort{world.ccf()};
  InvokerClient agent;

  explicit Rig(harness::ScenarioSpec spec = {})
      : world(spec, transport, nef::RetryPolicy::virtual_ticks(), {"127.0.0.1", 8081, ""},
              [] { return std::int64_t{0}; }),
        agent(
            ccfPort,
            [this](const std::map<std::string, capif::Endpoint>&) {
              return std::make_unique<InProcessNef>(world.nef());
            },
            spec.adaptation, binding()) {
    transport->register_receiver("inproc://vlc", [this](const nef::Notification& n) {
      agent.enqueue_notification(n);
      return true;
    });
  }

  static ClientBinding binding() {
    ClientBinding b;
    b.flowId = harness::kVideoFlowId;
    b.cellId = harness::kCellId;
    b.notificationUri = "inproc://vlc";
    return b;
  }
};

}  // namespace

TEST_SUITE("invoker") {

TEST_CASE("onboarding discovers all four NEF APIs and scopes the token to them") {
  Rig rig;
  const auto& state = rig.agent.onboard_and_discover();
  CHECK(state.phase == Phase::Discovered);
  CHECK(state.discoveredEndpoints.size() == 4);
  CHECK(state.discoveredEndpoints.at(nef::kPdtqApi).basePath == "/nef/pdtq/v1");
  REQUIRE(rig.agent.token());
  CHECK(rig.agent.token()->scope.size() == 4);

  const auto firstId = rig.agent.profile()->invokerId;
  rig.agent.onboard_and_discover();
  CHECK(rig.agent.profile()->invokerId == firstId);
  CHECK(rig.world.ccf().invoker_count() == 1);
}

TEST_CASE("discovery fails when the NEF is not published") {
  capif::CoreFunction ccf({}, 1);
  InProcessCcf port(ccf);
  InvokerClient agent(
      port, [](const auto&) -> std::unique_ptr<NefPort> { return nullptr; }, {}, Rig::binding());
  CHECK_ERRC(agent.onboard_and_discover(), Errc::DiscoveryEmpty);
}

TEST_CASE("steps before discovery do nothing") {
  Rig rig;
  auto out = rig.agent.step(1.0);
  CHECK(out.actions.empty());
  CHECK(rig.agent.state().phase == Phase::Init);
}

TEST_CASE("actions are executed against the NEF") {
  Rig rig;
  rig.agent.onboard_and_discover();
  rig.world.advance(0);
  auto first = rig.agent.step(4.5);
  CHECK(contains(first.events, "SUBSCRIBE_MONITORING"));
  CHECK(contains(first.events, "REQUEST_EDGE"));
  CHECK(rig.world.network().flow(harness::kVideoFlowId).route == net::Route::Edge);
  CHECK(rig.agent.nef_calls() == 2);

  rig.agent.step(3.0);
  auto request = rig.agent.step(3.0);
  CHECK(contains(request.events, "REQUEST_QOS"));
  CHECK(rig.agent.state().phase == Phase::QosRequested);
  CHECK(rig.world.network().admitted_flows().contains(harness::kVideoFlowId));

  rig.world.dispatcher().pump(0);
  auto confirmed = rig.agent.step(4.5);
  CHECK(contains(confirmed.events, "NOTIFY_QOS_GUARANTEED"));
  CHECK(rig.agent.state().phase == Phase::QosGuaranteed);
}

TEST_CASE("a rejected QoS request ends in QOS_REJECTED") {
  harness::ScenarioSpec spec;
  spec.videoEfficiency = 0.5;
  spec.gbrCapacityFraction = 0.5;  // budget 6 units < 9 needed at the edge
  Rig rig(spec);
  rig.agent.onboard_and_discover();
  rig.world.advance(0);
  rig.agent.step(4.5);
  rig.agent.step(1.0);
  auto out = rig.agent.step(1.0);
  CHECK(contains(out.events, "NEF_ERROR_GBR_BUDGET_EXCEEDED"));
  CHECK(rig.agent.state().phase == Phase::QosRejected);
  CHECK(rig.agent.step(1.0).actions.empty());
}

TEST_CASE("notifications for unknown subscriptions are recorded as stray") {
  Rig rig;
  rig.agent.onboard_and_discover();
  rig.world.advance(0);
  nef::Notification n;
  n.subscriptionId = "mon-999";
  rig.agent.enqueue_notification(n);
  auto out = rig.agent.step(4.5);
  CHECK(contains(out.events, "STRAY_NOTIFICATION"));
}

}  // TEST_SUITE
