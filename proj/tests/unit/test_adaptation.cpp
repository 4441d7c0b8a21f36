#include "capifqos/client/adaptation.hpp"
#include "test_util.hpp"

#include <random>

using namespace capifqos;
using namespace capifqos::client;

namespace {

ClientState streaming() {
  ClientState s;
  s.phase = Phase::StreamingBestEffort;
  s.activeSubscriptionIds.monitoring = "mon-1";
  s.activeSubscriptionIds.qos = "qos-1";
  return s;
}

nef::Notification notify(const std::string& id, nef::NotificationKind kind) {
  nef::Notification n;
  n.subscriptionId = id;
  n.kind = kind;
  return n;
}

}  // namespace

TEST_SUITE("adaptation") {

TEST_CASE("config validation") {
  AdaptationConfig c;
  CHECK_NOTHROW(validate(c));
  c.lowerThreshold = 5.0;
  CHECK_ERRC(validate(c), Errc::SpecInvalid);
  c = {};
  c.debounceSamples = 0;
  CHECK_ERRC(validate(c), Errc::SpecInvalid);
  c = {};
  c.monitorCellLoadThreshold = 0.0;
  CHECK_ERRC(validate(c), Errc::SpecInvalid);
}

TEST_CASE("first sample after discovery arms monitoring and edge routing") {
  AdaptationConfig c;
  ClientState s;
  s.phase = Phase::Discovered;
  auto r = control_step(4.5, s, c);
  CHECK(r.state.phase == Phase::StreamingBestEffort);
  CHECK(r.actions == std::vector<Action>{Action::SubscribeMonitoring, Action::RequestEdge});

  c.requestEdgeRouting = false;
  CHECK(control_step(4.5, s, c).actions == std::vector<Action>{Action::SubscribeMonitoring});

  c.enabled = false;
  auto off = control_step(1.0, s, c);
  CHECK(off.actions.empty());
  CHECK(off.state.phase == Phase::StreamingBestEffort);
  CHECK(control_step(1.0, off.state, c).actions.empty());
}

TEST_CASE("a single dip does not trigger a request") {
  AdaptationConfig c;
  auto r1 = control_step(4.0, streaming(), c);
  CHECK(r1.actions.empty());
  CHECK(r1.state.belowCount == 1);
  auto r2 = control_step(4.5, r1.state, c);
  CHECK(r2.actions.empty());
  CHECK(r2.state.belowCount == 0);
}

TEST_CASE("debounced dips request QoS once") {
  AdaptationConfig c;
  auto r1 = control_step(4.0, streaming(), c);
  auto r2 = control_step(4.0, r1.state, c);
  CHECK(r2.actions == std::vector<Action>{Action::RequestQos});
  CHECK(r2.state.phase == Phase::QosRequested);
  CHECK(control_step(1.0, r2.state, c).actions.empty());
}

TEST_CASE("a congestion notification makes the next dip request immediately") {
  AdaptationConfig c;
  auto s = handle_notification(notify("mon-1", nef::NotificationKind::CellLoadCrossed), streaming(), c);
  CHECK(s.congestionNotified);
  // Still above threshold: stays armed without a request.
  auto r1 = control_step(4.5, s, c);
  CHECK(r1.actions.empty());
  CHECK(r1.state.congestionNotified);
  auto r2 = control_step(4.0, r1.state, c);
  CHECK(r2.actions == std::vector<Action>{Action::RequestQos});
  CHECK_FALSE(r2.state.congestionNotified);
}

TEST_CASE("QoS notifications move the phase only while requested") {
  AdaptationConfig c;
  auto s = streaming();
  CHECK(handle_notification(notify("qos-1", nef::NotificationKind::QosGuaranteed), s, c).phase ==
        Phase::StreamingBestEffort);
  s.phase = Phase::QosRequested;
  CHECK(handle_notification(notify("qos-1", nef::NotificationKind::QosGuaranteed), s, c).phase ==
        Phase::QosGuaranteed);
  CHECK(handle_notification(notify("qos-1", nef::NotificationKind::QosNotGuaranteed), s, c).phase ==
        Phase::QosRequested);
  CHECK_ERRC(handle_notification(notify("zzz", nef::NotificationKind::QosGuaranteed), s, c),
             Errc::UnknownSubscription);
}

TEST_CASE("terminal phases never emit actions") {
  AdaptationConfig c;
  std::mt19937 rng(4);
  for (auto phase : {Phase::QosRequested, Phase::QosGuaranteed, Phase::QosRejected, Phase::Init}) {
    auto s = streaming();
    s.phase = phase;
    for (int i = 0; i < 50; ++i) {
      auto r = control_step(std::uniform_real_distribution<double>(0, 6)(rng), s, c);
      REQUIRE(r.actions.empty());
      REQUIRE(r.state.phase == phase);
      s = r.state;
    }
  }
}

TEST_CASE("requests happen exactly when debounce or notification allows") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    AdaptationConfig c;
    c.debounceSamples = 1 + static_cast<int>(rng() % 4);
    auto s = streaming();
    int below = 0;
    bool armed = false;
    for (int i = 0; i < 40 && s.phase == Phase::StreamingBestEffort; ++i) {
      if (rng() % 5 == 0) {
        s = handle_notification(notify("mon-1", nef::NotificationKind::CellLoadCrossed), s, c);
        armed = true;
      }
      const double rate = (rng() % 2) ? 3.0 : 4.5;
      below = rate < c.lowerThreshold ? below + 1 : 0;
      const bool expect = below >= c.debounceSamples || (armed && rate < c.lowerThreshold);
      auto r = control_step(rate, s, c);
      REQUIRE((r.actions == std::vector<Action>{Action::RequestQos}) == expect);
      s = r.state;
    }
  }
}

TEST_CASE("measure_throughput reads the allocation") {
  net::AllocationResult a;
  a.achievedRate["video"] = 3.25;
  CHECK(measure_throughput("video", a) == 3.25);
  CHECK_ERRC(measure_throughput("other", a), Errc::UnknownFlow);
}

}  // TEST_SUITE
