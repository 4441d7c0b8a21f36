#include "capifqos/capif/http.hpp"
#include "capifqos/client/ports.hpp"
#include "capifqos/harness/live.hpp"
#include "capifqos/nef/http.hpp"
#include "capifqos/nef/json.hpp"
#include "test_util.hpp"

#include <thread>

using namespace capifqos;
using wire::json;

namespace {

std::map<std::string, nef::HttpNef::ApiEndpoint> endpoints_of(
    const std::vector<capif::ServiceApiDescription>& apis) {
  std::map<std::string, nef::HttpNef::ApiEndpoint> out;
  for (const auto& a : apis) out[a.apiName] = {a.endpoint.host, a.endpoint.port, a.endpoint.basePath};
  return out;
}

struct Invoker {
  capif::InvokerProfile profile;
  capif::AccessToken token;
  std::vector<capif::ServiceApiDescription> apis;
};

Invoker onboard(capif::HttpCcf& ccf, const std::vector<std::string>& scopeApis) {
  Invoker inv;
  inv.profile = ccf.onboard_invoker("vlc");
  inv.apis = ccf.discover_service_apis({inv.profile.invokerId, {}, {}});
  capif::Scope scope;
  for (const auto& name : scopeApis) scope.insert({nef::kDefaultAefId, name});
  inv.token = ccf.issue_token(inv.profile.invokerId, inv.profile.onboardingCredential, scope);
  return inv;
}

httplib::Client raw_client(const std::string& url) {
  const auto base = wire::parse_url(url);
  httplib::Client c(base.host, base.port);
  c.set_connection_timeout(2);
  return c;
}

}  // namespace

TEST_SUITE("http") {

TEST_CASE("CCF REST binding round-trips and maps errors") {
  harness::LiveNetwork net(harness::ScenarioSpec{});
  capif::HttpCcf ccf(net.ccf_url());

  auto p = ccf.register_provider("second.example");
  capif::ServiceApiDraft d;
  d.apiName = "extra";
  d.aefId = "aef-x";
  d.endpoint = {"127.0.0.1", 9000, "/extra"};
  CHECK_ERRC(ccf.publish_service_api(p.providerId, "bad", d), Errc::BadSecret);
  auto api = ccf.publish_service_api(p.providerId, p.providerSecret, d);
  CHECK_ERRC(ccf.publish_service_api(p.providerId, p.providerSecret, d), Errc::DuplicateApi);

  auto inv = ccf.onboard_invoker("vlc");
  auto all = ccf.discover_service_apis({inv.invokerId, {}, {}});
  CHECK(all.size() == 5);
  auto filtered = ccf.discover_service_apis({inv.invokerId, std::string("extra"), {}});
  REQUIRE(filtered.size() == 1);
  CHECK(filtered[0].endpoint == d.endpoint);

  ccf.unpublish_service_api(p.providerId, p.providerSecret, api.apiId);
  CHECK(ccf.discover_service_apis({inv.invokerId, std::string("extra"), {}}).empty());
  CHECK_ERRC(ccf.unpublish_service_api(p.providerId, p.providerSecret, "api-none"), Errc::UnknownApi);
  CHECK_ERRC(ccf.discover_service_apis({"inv-none", {}, {}}), Errc::UnknownInvoker);
  CHECK_ERRC(ccf.issue_token(inv.invokerId, "wrong", {{"nef-aef", "pdtq"}}), Errc::BadCredential);

  auto tok = ccf.issue_token(inv.invokerId, inv.onboardingCredential, {{"nef-aef", "pdtq"}});
  CHECK(ccf.introspect_token(tok.tokenString, "nef-aef", "pdtq").active);
  CHECK(ccf.introspect_token(tok.tokenString, "nef-aef", "monitoring-event").reason ==
        capif::TokenRejection::OutOfScope);
}

TEST_CASE("NEF rejects missing tokens with 401 and out-of-scope tokens with 403") {
  harness::LiveNetwork net(harness::ScenarioSpec{});
  capif::HttpCcf ccf(net.ccf_url());
  auto c = raw_client(net.nef_url());
  const std::string path = std::string(nef::kAsSessionWithQosBase) + "/app/subscriptions";
  const json body{{"flowId", "video-ul"}, {"qosReference", "qos-gbr-video"}};

  auto noToken = c.Post(path, body.dump(), "application/json");
  REQUIRE(noToken);
  CHECK(noToken->status == 401);
  CHECK(json::parse(noToken->body).at("error") == "AUTH_DENIED");

  auto inv = onboard(ccf, {nef::kMonitoringEventApi});
  auto outOfScope = c.Post(path, wire::bearer(inv.token.tokenString), body.dump(), "application/json");
  REQUIRE(outOfScope);
  CHECK(outOfScope->status == 403);

  auto badJson = c.Post(path, wire::bearer(inv.token.tokenString), "{", "application/json");
  REQUIRE(badJson);
  CHECK(badJson->status == 400);
}

TEST_CASE("publish, onboard, discover, token and NEF call over HTTP") {
  harness::LiveNetwork net(harness::ScenarioSpec{});
  capif::HttpCcf ccf(net.ccf_url());
  auto inv = onboard(ccf, nef::nef_api_names());
  REQUIRE(inv.apis.size() == 4);
  nef::HttpNef nefClient(endpoints_of(inv.apis));
  const auto& tok = inv.token.tokenString;

  // The video flow exists once the emulator has run its first tick.
  wire::JsonClient emu(wire::parse_url(net.nef_url()), Errc::NefUnreachable);
  emu.post(std::string(harness::kEmulatorBasePath) + "/step", {{"tick", 0}});

  auto sub = nefClient.create_qos_subscription("app", tok, "video-ul", "qos-gbr-video", "");
  CHECK(sub.status == nef::QosStatus::Guaranteed);
  CHECK(nefClient.get_qos_subscription("app", tok, sub.subscriptionId).flowId == "video-ul");
  CHECK_ERRC(nefClient.create_qos_subscription("app", tok, "video-ul", "qos-gbr-video", ""),
             Errc::DuplicateSubscription);
  nefClient.delete_qos_subscription("app", tok, sub.subscriptionId);
  CHECK_ERRC(nefClient.get_qos_subscription("app", tok, sub.subscriptionId),
             Errc::UnknownSubscription);

  auto mon = nefClient.create_monitoring_subscription("app", tok, "cell-1", 0.9, "");
  CHECK(mon.upperThreshold == 0.9);
  CHECK_ERRC(nefClient.create_monitoring_subscription("app", tok, "cell-1", 2.0, ""),
             Errc::BadThreshold);
  auto ti = nefClient.create_traffic_influence("app", tok, "video-ul", "edge", "");
  CHECK(ti.dnai == "edge");

  auto neg = nefClient.pdtq_negotiate("app", tok, "video-ul", {{0, 10}, {30, 40}}, 4.5, 1.0);
  REQUIRE(neg.candidatePolicies.size() == 1);
  CHECK(neg.candidatePolicies[0].window == net::TickWindow{0, 10});
  nefClient.pdtq_select("app", tok, neg.negotiationId, "policy-1");
  CHECK_ERRC(nefClient.pdtq_select("app", tok, neg.negotiationId, "policy-1"), Errc::AlreadySelected);
}

TEST_CASE("HTTP transport posts notifications to a callback server") {
  httplib::Server cb;
  std::vector<nef::Notification> got;
  std::mutex m;
  cb.Post("/cb", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(m);
    got.push_back(json::parse(req.body).get<nef::Notification>());
    res.status = 204;
  });
  cb.Post("/fail", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  const int port = cb.bind_to_any_port("127.0.0.1");
  std::thread t([&] { cb.listen_after_bind(); });
  cb.wait_until_ready();

  nef::HttpTransport transport(1.0);
  nef::Notification n;
  n.subscriptionId = "mon-1";
  n.cellId = "cell-1";
  n.loadRatio = 0.95;
  n.sequenceNumber = 3;
  const auto base = "http://127.0.0.1:" + std::to_string(port);
  CHECK(transport.deliver(base + "/cb", n));
  CHECK_FALSE(transport.deliver(base + "/fail", n));
  CHECK_FALSE(transport.deliver("http://127.0.0.1:1/cb", n));
  cb.stop();
  t.join();
  REQUIRE(got.size() == 1);
  CHECK(got[0].sequenceNumber == 3);
  CHECK(got[0].loadRatio == doctest::Approx(0.95));
}

TEST_CASE("live run reaches the guaranteed rate over HTTP") {
  harness::ScenarioSpec spec;
  spec.ticks = 60;
  spec.backgroundSchedule = harness::ramp_schedule(spec.ramp, spec.ticks);
  harness::LiveNetwork net(spec);
  harness::RunOptions opts;
  opts.spec = spec;
  opts.live = true;
  opts.ccfUrl = net.ccf_url();
  opts.nefUrl = net.nef_url();
  opts.tickMs = 10;
  auto run = harness::run_live(opts);
  REQUIRE(run.series.size() == 60);
  REQUIRE(run.summary.qosRequestTick);
  CHECK(*run.summary.qosRequestTick >= 40);
  CHECK(run.series.back().clientPhase == "QOS_GUARANTEED");
  CHECK(run.series.back().videoRateMbps == doctest::Approx(4.5));
}

TEST_CASE("live client reports an unreachable CCF") {
  harness::RunOptions opts;
  opts.live = true;
  opts.ccfUrl = "http://127.0.0.1:1";
  opts.nefUrl = "http://127.0.0.1:1";
  CHECK_ERRC(harness::run_live(opts), Errc::NefUnreachable);
  client::HttpCcfPort port("http://127.0.0.1:1");
  CHECK_ERRC(port.onboard_invoker("vlc"), Errc::CcfUnreachable);
}

}  // TEST_SUITE
