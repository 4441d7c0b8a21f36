#include "capifqos/capif/core.hpp"
#include "test_util.hpp"

#include <map>
#include <random>
#include <set>

using namespace capifqos;
using namespace capifqos::capif;

namespace {

struct FakeClock {
  std::int64_t now = 1000;
  Clock clock() {
    return [this] { return now; };
  }
};

ServiceApiDraft draft(const std::string& name, const std::string& aef = "aef-1", int port = 8081) {
  ServiceApiDraft d;
  d.apiName = name;
  d.aefId = aef;
  d.endpoint = {"127.0.0.1", port, "/" + name};
  return d;
}

}  // namespace

TEST_SUITE("capif") {

TEST_CASE("provider registration issues distinct ids and secrets") {
  CoreFunction ccf({}, 7);
  auto a = ccf.register_provider("a.example");
  auto b = ccf.register_provider("b.example");
  CHECK(a.providerId != b.providerId);
  CHECK(a.providerSecret.size() == 32);
  CHECK(a.providerSecret != b.providerSecret);
  CHECK(ccf.provider_count() == 2);
  CHECK_ERRC(ccf.register_provider(""), Errc::EmptyDomainName);
}

TEST_CASE("publish validates provider, secret and duplicates") {
  CoreFunction ccf({}, 7);
  auto p = ccf.register_provider("nef");
  CHECK_ERRC(ccf.publish_service_api("prov-x", p.providerSecret, draft("qos")), Errc::UnknownProvider);
  CHECK_ERRC(ccf.publish_service_api(p.providerId, "wrong", draft("qos")), Errc::BadSecret);
  CHECK_ERRC(ccf.publish_service_api(p.providerId, p.providerSecret, draft("")),
             Errc::InvalidDescription);

  auto api = ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos"));
  CHECK(api.status == ApiStatus::Published);
  CHECK(api.providerId == p.providerId);
  CHECK_ERRC(ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos")),
             Errc::DuplicateApi);

  auto v2 = draft("qos");
  v2.version = "v2";
  CHECK_NOTHROW(ccf.publish_service_api(p.providerId, p.providerSecret, v2));

  // After unpublishing, the same name and version may be published again.
  ccf.unpublish_service_api(p.providerId, p.providerSecret, api.apiId);
  CHECK_NOTHROW(ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos")));
}

TEST_CASE("unpublish checks ownership and hides the entry") {
  CoreFunction ccf({}, 7);
  auto p = ccf.register_provider("nef");
  auto q = ccf.register_provider("other");
  auto api = ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos"));
  auto inv = ccf.onboard_invoker("vlc");

  CHECK_ERRC(ccf.unpublish_service_api(q.providerId, q.providerSecret, api.apiId), Errc::NotOwner);
  CHECK_ERRC(ccf.unpublish_service_api(p.providerId, p.providerSecret, "api-missing"),
             Errc::UnknownApi);
  CHECK_ERRC(ccf.unpublish_service_api(p.providerId, "bad", api.apiId), Errc::BadSecret);

  CHECK(ccf.discover_service_apis({inv.invokerId, {}, {}}).size() == 1);
  ccf.unpublish_service_api(p.providerId, p.providerSecret, api.apiId);
  CHECK(ccf.discover_service_apis({inv.invokerId, {}, {}}).empty());
  REQUIRE(ccf.catalog().size() == 1);
  CHECK(ccf.catalog()[0].status == ApiStatus::Unpublished);
}

TEST_CASE("discovery filters and orders by apiId") {
  CoreFunction ccf({}, 7);
  auto p = ccf.register_provider("nef");
  for (const char* name : {"c", "a", "b"}) {
    ccf.publish_service_api(p.providerId, p.providerSecret, draft(name, std::string("aef-") + name));
  }
  CHECK_ERRC(ccf.discover_service_apis({"inv-missing", {}, {}}), Errc::UnknownInvoker);

  auto inv = ccf.onboard_invoker("vlc");
  auto all = ccf.discover_service_apis({inv.invokerId, {}, {}});
  REQUIRE(all.size() == 3);
  CHECK(all[0].apiId < all[1].apiId);
  CHECK(all[1].apiId < all[2].apiId);
  CHECK(all[0].apiName == "c");

  auto byName = ccf.discover_service_apis({inv.invokerId, std::string("a"), {}});
  REQUIRE(byName.size() == 1);
  CHECK(byName[0].aefId == "aef-a");
  CHECK(ccf.discover_service_apis({inv.invokerId, std::string("a"), std::string("aef-b")}).empty());
  CHECK(ccf.discover_service_apis({inv.invokerId, {}, std::string("aef-b")}).size() == 1);
}

TEST_CASE("onboarding rejects empty display names") {
  CoreFunction ccf({}, 7);
  CHECK_ERRC(ccf.onboard_invoker(""), Errc::EmptyName);
  auto a = ccf.onboard_invoker("vlc");
  auto b = ccf.onboard_invoker("vlc");
  CHECK(a.invokerId != b.invokerId);
  CHECK(a.onboardingCredential.size() == 32);
  CHECK(ccf.invoker_count() == 2);
}

TEST_CASE("token issuance validates credential and scope") {
  FakeClock clk;
  CoreFunction ccf(clk.clock(), 7);
  auto p = ccf.register_provider("nef");
  ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos"));
  auto inv = ccf.onboard_invoker("vlc");

  CHECK_ERRC(ccf.issue_token("inv-missing", inv.onboardingCredential, {{"aef-1", "qos"}}),
             Errc::UnknownInvoker);
  CHECK_ERRC(ccf.issue_token(inv.invokerId, "bad", {{"aef-1", "qos"}}), Errc::BadCredential);
  CHECK_ERRC(ccf.issue_token(inv.invokerId, inv.onboardingCredential, {}), Errc::EmptyScope);
  CHECK_ERRC(ccf.issue_token(inv.invokerId, inv.onboardingCredential, {{"aef-1", "monitoring"}}),
             Errc::ScopeNotPublished);
  CHECK_ERRC(ccf.issue_token(inv.invokerId, inv.onboardingCredential, {{"aef-2", "qos"}}),
             Errc::ScopeNotPublished);

  auto token = ccf.issue_token(inv.invokerId, inv.onboardingCredential, {{"aef-1", "qos"}});
  CHECK(token.invokerId == inv.invokerId);
  CHECK(token.issuedAt == 1000);
  CHECK(token.expiresIn == 3600);
  CHECK(token.tokenString.size() == 40);
}

TEST_CASE("introspection distinguishes unknown, expired and out-of-scope tokens") {
  FakeClock clk;
  CoreFunction ccf(clk.clock(), 7);
  auto p = ccf.register_provider("nef");
  ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos"));
  ccf.publish_service_api(p.providerId, p.providerSecret, draft("monitoring"));
  auto inv = ccf.onboard_invoker("vlc");
  auto token = ccf.issue_token(inv.invokerId, inv.onboardingCredential, {{"aef-1", "qos"}});

  auto ok = ccf.introspect_token(token.tokenString, "aef-1", "qos");
  CHECK(ok.active);
  CHECK(ok.invokerId == inv.invokerId);

  auto scope = ccf.introspect_token(token.tokenString, "aef-1", "monitoring");
  CHECK_FALSE(scope.active);
  CHECK(scope.reason == TokenRejection::OutOfScope);

  auto unknown = ccf.introspect_token("nope", "aef-1", "qos");
  CHECK_FALSE(unknown.active);
  CHECK(unknown.reason == TokenRejection::UnknownToken);

  clk.now = 1000 + 3599;
  CHECK(ccf.introspect_token(token.tokenString, "aef-1", "qos").active);
  clk.now = 1000 + 3600;
  auto expired = ccf.introspect_token(token.tokenString, "aef-1", "qos");
  CHECK_FALSE(expired.active);
  CHECK(expired.reason == TokenRejection::Expired);
}

TEST_CASE("same seed yields the same identifiers and secrets") {
  auto run = [] {
    CoreFunction ccf([] { return std::int64_t{0}; }, 42);
    auto p = ccf.register_provider("nef");
    ccf.publish_service_api(p.providerId, p.providerSecret, draft("qos"));
    auto inv = ccf.onboard_invoker("vlc");
    auto t = ccf.issue_token(inv.invokerId, inv.onboardingCredential, {{"aef-1", "qos"}});
    return p.providerSecret + inv.onboardingCredential + t.tokenString;
  };
  CHECK(run() == run());
}

TEST_CASE("discovery is sound and complete over random publish/unpublish sequences") {
  std::mt19937 rng(20240611);
  const std::vector<std::string> names{"qos", "monitoring", "influence", "pdtq"};
  const std::vector<std::string> aefs{"aef-1", "aef-2"};

  for (int seq = 0; seq < 300; ++seq) {
    CoreFunction ccf({}, seq);
    std::vector<ProviderRegistration> providers{ccf.register_provider("p0"),
                                                ccf.register_provider("p1")};
    auto inv = ccf.onboard_invoker("vlc");
    // apiId -> (apiName, aefId) of what should currently be published
    std::map<std::string, std::pair<std::string, std::string>> expected;
    std::map<std::string, std::size_t> owner;

    for (int op = 0; op < 20; ++op) {
      if (expected.empty() || rng() % 3 != 0) {
        const auto pi = rng() % providers.size();
        auto d = draft(names[rng() % names.size()], aefs[rng() % aefs.size()]);
        try {
          auto api = ccf.publish_service_api(providers[pi].providerId,
                                             providers[pi].providerSecret, d);
          expected[api.apiId] = {d.apiName, d.aefId};
          owner[api.apiId] = pi;
        } catch (const Error& e) {
          CHECK(e.code() == Errc::DuplicateApi);
        }
      } else {
        auto it = expected.begin();
        std::advance(it, rng() % expected.size());
        const auto& p = providers[owner[it->first]];
        ccf.unpublish_service_api(p.providerId, p.providerSecret, it->first);
        expected.erase(it);
      }

      std::optional<std::string> nameFilter, aefFilter;
      if (rng() % 2) nameFilter = names[rng() % names.size()];
      if (rng() % 2) aefFilter = aefs[rng() % aefs.size()];
      auto found = ccf.discover_service_apis({inv.invokerId, nameFilter, aefFilter});

      std::set<std::string> want;
      for (const auto& [id, na] : expected) {
        if (nameFilter && na.first != *nameFilter) continue;
        if (aefFilter && na.second != *aefFilter) continue;
        want.insert(id);
      }
      std::set<std::string> got;
      for (const auto& api : found) got.insert(api.apiId);
      REQUIRE(got == want);
      REQUIRE(std::is_sorted(found.begin(), found.end(),
                             [](const auto& a, const auto& b) { return a.apiId < b.apiId; }));
    }
  }
}

}  // TEST_SUITE
