#include "capifqos/nef/http.hpp"

#include "capifqos/nef/json.hpp"

namespace capifqos::nef {

using wire::guarded;
using wire::json;
using wire::send_json;

std::string base_path_for(const std::string& apiName) {
  if (apiName == kAsSessionWithQosApi) return kAsSessionWithQosBase;
  if (apiName == kMonitoringEventApi) return kMonitoringEventBase;
  if (apiName == kTrafficInfluenceApi) return kTrafficInfluenceBase;
  if (apiName == kPdtqApi) return kPdtqBase;
  throw Error(Errc::UnknownApi, apiName);
}

void mount_routes(httplib::Server& server, NefService& service) {
  const std::string qos = std::string(kAsSessionWithQosBase) + "/([^/]+)/subscriptions";
  const std::string mon = std::string(kMonitoringEventBase) + "/([^/]+)/subscriptions";
  const std::string ti = std::string(kTrafficInfluenceBase) + "/([^/]+)/subscriptions";
  const std::string pdtq = std::string(kPdtqBase) + "/([^/]+)/negotiations";

  server.Post(qos, [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      auto sub = service.create_qos_subscription(
          req.matches[1], wire::bearer_token(req), body.at("flowId").get<std::string>(),
          body.at("qosReference").get<std::string>(), body.value("notificationUri", ""));
      send_json(res, 201, sub);
    });
  });
  server.Get(qos, [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      send_json(res, 200,
                json(service.list_qos_subscriptions(req.matches[1], wire::bearer_token(req))));
    });
  });
  server.Get(qos + "/([^/]+)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      send_json(res, 200,
                service.get_qos_subscription(req.matches[1], wire::bearer_token(req),
                                             req.matches[2]));
    });
  });
  server.Delete(qos + "/([^/]+)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      service.delete_qos_subscription(req.matches[1], wire::bearer_token(req), req.matches[2]);
      res.status = 204;
    });
  });

  server.Post(mon, [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      auto eventType = body.value("eventType", "CELL_LOAD");
      if (eventType != "CELL_LOAD") throw Error(Errc::BadRequest, "unsupported eventType");
      auto sub = service.create_monitoring_subscription(
          req.matches[1], wire::bearer_token(req), body.at("cellId").get<std::string>(),
          body.at("upperThreshold").get<double>(), body.value("notificationUri", ""));
      send_json(res, 201, sub);
    });
  });
  server.Delete(mon + "/([^/]+)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      service.delete_monitoring_subscription(req.matches[1], wire::bearer_token(req),
                                             req.matches[2]);
      res.status = 204;
    });
  });

  server.Post(ti, [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      auto sub = service.create_traffic_influence(
          req.matches[1], wire::bearer_token(req), body.at("flowId").get<std::string>(),
          body.at("dnai").get<std::string>(), body.value("notificationUri", ""));
      send_json(res, 201, sub);
    });
  });
  server.Delete(ti + "/([^/]+)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      service.delete_traffic_influence(req.matches[1], wire::bearer_token(req), req.matches[2]);
      res.status = 204;
    });
  });

  server.Post(pdtq, [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = wire::parse_body(req);
      auto negotiation = service.pdtq_negotiate(
          req.matches[1], wire::bearer_token(req), body.at("flowId").get<std::string>(),
          body.value("requestedWindows", std::vector<net::TickWindow>{}),
          body.at("desiredRate").get<double>(), body.value("efficiency", 1.0));
      send_json(res, 201, negotiation);
    });
  });
  server.Get(pdtq + "/([^/]+)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      send_json(res, 200,
                service.pdtq_get(req.matches[1], wire::bearer_token(req), req.matches[2]));
    });
  });
  server.Post(pdtq + "/([^/]+)/select",
              [&service](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  auto body = wire::parse_body(req);
                  service.pdtq_select(req.matches[1], wire::bearer_token(req), req.matches[2],
                                      body.at("policyId").get<std::string>());
                  send_json(res, 200, json{{"selectedPolicyId", body.at("policyId")}});
                });
              });
}

HttpNef::HttpNef(std::map<std::string, ApiEndpoint> endpoints, double timeoutSeconds) {
  for (auto& [apiName, ep] : endpoints) {
    wire::BaseUrl base{ep.host, ep.port, ep.basePath};
    while (!base.path.empty() && base.path.back() == '/') base.path.pop_back();
    clients_.emplace(apiName, std::make_unique<wire::JsonClient>(std::move(base),
                                                                 Errc::NefUnreachable,
                                                                 timeoutSeconds));
  }
}

wire::JsonClient& HttpNef::client_for(const std::string& apiName) {
  auto it = clients_.find(apiName);
  if (it == clients_.end()) throw Error(Errc::DiscoveryEmpty, apiName + " not discovered");
  return *it->second;
}

QosSubscription HttpNef::create_qos_subscription(const std::string& afId,
                                                 const std::string& token,
                                                 const std::string& flowId,
                                                 const std::string& qosReference,
                                                 const std::string& notificationUri) {
  json body{{"flowId", flowId}, {"qosReference", qosReference},
            {"notificationUri", notificationUri}};
  return client_for(kAsSessionWithQosApi)
      .post("/" + afId + "/subscriptions", body, wire::bearer(token))
      .get<QosSubscription>();
}

QosSubscription HttpNef::get_qos_subscription(const std::string& afId, const std::string& token,
                                              const std::string& subscriptionId) {
  return client_for(kAsSessionWithQosApi)
      .get("/" + afId + "/subscriptions/" + subscriptionId, wire::bearer(token))
      .get<QosSubscription>();
}

void HttpNef::delete_qos_subscription(const std::string& afId, const std::string& token,
                                      const std::string& subscriptionId) {
  client_for(kAsSessionWithQosApi)
      .del("/" + afId + "/subscriptions/" + subscriptionId, wire::bearer(token));
}

MonitoringSubscription HttpNef::create_monitoring_subscription(
    const std::string& afId, const std::string& token, const std::string& cellId,
    double upperThreshold, const std::string& notificationUri) {
  json body{{"cellId", cellId},
            {"eventType", "CELL_LOAD"},
            {"upperThreshold", upperThreshold},
            {"notificationUri", notificationUri}};
  return client_for(kMonitoringEventApi)
      .post("/" + afId + "/subscriptions", body, wire::bearer(token))
      .get<MonitoringSubscription>();
}

TrafficInfluenceSubscription HttpNef::create_traffic_influence(
    const std::string& afId, const std::string& token, const std::string& flowId,
    const std::string& dnai, const std::string& notificationUri) {
  json body{{"flowId", flowId}, {"dnai", dnai}, {"notificationUri", notificationUri}};
  return client_for(kTrafficInfluenceApi)
      .post("/" + afId + "/subscriptions", body, wire::bearer(token))
      .get<TrafficInfluenceSubscription>();
}

PdtqNegotiation HttpNef::pdtq_negotiate(const std::string& afId, const std::string& token,
                                        const std::string& flowId,
                                        const std::vector<net::TickWindow>& requestedWindows,
                                        net::Mbps desiredRate, double efficiency) {
  json body{{"flowId", flowId},
            {"requestedWindows", requestedWindows},
            {"desiredRate", desiredRate},
            {"efficiency", efficiency}};
  return client_for(kPdtqApi)
      .post("/" + afId + "/negotiations", body, wire::bearer(token))
      .get<PdtqNegotiation>();
}

void HttpNef::pdtq_select(const std::string& afId, const std::string& token,
                          const std::string& negotiationId, const std::string& policyId) {
  client_for(kPdtqApi).post("/" + afId + "/negotiations/" + negotiationId + "/select",
                            json{{"policyId", policyId}}, wire::bearer(token));
}

}  // namespace capifqos::nef
