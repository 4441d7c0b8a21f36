#include "capifqos/wire.hpp"

namespace capifqos::wire {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, Errc code, const std::string& detail) {
  json body{{"error", std::string(to_string(code))}};
  if (!detail.empty()) body["detail"] = detail;
  send_json(res, http_status(code), body);
}

void guarded(httplib::Response& res, const std::function<void()>& handler) {
  try {
    handler();
  } catch (const Error& e) {
    send_error(res, e.code(), e.what());
  } catch (const json::exception& e) {
    send_error(res, Errc::BadRequest, e.what());
  } catch (const std::exception& e) {
    send_error(res, Errc::Internal, e.what());
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto body = json::parse(req.body);
  if (!body.is_object()) throw Error(Errc::BadRequest, "body must be an object");
  return body;
}

std::string bearer_token(const httplib::Request& req) {
  const auto header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.size() <= kPrefix.size() || header.compare(0, kPrefix.size(), kPrefix) != 0) {
    return {};
  }
  return header.substr(kPrefix.size());
}

BaseUrl parse_url(const std::string& url) {
  std::string rest = url;
  if (auto scheme = rest.find("://"); scheme != std::string::npos) {
    if (rest.substr(0, scheme) != "http") {
      throw Error(Errc::BadRequest, "only http:// URLs are supported: " + url);
    }
    rest = rest.substr(scheme + 3);
  }
  BaseUrl out;
  auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  if (slash != std::string::npos) out.path = rest.substr(slash);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();

  auto colon = authority.rfind(':');
  if (colon == std::string::npos) {
    out.host = authority;
  } else {
    out.host = authority.substr(0, colon);
    try {
      out.port = std::stoi(authority.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(Errc::BadRequest, "bad port in URL: " + url);
    }
  }
  if (out.host.empty()) throw Error(Errc::BadRequest, "missing host in URL: " + url);
  return out;
}

JsonClient::JsonClient(BaseUrl base, Errc unreachable, double timeoutSeconds)
    : base_(std::move(base)), unreachable_(unreachable), client_(base_.host, base_.port) {
  const auto sec = static_cast<time_t>(timeoutSeconds);
  const auto usec = static_cast<time_t>((timeoutSeconds - static_cast<double>(sec)) * 1e6);
  client_.set_connection_timeout(sec, usec);
  client_.set_read_timeout(sec, usec);
  client_.set_write_timeout(sec, usec);
}

std::string JsonClient::full(const std::string& path) const { return base_.path + path; }

json JsonClient::finish(const httplib::Result& result) {
  if (!result) {
    throw Error(unreachable_, base_.host + ":" + std::to_string(base_.port) + " " +
                                  httplib::to_string(result.error()));
  }
  const auto& res = result.value();
  json body = json::object();
  if (!res.body.empty()) {
    body = json::parse(res.body, nullptr, /*allow_exceptions=*/false);
    if (body.is_discarded()) body = json::object();
  }
  if (res.status >= 200 && res.status < 300) return body;

  std::string name = body.is_object() ? body.value("error", "") : "";
  std::string detail = body.is_object() ? body.value("detail", "") : "";
  throw Error(errc_from_wire(name, res.status), detail.empty() ? name : detail);
}

json JsonClient::get(const std::string& path, const httplib::Headers& headers) {
  std::lock_guard lock(mutex_);
  return finish(client_.Get(full(path), headers));
}

json JsonClient::post(const std::string& path, const json& body,
                      const httplib::Headers& headers) {
  std::lock_guard lock(mutex_);
  return finish(client_.Post(full(path), headers, body.dump(), "application/json"));
}

json JsonClient::del(const std::string& path, const httplib::Headers& headers) {
  std::lock_guard lock(mutex_);
  return finish(client_.Delete(full(path), headers));
}

httplib::Headers bearer(const std::string& token) {
  return {{"Authorization", "Bearer " + token}};
}

}  // namespace capifqos::wire
