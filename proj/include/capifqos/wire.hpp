#pragma once

// Helpers shared by the REST bindings: JSON bodies, error mapping, and a
// thin client wrapper over cpp-httplib.

#include "capifqos/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <functional>
#include <mutex>
#include <optional>
#include <string>

namespace capifqos::wire {

using json = nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body);
void send_error(httplib::Response& res, Errc code, const std::string& detail = {});

// Runs a handler, translating Error and malformed-JSON exceptions into the
// error body {"error": NAME, "detail": ...} with the mapped status.
void guarded(httplib::Response& res, const std::function<void()>& handler);

json parse_body(const httplib::Request& req);

// "Bearer xyz" -> "xyz"; empty when the header is absent or malformed.
std::string bearer_token(const httplib::Request& req);

struct BaseUrl {
  std::string host;
  int port = 80;
  std::string path;  // without trailing slash
};

// Accepts "http://host:port[/path]" or "host:port".
BaseUrl parse_url(const std::string& url);

// Blocking JSON-over-HTTP client. Connection failures raise `unreachable`;
// non-2xx replies raise the Error named in the reply body.
class JsonClient {
 public:
  JsonClient(BaseUrl base, Errc unreachable, double timeoutSeconds = 5.0);

  json get(const std::string& path, const httplib::Headers& headers = {});
  json post(const std::string& path, const json& body,
            const httplib::Headers& headers = {});
  json del(const std::string& path, const httplib::Headers& headers = {});

  const BaseUrl& base() const { return base_; }

 private:
  json finish(const httplib::Result& result);
  std::string full(const std::string& path) const;

  BaseUrl base_;
  Errc unreachable_;
  std::mutex mutex_;
  httplib::Client client_;
};

httplib::Headers bearer(const std::string& token);

}  // namespace capifqos::wire
