#include "capifqos/harness/live.hpp"

#include "capifqos/capif/http.hpp"
#include "capifqos/client/invoker.hpp"
#include "capifqos/harness/world.hpp"
#include "capifqos/nef/http.hpp"
#include "capifqos/nef/json.hpp"
#include "capifqos/wire.hpp"

#include <condition_variable>
#include <thread>

namespace capifqos::harness {

using wire::json;

namespace {

int bind_or_throw(httplib::Server& server, const std::string& host, int port) {
  if (port == 0) {
    const int bound = server.bind_to_any_port(host);
    if (bound <= 0) throw Error(Errc::Internal, "cannot bind " + host);
    return bound;
  }
  if (!server.bind_to_port(host, port)) {
    throw Error(Errc::Internal, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

std::string url_of(const std::string& host, int port) {
  return "http://" + host + ":" + std::to_string(port);
}

json snapshot_json(const TickSnapshot& snap) {
  const auto it = snap.allocation.achievedRate.find(kVideoFlowId);
  return {{"tick", snap.tick},
          {"videoActive", snap.videoActive},
          {"videoRateMbps", it == snap.allocation.achievedRate.end() ? 0.0 : it->second},
          {"cellLoadRatio", snap.allocation.cellLoadRatio},
          {"activeBackgroundFlows", snap.activeBackgroundFlows},
          {"latencyMs", snap.videoLatencyMs},
          {"monitoringNotifications", snap.monitoringNotifications.size()}};
}

}  // namespace

struct LiveNetwork::Impl {
  std::string host;
  httplib::Server ccfServer;
  httplib::Server nefServer;
  int ccfPort = 0;
  int nefPort = 0;
  std::unique_ptr<ScenarioWorld> world;
  std::thread ccfThread;
  std::thread nefThread;

  std::mutex mutex;
  std::condition_variable cv;
  bool stopped = false;
};

LiveNetwork::LiveNetwork(const ScenarioSpec& spec, std::string host, int ccfPort, int nefPort)
    : impl_(std::make_unique<Impl>()) {
  auto& m = *impl_;
  m.host = std::move(host);
  m.ccfPort = bind_or_throw(m.ccfServer, m.host, ccfPort);
  m.nefPort = bind_or_throw(m.nefServer, m.host, nefPort);

  m.world = std::make_unique<ScenarioWorld>(spec, std::make_shared<nef::HttpTransport>(),
                                            nef::RetryPolicy::wall_clock(),
                                            capif::Endpoint{m.host, m.nefPort, ""});

  capif::mount_routes(m.ccfServer, m.world->ccf());
  nef::mount_routes(m.nefServer, m.world->nef());

  auto* world = m.world.get();
  m.nefServer.Get(std::string(kEmulatorBasePath) + "/info",
                  [world](const httplib::Request&, httplib::Response& res) {
                    wire::send_json(res, 200,
                                    {{"cellId", kCellId},
                                     {"videoFlowId", kVideoFlowId},
                                     {"videoStartTick", world->video_start_tick()},
                                     {"ticks", world->spec().ticks}});
                  });
  m.nefServer.Post(std::string(kEmulatorBasePath) + "/step",
                   [world](const httplib::Request& req, httplib::Response& res) {
                     wire::guarded(res, [&] {
                       const auto body = wire::parse_body(req);
                       const int tick = body.at("tick").get<int>();
                       wire::send_json(res, 200, snapshot_json(world->advance(tick)));
                     });
                   });

  m.world->dispatcher().start();
  m.ccfThread = std::thread([&m] { m.ccfServer.listen_after_bind(); });
  m.nefThread = std::thread([&m] { m.nefServer.listen_after_bind(); });
  m.ccfServer.wait_until_ready();
  m.nefServer.wait_until_ready();
}

LiveNetwork::~LiveNetwork() { stop(); }

std::string LiveNetwork::ccf_url() const { return url_of(impl_->host, impl_->ccfPort); }
std::string LiveNetwork::nef_url() const { return url_of(impl_->host, impl_->nefPort); }

void LiveNetwork::wait() {
  std::unique_lock lock(impl_->mutex);
  impl_->cv.wait(lock, [this] { return impl_->stopped; });
}

void LiveNetwork::stop() {
  auto& m = *impl_;
  {
    std::lock_guard lock(m.mutex);
    if (m.stopped) return;
    m.stopped = true;
  }
  m.ccfServer.stop();
  m.nefServer.stop();
  if (m.ccfThread.joinable()) m.ccfThread.join();
  if (m.nefThread.joinable()) m.nefThread.join();
  m.world->dispatcher().stop();
  m.cv.notify_all();
}

ScenarioRun run_live(const RunOptions& opts) {
  validate(opts.spec);
  ScenarioSpec spec = opts.spec;
  if (spec.scenario == ScenarioKind::Benchmark) spec.adaptation.enabled = false;

  client::HttpCcfPort ccfPort(opts.ccfUrl);
  wire::JsonClient emulator(wire::parse_url(opts.nefUrl), Errc::NefUnreachable);
  const auto info = emulator.get(std::string(kEmulatorBasePath) + "/info");

  httplib::Server callbacks;
  const int cbPort = callbacks.bind_to_any_port("127.0.0.1");
  if (cbPort <= 0) throw Error(Errc::Internal, "cannot bind client callback server");

  client::ClientBinding binding;
  binding.flowId = info.at("videoFlowId").get<std::string>();
  binding.cellId = info.at("cellId").get<std::string>();
  binding.notificationUri = url_of("127.0.0.1", cbPort) + "/client/notifications";
  client::InvokerClient agent(
      ccfPort,
      [](const std::map<std::string, capif::Endpoint>& endpoints) {
        return std::make_unique<client::HttpNefPort>(endpoints);
      },
      spec.adaptation, binding);

  callbacks.Post("/client/notifications",
                 [&agent](const httplib::Request& req, httplib::Response& res) {
                   wire::guarded(res, [&] {
                     agent.enqueue_notification(wire::parse_body(req).get<nef::Notification>());
                     res.status = 204;
                   });
                 });
  std::thread cbThread([&callbacks] { callbacks.listen_after_bind(); });
  callbacks.wait_until_ready();

  TimeSeries series;
  try {
    agent.onboard_and_discover();
    int lastBg = 0;
    for (int tick = 0; tick < spec.ticks; ++tick) {
      TickRecord rec;
      rec.tick = tick;
      const auto snap = emulator.post(std::string(kEmulatorBasePath) + "/step", {{"tick", tick}});
      const bool videoActive = snap.at("videoActive").get<bool>();
      rec.activeBackgroundFlows = snap.at("activeBackgroundFlows").get<int>();
      rec.cellLoadRatio = snap.at("cellLoadRatio").get<double>();
      if (tick == info.at("videoStartTick").get<int>()) rec.eventsThisTick.emplace_back("VIDEO_START");
      if (rec.activeBackgroundFlows != lastBg) {
        rec.eventsThisTick.push_back("BG_FLOWS_" + std::to_string(rec.activeBackgroundFlows));
        lastBg = rec.activeBackgroundFlows;
      }
      if (videoActive) {
        rec.videoRateMbps = snap.at("videoRateMbps").get<double>();
        rec.latencyMs = snap.at("latencyMs").get<double>();
        auto step = agent.step(rec.videoRateMbps);
        for (auto& e : step.events) rec.eventsThisTick.push_back(std::move(e));
      }
      rec.clientPhase = std::string(client::to_string(agent.state().phase));
      series.push_back(std::move(rec));
      if (opts.tickMs > 0) std::this_thread::sleep_for(std::chrono::milliseconds(opts.tickMs));
    }
  } catch (...) {
    callbacks.stop();
    cbThread.join();
    throw;
  }
  callbacks.stop();
  cbThread.join();

  ScenarioRun run;
  run.summary = summarize(spec, series, agent.nef_calls(), 0);
  run.summary.videoStartTick = info.at("videoStartTick").get<int>();
  run.series = std::move(series);
  return run;
}

}  // namespace capifqos::harness
