#include "capifqos/harness/scenario.hpp"

#include "capifqos/client/invoker.hpp"
#include "capifqos/error.hpp"
#include "capifqos/harness/world.hpp"
#include "capifqos/net/allocation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace capifqos::harness {

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Benchmark: return "S1_BENCHMARK";
    case ScenarioKind::CongestedStart: return "S2_CONGESTED_START";
    case ScenarioKind::Dynamic: return "S3_DYNAMIC";
  }
  return "S3_DYNAMIC";
}

net::BackgroundSchedule ramp_schedule(const RampConfig& ramp, int ticks) {
  net::BackgroundSchedule schedule;
  if (ramp.interval <= 0) return schedule;
  for (int k = 1; k <= ramp.maxFlows; ++k) {
    const int start = k * ramp.interval;
    if (start > ticks - 1) break;
    schedule.entries.push_back({{start, ticks - 1}, 1, ramp.perFlowDemand, ramp.efficiency});
  }
  return schedule;
}

void validate(const ScenarioSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(Errc::SpecInvalid, what); };
  if (spec.ticks <= 0) fail("ticks must be > 0");
  if (!(spec.cellCapacity > 0.0)) fail("cellCapacity must be > 0");
  if (!(spec.gbrCapacityFraction > 0.0 && spec.gbrCapacityFraction <= 1.0)) {
    fail("gbrCapacityFraction must be in (0, 1]");
  }
  if (!(spec.videoDemand > 0.0)) fail("videoDemand must be > 0");
  if (!(spec.videoEfficiency > 0.0 && spec.videoEfficiency <= 1.0)) {
    fail("videoEfficiency must be in (0, 1]");
  }
  if (spec.ramp.interval <= 0) fail("ramp interval must be > 0");
  if (spec.ramp.maxFlows < 0) fail("ramp maxFlows must be >= 0");
  try {
    net::validate(spec.backgroundSchedule);
    net::validate(spec.path);
    client::validate(spec.adaptation);
  } catch (const Error& e) {
    if (e.code() == Errc::SpecInvalid) throw;
    fail(e.what());
  }
}

int video_start_tick(const ScenarioSpec& spec) {
  if (spec.scenario != ScenarioKind::CongestedStart) return 0;
  int start = 0;
  for (const auto& entry : spec.backgroundSchedule.entries) {
    if (entry.flowCount > 0) start = std::max(start, entry.active.startTick);
  }
  return std::min(start, spec.ticks - 1);
}

namespace {

constexpr const char* kClientCallbackUri = "inproc://enhanced-vlc/client/notifications";

bool has_event(const TickRecord& r, std::string_view event) {
  return std::find(r.eventsThisTick.begin(), r.eventsThisTick.end(), event) !=
         r.eventsThisTick.end();
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioSpec& spec) {
  validate(spec);
  ScenarioSpec effective = spec;
  if (spec.scenario == ScenarioKind::Benchmark) effective.adaptation.enabled = false;

  int now = 0;
  auto transport = std::make_shared<nef::InProcessTransport>();
  ScenarioWorld world(effective, transport, nef::RetryPolicy::virtual_ticks(),
                      {"127.0.0.1", 8081, ""}, [&now] { return static_cast<std::int64_t>(now); });

  client::InProcessCcf ccfPort(world.ccf());
  client::ClientBinding binding;
  binding.flowId = kVideoFlowId;
  binding.cellId = kCellId;
  binding.notificationUri = kClientCallbackUri;
  client::InvokerClient agent(
      ccfPort,
      [&world](const std::map<std::string, capif::Endpoint>&) {
        return std::make_unique<client::InProcessNef>(world.nef());
      },
      effective.adaptation, binding);
  transport->register_receiver(kClientCallbackUri, [&agent](const nef::Notification& n) {
    agent.enqueue_notification(n);
    return true;
  });
  agent.onboard_and_discover();

  TimeSeries series;
  series.reserve(static_cast<std::size_t>(effective.ticks));
  int lastBg = 0;
  for (int tick = 0; tick < effective.ticks; ++tick) {
    now = tick;
    TickRecord rec;
    rec.tick = tick;

    auto snap = world.advance(tick);
    if (tick == world.video_start_tick()) rec.eventsThisTick.emplace_back("VIDEO_START");
    if (snap.activeBackgroundFlows != lastBg) {
      rec.eventsThisTick.push_back("BG_FLOWS_" + std::to_string(snap.activeBackgroundFlows));
      lastBg = snap.activeBackgroundFlows;
    }
    for (std::size_t i = 0; i < snap.monitoringNotifications.size(); ++i) {
      rec.eventsThisTick.emplace_back("CELL_LOAD_CROSSED");
    }
    for (const auto& outcome : world.dispatcher().pump(tick)) {
      if (!outcome.delivered) rec.eventsThisTick.emplace_back("DELIVERY_EXHAUSTED");
    }

    if (snap.videoActive) {
      rec.videoRateMbps = client::measure_throughput(kVideoFlowId, snap.allocation);
      rec.latencyMs = snap.videoLatencyMs;
      auto step = agent.step(rec.videoRateMbps);
      for (auto& e : step.events) rec.eventsThisTick.push_back(std::move(e));
    }
    for (const auto& [id, rate] : snap.allocation.achievedRate) {
      if (id.rfind("bg-", 0) == 0) rec.backgroundRatesMbps[id] = rate;
    }
    rec.cellLoadRatio = snap.allocation.cellLoadRatio;
    rec.activeBackgroundFlows = snap.activeBackgroundFlows;
    rec.clientPhase = std::string(client::to_string(agent.state().phase));
    series.push_back(std::move(rec));
  }

  ScenarioRun run;
  run.summary =
      summarize(effective, series, agent.nef_calls(), world.dispatcher().exhausted().size());
  run.series = std::move(series);
  return run;
}

Summary summarize(const ScenarioSpec& spec, const TimeSeries& series, std::size_t nefCalls,
                  std::size_t exhausted) {
  Summary s;
  s.scenario = spec.scenario;
  s.videoEfficiency = spec.videoEfficiency;
  s.videoStartTick = video_start_tick(spec);
  s.nefCallsAfterDiscovery = nefCalls;
  s.deliveriesExhausted = exhausted;

  bool seen = false;
  for (const auto& r : series) {
    if (!s.qosRequestTick && has_event(r, "REQUEST_QOS")) s.qosRequestTick = r.tick;
    if (!s.qosGuaranteedTick && r.clientPhase == "QOS_GUARANTEED") s.qosGuaranteedTick = r.tick;
    if (r.clientPhase == "QOS_REJECTED") s.qosRejected = true;
    if (r.tick < s.videoStartTick) continue;

    s.minVideoRate = seen ? std::min(s.minVideoRate, r.videoRateMbps) : r.videoRateMbps;
    s.finalVideoRate = r.videoRateMbps;
    seen = true;
    if (s.stagePlateaus.empty() || s.stagePlateaus.back().first != r.activeBackgroundFlows) {
      s.stagePlateaus.emplace_back(r.activeBackgroundFlows, r.videoRateMbps);
    } else {
      s.stagePlateaus.back().second = r.videoRateMbps;
    }
  }
  return s;
}

std::string format_summary(const Summary& s) {
  std::ostringstream out;
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  out << "scenario=" << to_string(s.scenario) << '\n'
      << "video_efficiency=" << fixed3(s.videoEfficiency) << '\n'
      << "video_start_tick=" << s.videoStartTick << '\n'
      << "qos_request_tick=" << opt(s.qosRequestTick) << '\n'
      << "qos_guaranteed_tick=" << opt(s.qosGuaranteedTick) << '\n'
      << "qos_rejected=" << (s.qosRejected ? "true" : "false") << '\n'
      << "min_video_rate_mbps=" << fixed3(s.minVideoRate) << '\n'
      << "final_video_rate_mbps=" << fixed3(s.finalVideoRate) << '\n'
      << "nef_calls=" << s.nefCallsAfterDiscovery << '\n'
      << "deliveries_exhausted=" << s.deliveriesExhausted << '\n'
      << "stage_plateaus=";
  for (std::size_t i = 0; i < s.stagePlateaus.size(); ++i) {
    if (i) out << ' ';
    out << s.stagePlateaus[i].first << ':' << fixed3(s.stagePlateaus[i].second);
  }
  out << '\n';
  return out.str();
}

std::string to_csv(const TimeSeries& series) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : series) {
    out += std::to_string(r.tick);
    out += ',' + fixed3(r.videoRateMbps);
    out += ',' + fixed3(r.cellLoadRatio);
    out += ',' + std::to_string(r.activeBackgroundFlows);
    out += ',' + r.clientPhase;
    out += ',' + fixed3(r.latencyMs);
    out += ',';
    for (std::size_t i = 0; i < r.eventsThisTick.size(); ++i) {
      if (i) out += ';';
      out += r.eventsThisTick[i];
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const TimeSeries& series, const std::filesystem::path& path) {
  if (series.empty()) throw Error(Errc::IoError, "empty time series");
  const auto text = to_csv(series);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::IoError, "cannot open " + path.string());
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace capifqos::harness
