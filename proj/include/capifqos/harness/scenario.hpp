#pragma once

#include "capifqos/client/adaptation.hpp"
#include "capifqos/net/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace capifqos::harness {

enum class ScenarioKind {
  Benchmark = 1,        // no adaptation
  CongestedStart = 2,   // video starts once the background ramp is complete
  Dynamic = 3,          // video starts idle, congestion ramps up underneath it
};

std::string_view to_string(ScenarioKind kind);

inline constexpr double kCentreEfficiency = 1.0;
inline constexpr double kEdgeEfficiency = 0.5;

struct RampConfig {
  int interval = 20;          // ticks between new background flows
  int maxFlows = 4;
  net::Mbps perFlowDemand = 10.0;
  double efficiency = 1.0;
};

// Background schedule adding one flow every `interval` ticks (first at
// tick `interval`) until `maxFlows` are active; flows stay until `ticks`-1.
net::BackgroundSchedule ramp_schedule(const RampConfig& ramp, int ticks);

struct ScenarioSpec {
  ScenarioKind scenario = ScenarioKind::Dynamic;
  int ticks = 100;
  net::Mbps cellCapacity = 12.0;
  double gbrCapacityFraction = 0.8;
  net::Mbps videoDemand = 4.5;
  double videoEfficiency = kCentreEfficiency;
  RampConfig ramp;
  net::BackgroundSchedule backgroundSchedule = ramp_schedule(ramp, ticks);
  client::AdaptationConfig adaptation;
  net::PathConfig path;
  std::uint64_t seed = 1;
};

void validate(const ScenarioSpec& spec);

// Tick at which the video flow appears: 0, or after the full ramp for S2.
int video_start_tick(const ScenarioSpec& spec);

inline constexpr const char* kCellId = "cell-1";
inline constexpr const char* kVideoUeId = "ue-car";
inline constexpr const char* kVideoFlowId = "video-ul";

struct TickRecord {
  int tick = 0;
  double videoRateMbps = 0.0;
  double cellLoadRatio = 0.0;
  int activeBackgroundFlows = 0;
  std::string clientPhase;
  double latencyMs = 0.0;
  std::vector<std::string> eventsThisTick;
  // Not part of the CSV: achieved rate of each background flow, by flow id.
  std::map<std::string, double> backgroundRatesMbps;
};

using TimeSeries = std::vector<TickRecord>;

struct Summary {
  ScenarioKind scenario = ScenarioKind::Dynamic;
  double videoEfficiency = 1.0;
  int videoStartTick = 0;
  std::optional<int> qosRequestTick;
  std::optional<int> qosGuaranteedTick;
  bool qosRejected = false;
  double minVideoRate = 0.0;     // over ticks with the video active
  double finalVideoRate = 0.0;
  std::size_t nefCallsAfterDiscovery = 0;
  std::size_t deliveriesExhausted = 0;
  // Video rate at the last tick of each background-count stage, by count.
  std::vector<std::pair<int, double>> stagePlateaus;
};

struct ScenarioRun {
  TimeSeries series;
  Summary summary;
};

// Deterministic in-process run in virtual time.
ScenarioRun run_scenario(const ScenarioSpec& spec);

Summary summarize(const ScenarioSpec& spec, const TimeSeries& series, std::size_t nefCalls,
                  std::size_t exhausted);
std::string format_summary(const Summary& summary);

inline constexpr const char* kCsvHeader =
    "tick,video_rate_mbps,cell_load,bg_flows,client_phase,latency_ms,events";

std::string to_csv(const TimeSeries& series);

// Throws IO_ERROR for an empty series (no file is created) or a write failure.
void emit_csv(const TimeSeries& series, const std::filesystem::path& path);

}  // namespace capifqos::harness
