#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace capifqos::net {

// Rates are in Mbps. A flow achieving rate r on a UE with radio efficiency e
// consumes r / e resource units; a cell holds `uplinkCapacity` units.
using Mbps = double;

struct Cell {
  std::string cellId;
  Mbps uplinkCapacity = 12.0;
  double gbrCapacityFraction = 0.8;
};

struct UeContext {
  std::string ueId;
  std::string cellId;
  double radioEfficiency = 1.0;  // 1.0 at cell centre, lower toward the edge
};

enum class Direction { Uplink, Downlink };
enum class Route { Core, Edge };

struct NonGbr {
  friend bool operator==(const NonGbr&, const NonGbr&) = default;
};
struct Gbr {
  Mbps guaranteedRate = 0.0;
  friend bool operator==(const Gbr&, const Gbr&) = default;
};
using QosClass = std::variant<NonGbr, Gbr>;

struct Flow {
  std::string flowId;
  std::string ueId;
  Direction direction = Direction::Uplink;
  Mbps demandRate = 0.0;
  QosClass qosClass = NonGbr{};
  Route route = Route::Core;
};

struct AllocationResult {
  std::map<std::string, Mbps> achievedRate;
  std::map<std::string, double> consumedUnits;
  double cellLoadRatio = 0.0;
};

struct PathConfig {
  double coreBaseLatencyMs = 20.0;
  double edgeBaseLatencyMs = 5.0;
  double loadLatencySlopeMs = 30.0;
};

struct TickWindow {
  int startTick = 0;
  int endTick = 0;  // inclusive

  bool contains(int tick) const { return startTick <= tick && tick <= endTick; }
  bool overlaps(const TickWindow& o) const {
    return startTick <= o.endTick && o.startTick <= endTick;
  }
  friend bool operator==(const TickWindow&, const TickWindow&) = default;
};

struct BackgroundEntry {
  TickWindow active;
  int flowCount = 0;
  Mbps perFlowDemand = 10.0;
  double radioEfficiency = 1.0;
};

struct BackgroundSchedule {
  std::vector<BackgroundEntry> entries;
};

// Background flows active at one tick together with their synthetic UEs.
struct Traffic {
  std::vector<UeContext> ues;
  std::vector<Flow> flows;
};

// A guaranteed rate paired with the efficiency of the UE carrying it.
struct GbrDemand {
  Mbps guaranteedRate = 0.0;
  double efficiency = 1.0;

  double units() const { return guaranteedRate / efficiency; }
};

struct AdmissionDecision {
  bool admitted = false;
  std::string reason;  // "GBR_BUDGET_EXCEEDED" when rejected
};

std::string_view to_string(Route route);
std::string_view to_string(Direction direction);

}  // namespace capifqos::net
