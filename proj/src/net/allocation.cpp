#include "capifqos/net/allocation.hpp"

#include "capifqos/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace capifqos::net {

std::string_view to_string(Route route) { return route == Route::Edge ? "EDGE" : "CORE"; }

std::string_view to_string(Direction direction) {
  return direction == Direction::Uplink ? "UPLINK" : "DOWNLINK";
}

void validate(const Cell& cell) {
  if (!(cell.uplinkCapacity > 0.0)) {
    throw Error(Errc::InvalidModel, "uplinkCapacity must be > 0");
  }
  if (!(cell.gbrCapacityFraction > 0.0 && cell.gbrCapacityFraction <= 1.0)) {
    throw Error(Errc::InvalidModel, "gbrCapacityFraction must be in (0, 1]");
  }
}

void validate(const PathConfig& path) {
  if (path.coreBaseLatencyMs < 0 || path.edgeBaseLatencyMs < 0 || path.loadLatencySlopeMs < 0) {
    throw Error(Errc::InvalidModel, "latency parameters must be >= 0");
  }
  if (!(path.edgeBaseLatencyMs < path.coreBaseLatencyMs)) {
    throw Error(Errc::InvalidModel, "edge base latency must be below core base latency");
  }
}

void validate(const BackgroundSchedule& schedule) {
  for (const auto& e : schedule.entries) {
    if (e.active.startTick > e.active.endTick) {
      throw Error(Errc::InvalidModel, "background entry with startTick > endTick");
    }
    if (e.flowCount < 0) throw Error(Errc::InvalidModel, "negative background flowCount");
    if (e.perFlowDemand < 0) throw Error(Errc::InvalidModel, "negative background demand");
    if (!(e.radioEfficiency > 0.0 && e.radioEfficiency <= 1.0)) {
      throw Error(Errc::InvalidModel, "background radioEfficiency must be in (0, 1]");
    }
  }
}

AllocationResult allocate(const Cell& cell, std::span<const UeContext> ues,
                          std::span<const Flow> flows,
                          const std::set<std::string>& admittedGbr) {
  validate(cell);

  std::unordered_map<std::string_view, double> efficiency;
  for (const auto& ue : ues) {
    if (ue.cellId == cell.cellId) efficiency[ue.ueId] = ue.radioEfficiency;
  }

  struct Share {
    const Flow* flow;
    double efficiency;
    double units;
    double residual;  // units still wanted after the reservation
  };
  std::vector<Share> shares;
  shares.reserve(flows.size());

  double reserved = 0.0;
  for (const auto& flow : flows) {
    if (flow.direction != Direction::Uplink) continue;
    auto eff = efficiency.find(flow.ueId);
    if (eff == efficiency.end()) {
      throw Error(Errc::UnknownUe, flow.ueId + " (flow " + flow.flowId + ")");
    }
    if (!(eff->second > 0.0)) throw Error(Errc::InvalidModel, "non-positive efficiency");

    Share share{&flow, eff->second, 0.0, flow.demandRate / eff->second};
    if (admittedGbr.contains(flow.flowId)) {
      const auto* gbr = std::get_if<Gbr>(&flow.qosClass);
      if (gbr == nullptr) {
        throw Error(Errc::InfeasibleGbr, flow.flowId + " admitted but not Gbr");
      }
      const double guaranteedUnits = std::min(flow.demandRate, gbr->guaranteedRate) / eff->second;
      share.units = guaranteedUnits;
      share.residual -= guaranteedUnits;
      reserved += guaranteedUnits;
    }
    share.residual = std::max(share.residual, 0.0);
    shares.push_back(share);
  }

  if (reserved > cell.uplinkCapacity + kRateEpsilon) {
    throw Error(Errc::InfeasibleGbr, "GBR reservations exceed cell capacity");
  }

  // Progressive filling: visiting residuals in ascending order, a flow whose
  // residual fits under the equal split of what is left saturates; once one
  // does not fit, every remaining flow receives the common level.
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return shares[a].residual < shares[b].residual;
  });

  double remaining = std::max(cell.uplinkCapacity - reserved, 0.0);
  std::size_t left = order.size();
  for (std::size_t pos = 0; pos < order.size(); ++pos, --left) {
    auto& share = shares[order[pos]];
    const double level = remaining / static_cast<double>(left);
    if (share.residual <= level) {
      share.units += share.residual;
      remaining -= share.residual;
      continue;
    }
    for (std::size_t rest = pos; rest < order.size(); ++rest) {
      shares[order[rest]].units += level;
    }
    remaining = 0.0;
    break;
  }

  AllocationResult result;
  double consumed = 0.0;
  for (const auto& share : shares) {
    result.consumedUnits[share.flow->flowId] = share.units;
    result.achievedRate[share.flow->flowId] =
        std::min(share.units * share.efficiency, share.flow->demandRate);
    consumed += share.units;
  }
  result.cellLoadRatio = std::clamp(consumed / cell.uplinkCapacity, 0.0, 1.0);
  return result;
}

AdmissionDecision admit_gbr(const Cell& cell, std::span<const GbrDemand> currentAdmitted,
                            const GbrDemand& request) {
  validate(cell);
  if (!(request.guaranteedRate > 0.0) || !(request.efficiency > 0.0)) {
    throw Error(Errc::InvalidModel, "guaranteedRate and efficiency must be > 0");
  }
  double units = request.units();
  for (const auto& d : currentAdmitted) units += d.units();
  const double budget = cell.gbrCapacityFraction * cell.uplinkCapacity;
  if (units <= budget + kRateEpsilon) return {true, {}};
  return {false, "GBR_BUDGET_EXCEEDED"};
}

double flow_latency(const Flow& flow, const PathConfig& path, double cellLoadRatio) {
  if (!(cellLoadRatio >= 0.0 && cellLoadRatio <= 1.0)) {
    throw Error(Errc::InvalidModel, "cellLoadRatio must be in [0, 1]");
  }
  const double base =
      flow.route == Route::Edge ? path.edgeBaseLatencyMs : path.coreBaseLatencyMs;
  return base + path.loadLatencySlopeMs * cellLoadRatio;
}

Traffic materialize_background(const BackgroundSchedule& schedule,
                               const std::string& cellId, int tick) {
  Traffic traffic;
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const auto& entry = schedule.entries[i];
    if (!entry.active.contains(tick)) continue;
    for (int k = 0; k < entry.flowCount; ++k) {
      const auto suffix = std::to_string(i) + "-" + std::to_string(k);
      UeContext ue{"ue-bg-" + suffix, cellId, entry.radioEfficiency};
      Flow flow;
      flow.flowId = "bg-" + suffix;
      flow.ueId = ue.ueId;
      flow.demandRate = entry.perFlowDemand;
      traffic.ues.push_back(std::move(ue));
      traffic.flows.push_back(std::move(flow));
    }
  }
  return traffic;
}

double predicted_load(const Cell& cell, const BackgroundSchedule& schedule,
                      const TickWindow& window, const std::optional<GbrDemand>& extraGbr) {
  if (window.startTick > window.endTick) throw Error(Errc::BadWindow);
  double peak = 0.0;
  for (int tick = window.startTick; tick <= window.endTick; ++tick) {
    auto traffic = materialize_background(schedule, cell.cellId, tick);
    std::set<std::string> admitted;
    if (extraGbr) {
      traffic.ues.push_back({"ue-probe", cell.cellId, extraGbr->efficiency});
      Flow probe;
      probe.flowId = "probe";
      probe.ueId = "ue-probe";
      probe.demandRate = extraGbr->guaranteedRate;
      probe.qosClass = Gbr{extraGbr->guaranteedRate};
      traffic.flows.push_back(probe);
      admitted.insert(probe.flowId);
    }
    if (traffic.flows.empty()) continue;
    peak = std::max(peak, allocate(cell, traffic.ues, traffic.flows, admitted).cellLoadRatio);
  }
  return peak;
}

}  // namespace capifqos::net
