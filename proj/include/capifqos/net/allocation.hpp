#pragma once

#include "capifqos/net/types.hpp"

#include <set>
#include <span>

namespace capifqos::net {

inline constexpr double kRateEpsilon = 1e-9;

// Two-phase uplink allocation. Admitted GBR flows first reserve
// min(demand, guarantee)/e units; the remaining units are then shared by
// progressive filling over every flow's residual unit demand.
//
// Only flows whose id is in `admittedGbr` AND whose class is Gbr get a
// reservation; Gbr-class flows outside the set are treated as NonGbr.
// Ids in `admittedGbr` with no matching flow are ignored.
//
// Throws UNKNOWN_UE when a flow's UE is absent or attached to another cell,
// INFEASIBLE_GBR when an admitted id names a NonGbr flow or the
// reservations exceed the cell.
AllocationResult allocate(const Cell& cell, std::span<const UeContext> ues,
                          std::span<const Flow> flows,
                          const std::set<std::string>& admittedGbr);

// Admission test against the cell's GBR budget, in resource units.
AdmissionDecision admit_gbr(const Cell& cell, std::span<const GbrDemand> currentAdmitted,
                            const GbrDemand& request);

double flow_latency(const Flow& flow, const PathConfig& path, double cellLoadRatio);

void validate(const Cell& cell);
void validate(const PathConfig& path);
void validate(const BackgroundSchedule& schedule);

// Background flows active at `tick`, ids "bg-{entryIndex}-{k}" on UEs
// "ue-bg-{entryIndex}-{k}".
Traffic materialize_background(const BackgroundSchedule& schedule,
                               const std::string& cellId, int tick);

// Peak cell load over `window` when allocating the scheduled background plus
// an optional hypothetical admitted GBR flow.
double predicted_load(const Cell& cell, const BackgroundSchedule& schedule,
                      const TickWindow& window,
                      const std::optional<GbrDemand>& extraGbr = std::nullopt);

}  // namespace capifqos::net
