#pragma once

#include "capifqos/net/allocation.hpp"

#include <map>
#include <mutex>
#include <set>

namespace capifqos::net {

// Mutable state of the emulated cell: attached UEs, registered flows, the
// admitted GBR set, routes, the background schedule and PDTQ bookings.
// Every method takes the model lock, so callers see each one as atomic.
class NetworkModel {
 public:
  explicit NetworkModel(Cell cell, PathConfig path = {});

  const Cell& cell() const { return cell_; }
  const PathConfig& path() const { return path_; }

  void add_ue(const UeContext& ue);
  void add_flow(const Flow& flow);
  bool has_flow(const std::string& flowId) const;
  Flow flow(const std::string& flowId) const;
  double efficiency_of_flow(const std::string& flowId) const;

  // Admits flowId as Gbr(guaranteedRate) if the budget allows. The budget
  // counts current admissions plus every booking that has not yet ended.
  AdmissionDecision admit_gbr(const std::string& flowId, Mbps guaranteedRate);
  void release_gbr(const std::string& flowId);
  std::set<std::string> admitted_flows() const;
  double admitted_units() const;

  void apply_traffic_influence(const std::string& flowId, Route route);

  void register_background_schedule(BackgroundSchedule schedule);
  BackgroundSchedule background_schedule() const;
  Traffic materialize_background(int tick) const;

  // Pre-books a GBR reservation active only while the tick lies in `window`.
  // Budget check as in admit_gbr, restricted to bookings overlapping window.
  AdmissionDecision book_gbr(const std::string& flowId, const TickWindow& window,
                             Mbps guaranteedRate);
  // Budget check only; nothing is stored.
  AdmissionDecision would_admit_booking(const TickWindow& window, const GbrDemand& demand) const;
  bool is_gbr_at(const std::string& flowId, int tick) const;

  // Allocation of registered flows plus the background active at `tick`.
  // Also advances the model clock to `tick` and records the resulting load.
  AllocationResult allocate_at(int tick);

  int current_tick() const;
  double current_load() const;

  double predicted_load(const TickWindow& window, const std::optional<GbrDemand>& extraGbr) const;

  double flow_latency(const std::string& flowId, double cellLoadRatio) const;

 private:
  struct Booking {
    std::string flowId;
    TickWindow window;
    Mbps guaranteedRate;
  };

  const Flow& flow_locked(const std::string& flowId) const;
  Flow& flow_mut_locked(const std::string& flowId);
  double efficiency_locked(const std::string& ueId) const;
  std::vector<GbrDemand> committed_locked(const std::optional<TickWindow>& window) const;

  mutable std::mutex mutex_;
  Cell cell_;
  PathConfig path_;
  std::map<std::string, UeContext> ues_;
  std::map<std::string, Flow> flows_;
  std::map<std::string, Mbps> admitted_;  // flowId -> guaranteed rate
  std::vector<Booking> bookings_;
  BackgroundSchedule schedule_;
  int tick_ = 0;
  double load_ = 0.0;
};

}  // namespace capifqos::net
