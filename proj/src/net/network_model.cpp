#include "capifqos/net/network_model.hpp"

#include "capifqos/error.hpp"

namespace capifqos::net {

NetworkModel::NetworkModel(Cell cell, PathConfig path)
    : cell_(std::move(cell)), path_(path) {
  validate(cell_);
  validate(path_);
}

void NetworkModel::add_ue(const UeContext& ue) {
  if (ue.cellId != cell_.cellId) throw Error(Errc::UnknownCell, ue.cellId);
  if (!(ue.radioEfficiency > 0.0 && ue.radioEfficiency <= 1.0)) {
    throw Error(Errc::InvalidModel, "radioEfficiency must be in (0, 1]");
  }
  std::lock_guard lock(mutex_);
  ues_[ue.ueId] = ue;
}

void NetworkModel::add_flow(const Flow& flow) {
  if (flow.demandRate < 0) throw Error(Errc::InvalidModel, "negative demandRate");
  if (const auto* gbr = std::get_if<Gbr>(&flow.qosClass)) {
    if (!(gbr->guaranteedRate > 0.0 && gbr->guaranteedRate <= flow.demandRate)) {
      throw Error(Errc::InvalidModel, "Gbr flow needs 0 < guaranteedRate <= demandRate");
    }
  }
  std::lock_guard lock(mutex_);
  if (!ues_.contains(flow.ueId)) throw Error(Errc::UnknownUe, flow.ueId);
  flows_[flow.flowId] = flow;
}

bool NetworkModel::has_flow(const std::string& flowId) const {
  std::lock_guard lock(mutex_);
  return flows_.contains(flowId);
}

const Flow& NetworkModel::flow_locked(const std::string& flowId) const {
  auto it = flows_.find(flowId);
  if (it == flows_.end()) throw Error(Errc::UnknownFlow, flowId);
  return it->second;
}

Flow& NetworkModel::flow_mut_locked(const std::string& flowId) {
  auto it = flows_.find(flowId);
  if (it == flows_.end()) throw Error(Errc::UnknownFlow, flowId);
  return it->second;
}

double NetworkModel::efficiency_locked(const std::string& ueId) const {
  auto it = ues_.find(ueId);
  if (it == ues_.end()) throw Error(Errc::UnknownUe, ueId);
  return it->second.radioEfficiency;
}

Flow NetworkModel::flow(const std::string& flowId) const {
  std::lock_guard lock(mutex_);
  return flow_locked(flowId);
}

double NetworkModel::efficiency_of_flow(const std::string& flowId) const {
  std::lock_guard lock(mutex_);
  return efficiency_locked(flow_locked(flowId).ueId);
}

std::vector<GbrDemand> NetworkModel::committed_locked(
    const std::optional<TickWindow>& window) const {
  std::vector<GbrDemand> committed;
  for (const auto& [flowId, rate] : admitted_) {
    committed.push_back({rate, efficiency_locked(flow_locked(flowId).ueId)});
  }
  for (const auto& booking : bookings_) {
    if (booking.window.endTick < tick_) continue;
    if (window && !booking.window.overlaps(*window)) continue;
    committed.push_back(
        {booking.guaranteedRate, efficiency_locked(flow_locked(booking.flowId).ueId)});
  }
  return committed;
}

AdmissionDecision NetworkModel::admit_gbr(const std::string& flowId, Mbps guaranteedRate) {
  std::lock_guard lock(mutex_);
  auto& flow = flow_mut_locked(flowId);
  if (admitted_.contains(flowId)) {
    throw Error(Errc::InfeasibleGbr, flowId + " already admitted");
  }
  const GbrDemand request{guaranteedRate, efficiency_locked(flow.ueId)};
  auto decision = net::admit_gbr(cell_, committed_locked(std::nullopt), request);
  if (decision.admitted) {
    admitted_[flowId] = guaranteedRate;
    flow.qosClass = Gbr{guaranteedRate};
  }
  return decision;
}

void NetworkModel::release_gbr(const std::string& flowId) {
  std::lock_guard lock(mutex_);
  auto it = admitted_.find(flowId);
  if (it == admitted_.end()) throw Error(Errc::NotAdmitted, flowId);
  admitted_.erase(it);
  if (auto f = flows_.find(flowId); f != flows_.end()) f->second.qosClass = NonGbr{};
}

std::set<std::string> NetworkModel::admitted_flows() const {
  std::lock_guard lock(mutex_);
  std::set<std::string> out;
  for (const auto& [flowId, rate] : admitted_) out.insert(flowId);
  return out;
}

double NetworkModel::admitted_units() const {
  std::lock_guard lock(mutex_);
  double units = 0.0;
  for (const auto& d : committed_locked(std::nullopt)) units += d.units();
  return units;
}

void NetworkModel::apply_traffic_influence(const std::string& flowId, Route route) {
  std::lock_guard lock(mutex_);
  flow_mut_locked(flowId).route = route;
}

void NetworkModel::register_background_schedule(BackgroundSchedule schedule) {
  validate(schedule);
  std::lock_guard lock(mutex_);
  schedule_ = std::move(schedule);
}

BackgroundSchedule NetworkModel::background_schedule() const {
  std::lock_guard lock(mutex_);
  return schedule_;
}

Traffic NetworkModel::materialize_background(int tick) const {
  std::lock_guard lock(mutex_);
  return net::materialize_background(schedule_, cell_.cellId, tick);
}

AdmissionDecision NetworkModel::would_admit_booking(const TickWindow& window,
                                                    const GbrDemand& demand) const {
  std::lock_guard lock(mutex_);
  return net::admit_gbr(cell_, committed_locked(window), demand);
}

AdmissionDecision NetworkModel::book_gbr(const std::string& flowId, const TickWindow& window,
                                         Mbps guaranteedRate) {
  if (window.startTick > window.endTick) throw Error(Errc::BadWindow);
  std::lock_guard lock(mutex_);
  const auto& flow = flow_locked(flowId);
  const GbrDemand request{guaranteedRate, efficiency_locked(flow.ueId)};
  auto decision = net::admit_gbr(cell_, committed_locked(window), request);
  if (decision.admitted) bookings_.push_back({flowId, window, guaranteedRate});
  return decision;
}

bool NetworkModel::is_gbr_at(const std::string& flowId, int tick) const {
  std::lock_guard lock(mutex_);
  if (admitted_.contains(flowId)) return true;
  for (const auto& booking : bookings_) {
    if (booking.flowId == flowId && booking.window.contains(tick)) return true;
  }
  return false;
}

AllocationResult NetworkModel::allocate_at(int tick) {
  std::lock_guard lock(mutex_);
  tick_ = tick;

  auto traffic = net::materialize_background(schedule_, cell_.cellId, tick);
  std::vector<UeContext> ues = std::move(traffic.ues);
  for (const auto& [id, ue] : ues_) ues.push_back(ue);

  std::set<std::string> admitted;
  for (const auto& [flowId, rate] : admitted_) admitted.insert(flowId);

  std::vector<Flow> flows;
  flows.reserve(flows_.size() + traffic.flows.size());
  for (const auto& [id, flow] : flows_) {
    Flow effective = flow;
    if (!admitted.contains(id)) {
      effective.qosClass = NonGbr{};
      for (const auto& booking : bookings_) {
        if (booking.flowId == id && booking.window.contains(tick)) {
          effective.qosClass = Gbr{booking.guaranteedRate};
          admitted.insert(id);
          break;
        }
      }
    }
    flows.push_back(std::move(effective));
  }
  for (auto& f : traffic.flows) flows.push_back(std::move(f));

  auto result = net::allocate(cell_, ues, flows, admitted);
  load_ = result.cellLoadRatio;
  return result;
}

int NetworkModel::current_tick() const {
  std::lock_guard lock(mutex_);
  return tick_;
}

double NetworkModel::current_load() const {
  std::lock_guard lock(mutex_);
  return load_;
}

double NetworkModel::predicted_load(const TickWindow& window,
                                    const std::optional<GbrDemand>& extraGbr) const {
  std::lock_guard lock(mutex_);
  return net::predicted_load(cell_, schedule_, window, extraGbr);
}

double NetworkModel::flow_latency(const std::string& flowId, double cellLoadRatio) const {
  std::lock_guard lock(mutex_);
  return net::flow_latency(flow_locked(flowId), path_, cellLoadRatio);
}

}  // namespace capifqos::net
