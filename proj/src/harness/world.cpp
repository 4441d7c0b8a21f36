#include "capifqos/harness/world.hpp"

#include "capifqos/error.hpp"
#include "capifqos/nef/http.hpp"

#include <iostream>

namespace capifqos::harness {

namespace {

net::Cell cell_of(const ScenarioSpec& spec) {
  return {kCellId, spec.cellCapacity, spec.gbrCapacityFraction};
}

void log_to_stderr(const std::string& line) { std::cerr << line << '\n'; }

nef::NefConfig nef_config_of(const ScenarioSpec& spec) {
  nef::NefConfig config;
  config.qosReferences[spec.adaptation.qosReference] = spec.videoDemand;
  return config;
}

}  // namespace

ScenarioWorld::ScenarioWorld(const ScenarioSpec& spec,
                             std::shared_ptr<nef::NotificationTransport> transport,
                             nef::RetryPolicy retry, const capif::Endpoint& nefEndpoint,
                             capif::Clock clock)
    : spec_((validate(spec), spec)),
      videoStart_(harness::video_start_tick(spec_)),
      ccf_(std::move(clock), spec_.seed),
      network_(cell_of(spec_), spec_.path),
      dispatcher_(std::move(transport), std::move(retry), log_to_stderr),
      nef_(network_, std::make_shared<nef::CoreIntrospector>(ccf_), dispatcher_,
           nef_config_of(spec_)) {
  network_.register_background_schedule(spec_.backgroundSchedule);
  network_.add_ue({kVideoUeId, kCellId, spec_.videoEfficiency});

  const auto provider = ccf_.register_provider("nef.operator.example");
  for (const auto& apiName : nef::nef_api_names()) {
    capif::ServiceApiDraft draft;
    draft.apiName = apiName;
    draft.aefId = nef_.config().aefId;
    draft.endpoint = nefEndpoint;
    draft.endpoint.basePath = nef::base_path_for(apiName);
    published_.push_back(
        ccf_.publish_service_api(provider.providerId, provider.providerSecret, draft));
  }
}

TickSnapshot ScenarioWorld::advance(int tick) {
  std::lock_guard lock(mutex_);
  TickSnapshot snap;
  snap.tick = tick;

  if (!videoAdded_ && tick >= videoStart_) {
    network_.add_flow({kVideoFlowId, kVideoUeId, net::Direction::Uplink, spec_.videoDemand,
                       net::NonGbr{}, net::Route::Core});
    videoAdded_ = true;
  }
  snap.videoActive = videoAdded_;

  snap.activeBackgroundFlows = static_cast<int>(network_.materialize_background(tick).flows.size());
  snap.allocation = network_.allocate_at(tick);
  if (snap.videoActive) {
    snap.videoLatencyMs = network_.flow_latency(kVideoFlowId, snap.allocation.cellLoadRatio);
  }
  snap.monitoringNotifications =
      nef_.evaluate_monitoring_tick({{kCellId, snap.allocation.cellLoadRatio}});
  return snap;
}

}  // namespace capifqos::harness
