#include "capifqos/net/network_model.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

#include <memory>
#include <random>

using namespace capifqos;
using namespace capifqos::net;

namespace {

std::unique_ptr<NetworkModel> make_model(double videoEff = 1.0) {
  auto m = std::make_unique<NetworkModel>(Cell{"cell-1", 12.0, 0.8});
  m->add_ue({"ue-car", "cell-1", videoEff});
  m->add_flow({"video", "ue-car", Direction::Uplink, 4.5, NonGbr{}, Route::Core});
  return m;
}

BackgroundSchedule ramp() {
  BackgroundSchedule s;
  for (int k = 1; k <= 4; ++k) s.entries.push_back({{20 * k, 99}, 1, 10.0, 1.0});
  return s;
}

}  // namespace

TEST_SUITE("network_model") {

TEST_CASE("registry validation") {
  NetworkModel m(Cell{"cell-1"});
  CHECK_ERRC(m.add_ue({"u", "cell-9", 1.0}), Errc::UnknownCell);
  CHECK_ERRC(m.add_ue({"u", "cell-1", 0.0}), Errc::InvalidModel);
  CHECK_ERRC(m.add_flow({"f", "missing", Direction::Uplink, 1.0, NonGbr{}, Route::Core}),
             Errc::UnknownUe);
  m.add_ue({"u", "cell-1", 0.5});
  CHECK_ERRC(m.add_flow({"f", "u", Direction::Uplink, -1.0, NonGbr{}, Route::Core}),
             Errc::InvalidModel);
  CHECK_ERRC(m.add_flow({"f", "u", Direction::Uplink, 1.0, Gbr{2.0}, Route::Core}),
             Errc::InvalidModel);
  m.add_flow({"f", "u", Direction::Uplink, 1.0, NonGbr{}, Route::Core});
  CHECK(m.has_flow("f"));
  CHECK(m.efficiency_of_flow("f") == 0.5);
  CHECK_ERRC(m.flow("nope"), Errc::UnknownFlow);
  CHECK_ERRC(NetworkModel(Cell{"c", -1.0}), Errc::InvalidModel);
}

TEST_CASE("admission reserves and release frees budget") {
  auto mp = make_model(0.5);
  auto& m = *mp;
  auto d = m.admit_gbr("video", 4.5);
  CHECK(d.admitted);
  CHECK(m.admitted_units() == doctest::Approx(9.0));
  CHECK(m.admitted_flows() == std::set<std::string>{"video"});
  CHECK(std::holds_alternative<Gbr>(m.flow("video").qosClass));

  m.add_ue({"ue-2", "cell-1", 1.0});
  m.add_flow({"other", "ue-2", Direction::Uplink, 4.5, NonGbr{}, Route::Core});
  CHECK_FALSE(m.admit_gbr("other", 1.0).admitted);  // 9 + 1 > 9.6

  m.release_gbr("video");
  CHECK(m.admitted_units() == 0.0);
  CHECK(std::holds_alternative<NonGbr>(m.flow("video").qosClass));
  CHECK_ERRC(m.release_gbr("video"), Errc::NotAdmitted);
  CHECK(m.admit_gbr("other", 1.0).admitted);
  CHECK_ERRC(m.admit_gbr("ghost", 1.0), Errc::UnknownFlow);
}

TEST_CASE("random admit/release never exceeds the GBR budget") {
  std::mt19937 rng(11);
  NetworkModel m(Cell{"cell-1", 12.0, 0.8});
  for (int i = 0; i < 10; ++i) {
    const auto id = std::to_string(i);
    m.add_ue({"ue-" + id, "cell-1", std::uniform_real_distribution<double>(0.2, 1.0)(rng)});
    m.add_flow({"f" + id, "ue-" + id, Direction::Uplink, 10.0, NonGbr{}, Route::Core});
  }
  for (int step = 0; step < 5000; ++step) {
    const auto id = "f" + std::to_string(rng() % 10);
    if (m.admitted_flows().contains(id)) {
      m.release_gbr(id);
    } else {
      m.admit_gbr(id, std::uniform_real_distribution<double>(0.1, 5.0)(rng));
    }
    REQUIRE(m.admitted_units() <= 0.8 * 12.0 + 1e-9);
  }
}

TEST_CASE("allocate_at follows the background schedule") {
  auto mp = make_model();
  auto& m = *mp;
  m.register_background_schedule(ramp());
  for (int k = 0; k <= 4; ++k) {
    const int tick = 20 * k + 5;
    auto r = m.allocate_at(tick);
    CHECK(r.achievedRate["video"] == doctest::Approx(oracle::video_rate(12, 4.5, 1.0, k)));
    CHECK(m.current_tick() == tick);
    CHECK(m.current_load() == doctest::Approx(r.cellLoadRatio));
  }
}

TEST_CASE("traffic influence lowers latency by the base difference") {
  auto mp = make_model();
  auto& m = *mp;
  const double core = m.flow_latency("video", 0.4);
  m.apply_traffic_influence("video", Route::Edge);
  CHECK(core - m.flow_latency("video", 0.4) == doctest::Approx(15.0));
  CHECK_ERRC(m.apply_traffic_influence("ghost", Route::Edge), Errc::UnknownFlow);
}

TEST_CASE("bookings are GBR only inside their window") {
  auto mp = make_model();
  auto& m = *mp;
  m.register_background_schedule(ramp());
  auto d = m.book_gbr("video", {40, 59}, 4.5);
  REQUIRE(d.admitted);
  CHECK_FALSE(m.is_gbr_at("video", 39));
  CHECK(m.is_gbr_at("video", 40));
  CHECK(m.is_gbr_at("video", 59));
  CHECK_FALSE(m.is_gbr_at("video", 60));

  CHECK(m.allocate_at(39).achievedRate["video"] == doctest::Approx(4.5));  // one bg flow
  CHECK(m.allocate_at(45).achievedRate["video"] == doctest::Approx(4.5));
  CHECK(m.allocate_at(65).achievedRate["video"] == doctest::Approx(3.0));

  CHECK_ERRC(m.book_gbr("video", {5, 4}, 1.0), Errc::BadWindow);
}

TEST_CASE("unexpired bookings count against admission") {
  auto mp = make_model(0.5);
  auto& m = *mp;
  m.add_ue({"ue-2", "cell-1", 1.0});
  m.add_flow({"other", "ue-2", Direction::Uplink, 4.5, NonGbr{}, Route::Core});
  REQUIRE(m.book_gbr("video", {10, 20}, 4.5).admitted);  // 9 units
  CHECK_FALSE(m.admit_gbr("other", 1.0).admitted);
  CHECK_FALSE(m.would_admit_booking({15, 30}, {1.0, 1.0}).admitted);
  CHECK(m.would_admit_booking({21, 30}, {1.0, 1.0}).admitted);

  m.allocate_at(21);  // booking has ended
  CHECK(m.admit_gbr("other", 1.0).admitted);
}

TEST_CASE("predicted load uses the registered schedule") {
  auto mp = make_model();
  auto& m = *mp;
  m.register_background_schedule(ramp());
  CHECK(m.predicted_load({0, 19}, GbrDemand{4.5, 1.0}) == doctest::Approx(0.375));
  CHECK(m.predicted_load({0, 20}, GbrDemand{4.5, 1.0}) == doctest::Approx(1.0));
}

}  // TEST_SUITE
