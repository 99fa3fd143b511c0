#include <doctest.h>

#include <stdexcept>

#include "fsosn/sweep.hpp"

using namespace fsosn;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.source = {43.65, -79.38, 0.1};
  c.destination = {-33.87, 151.21, 0.1};
  c.lisl_ranges_km = {5016.0, 1575.0, 3000.0};
  c.slot_count = 8;
  c.slot_seconds = 37.0;
  c.threads = 1;
  return c;
}

bool same_records(const SweepResult& a, const SweepResult& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t r = 0; r < a.records.size(); ++r) {
    for (std::size_t s = 0; s < a.records[r].size(); ++s) {
      const auto& x = a.records[r][s];
      const auto& y = b.records[r][s];
      if (x.reachable != y.reachable || x.net_ms != y.net_ms || x.power_mw != y.power_mw ||
          x.satellites != y.satellites) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("single slot means equal the slot values") {
  SweepConfig c = small_config();
  c.slot_count = 1;
  const auto r = sweep(c);
  REQUIRE(r.curve.points.size() == 3);
  CHECK(r.curve.points[0].lisl_range_km == 1575.0);
  CHECK(r.curve.points[2].lisl_range_km == 5016.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& rec = r.records[i][0];
    REQUIRE(rec.reachable);
    CHECK(*r.curve.points[i].mean_net_ms == rec.net_ms);
    CHECK(*r.curve.points[i].mean_power_mw == *rec.power_mw);
    CHECK(rec.satellites.size() >= 1);
  }
}

TEST_CASE("results do not depend on the thread count") {
  SweepConfig c = small_config();
  const auto one = sweep(c);
  c.threads = 3;
  const auto three = sweep(c);
  CHECK(same_records(one, three));
  for (std::size_t i = 0; i < one.curve.points.size(); ++i) {
    CHECK(one.curve.points[i].mean_net_ms == three.curve.points[i].mean_net_ms);
    CHECK(one.curve.points[i].mean_power_mw == three.curve.points[i].mean_power_mw);
  }
}

TEST_CASE("unreachable and infeasible slots are counted") {
  SweepConfig c = small_config();
  c.lisl_ranges_km = {50.0, 5016.0};
  c.slot_count = 3;
  const auto r = sweep(c);
  CHECK(r.curve.points[0].unreachable_slots == 3);
  CHECK_FALSE(r.curve.points[0].mean_net_ms.has_value());
  CHECK_FALSE(r.curve.points[0].mean_power_mw.has_value());
  CHECK(r.curve.points[1].unreachable_slots == 0);

  c.weather = cumulus();
  const auto cloudy = sweep(c);
  CHECK(cloudy.curve.points[1].infeasible_power_slots == 3);
  CHECK(cloudy.curve.points[1].mean_net_ms.has_value());
  CHECK_FALSE(cloudy.curve.points[1].mean_power_mw.has_value());
}

TEST_CASE("progress and input checks") {
  SweepConfig c = small_config();
  int calls = 0;
  int last = 0;
  sweep(c, [&](int done, int total) {
    ++calls;
    last = done;
    CHECK(total == 8);
  });
  CHECK(calls == 8);
  CHECK(last == 8);

  c.lisl_ranges_km = {1575.0, 1575.0};
  CHECK_THROWS_AS(sweep(c), std::invalid_argument);
  c.lisl_ranges_km = {};
  CHECK_THROWS_AS(sweep(c), std::invalid_argument);
  c = small_config();
  c.slot_count = 0;
  CHECK_THROWS_AS(sweep(c), std::invalid_argument);
  c = small_config();
  c.source.latitude_deg = 95.0;
  CHECK_THROWS(sweep(c));
}
