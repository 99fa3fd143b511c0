#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fsosn/constellation.hpp"
#include "fsosn/geo.hpp"
#include "fsosn/link_budget.hpp"
#include "fsosn/metrics.hpp"
#include "fsosn/topology.hpp"

namespace fsosn {

struct SweepConfig {
  WalkerParams constellation = starlink_phase1_v3();
  GeoPoint source;
  GeoPoint destination;
  std::vector<double> lisl_ranges_km;
  WeatherProfile weather = thin_cirrus();
  LinkBudgetParams link_budget;
  double node_ms = 10.0;
  int slot_count = 6000;
  double slot_seconds = 1.0;
  double min_elevation_deg = 25.0;
  int threads = 0;  // 0 = hardware concurrency
};

struct SlotRecord {
  int slot{};
  bool reachable{};
  double net_ms{};
  std::optional<double> power_mw;  // empty when unreachable or a ground link is infeasible
  std::vector<int> satellites;     // path without the two stations
};

struct SweepResult {
  TradeoffCurve curve;
  std::vector<std::vector<SlotRecord>> records;  // [range index][slot], same order as curve
};

/// Per slot: propagate, build one graph at the largest range, route every range on it, then
/// average over reachable slots. Output is independent of the thread count.
SweepResult sweep(const SweepConfig& config,
                  const std::function<void(int done, int total)>& progress = {});

/// Metrics for one slot and one range (shared by sweep and the CLI/tests).
SlotRecord evaluate_slot(const SlotGraph& graph, std::span<const Vec3> satellites,
                         std::span<const Vec3> stations, const SweepConfig& config,
                         double lisl_cap_km, int slot);

}  // namespace fsosn
