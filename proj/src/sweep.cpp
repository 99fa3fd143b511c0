#include "fsosn/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fsosn/quadrature.hpp"
#include "fsosn/topology.hpp"

namespace fsosn {

SlotRecord evaluate_slot(const SlotGraph& graph, std::span<const Vec3> satellites,
                         std::span<const Vec3> stations, const SweepConfig& config,
                         double lisl_cap_km, int slot) {
  SlotRecord rec;
  rec.slot = slot;
  const auto path = dijkstra(graph, graph.station_node(0), graph.station_node(1), lisl_cap_km);
  if (!path) return rec;

  rec.reachable = true;
  rec.satellites.assign(path->nodes.begin() + 1, path->nodes.end() - 1);
  rec.net_ms = path_latency(*path, config.node_ms).net_ms;

  // Ground edges only exist above the elevation mask, so both angles are defined.
  PathGeometry geom;
  geom.source_altitude_km = config.source.altitude_km;
  geom.destination_altitude_km = config.destination.altitude_km;
  geom.up_elevation_deg = *elevation_angle(stations[0], satellites[rec.satellites.front()]);
  geom.down_elevation_deg = *elevation_angle(stations[1], satellites[rec.satellites.back()]);
  rec.power_mw = path_power(*path, config.link_budget, config.weather, geom).average_mw;
  return rec;
}

namespace {

struct Worker {
  const SweepConfig& config;
  const Constellation& constellation;
  std::array<Vec3, 2> stations;
  std::vector<double> ranges;
  double max_range;

  void run_slot(int slot, SlotGraph& graph, std::vector<std::vector<SlotRecord>>& out) const {
    const auto snap = propagate(constellation, slot * config.slot_seconds);
    build_slot_graph(graph, snap.positions, stations, max_range, config.min_elevation_deg);
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      out[r][slot] = evaluate_slot(graph, snap.positions, stations, config, ranges[r], slot);
    }
  }
};

}  // namespace

SweepResult sweep(const SweepConfig& config,
                  const std::function<void(int done, int total)>& progress) {
  if (config.slot_count < 1) throw std::invalid_argument("slot_count must be >= 1");
  if (config.lisl_ranges_km.empty()) throw std::invalid_argument("no LISL ranges given");
  validate(config.source);
  validate(config.destination);
  validate(config.link_budget);
  validate(config.weather);

  std::vector<double> ranges = config.lisl_ranges_km;
  std::sort(ranges.begin(), ranges.end());
  if (std::adjacent_find(ranges.begin(), ranges.end()) != ranges.end()) {
    throw std::invalid_argument("duplicate LISL range");
  }
  if (!(ranges.front() > 0.0)) throw std::invalid_argument("LISL ranges must be positive");

  const Constellation constellation = generate(config.constellation);
  const Worker worker{config,
                      constellation,
                      {geodetic_to_ecef(config.source), geodetic_to_ecef(config.destination)},
                      ranges,
                      ranges.back()};

  SweepResult result;
  result.records.assign(ranges.size(), std::vector<SlotRecord>(config.slot_count));

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.slot_count);

  std::atomic<int> next{0};
  std::atomic<int> completed{0};
  std::mutex progress_mutex;
  auto body = [&] {
    SlotGraph graph;
    for (int slot = next++; slot < config.slot_count; slot = next++) {
      worker.run_slot(slot, graph, result.records);
      const int done = ++completed;
      if (progress) {
        std::scoped_lock lock(progress_mutex);
        progress(done, config.slot_count);
      }
    }
  };
  if (threads == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  }

  result.curve.slot_count = config.slot_count;
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    TradeoffPoint pt;
    pt.lisl_range_km = ranges[r];
    std::vector<double> nets;
    std::vector<double> powers;
    for (const auto& rec : result.records[r]) {
      if (!rec.reachable) {
        ++pt.unreachable_slots;
        continue;
      }
      nets.push_back(rec.net_ms);
      if (rec.power_mw) {
        powers.push_back(*rec.power_mw);
      } else {
        ++pt.infeasible_power_slots;
      }
    }
    if (!nets.empty()) pt.mean_net_ms = pairwise_sum(nets) / static_cast<double>(nets.size());
    if (!powers.empty()) {
      pt.mean_power_mw = pairwise_sum(powers) / static_cast<double>(powers.size());
    }
    result.curve.points.push_back(pt);
  }
  return result;
}

}  // namespace fsosn
