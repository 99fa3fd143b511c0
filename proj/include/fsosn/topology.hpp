#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fsosn/geo.hpp"

namespace fsosn {

enum class EdgeKind { lisl, ground };

struct Edge {
  int to{};
  double km{};
  EdgeKind kind{};
};

/// Undirected laser-link graph for one time slot.
/// Nodes [0, satellite_count) are satellites; the rest are ground stations in input order.
/// Graphs from build_slot_graph work out each neighbor list on first access and cache it, so a
/// search touches only the part of the graph it explores. Such a graph must not be read from
/// several threads at once.
class SlotGraph {
 public:
  SlotGraph() = default;
  /// `positions`, when given, holds one point per node and every edge weight must be the
  /// Euclidean distance between its endpoints; dijkstra then steers its search with it.
  SlotGraph(int satellite_count, int station_count, double lisl_range_km, double min_elevation_deg,
            const std::vector<std::vector<Edge>>& adjacency, std::vector<Vec3> positions = {});
  /// Compressed form: the edges of node v are edges[offsets[v], offsets[v + 1]).
  SlotGraph(int satellite_count, double lisl_range_km, double min_elevation_deg,
            std::vector<std::size_t> offsets, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int satellite_count() const { return satellite_count_; }
  int station_count() const { return node_count() - satellite_count_; }
  int station_node(int station_index) const { return satellite_count_ + station_index; }
  bool is_station(int node) const { return node >= satellite_count_; }

  double lisl_range_km() const { return lisl_range_km_; }
  double min_elevation_deg() const { return min_elevation_deg_; }

  /// Neighbors sorted by node id.
  std::span<const Edge> neighbors(int node) const {
    if (lazy_) return lazy_neighbors(node);
    return {edges_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  std::optional<double> weight(int a, int b) const;
  std::span<const Vec3> positions() const { return positions_; }
  std::size_t edge_count() const;

 private:
  friend void build_slot_graph(SlotGraph& out, std::span<const Vec3> sat_positions,
                               std::span<const Vec3> stations, double lisl_range_km,
                               double min_elevation_deg);

  std::span<const Edge> lazy_neighbors(int node) const;

  int satellite_count_{};
  int node_count_{};
  bool lazy_{};
  double lisl_range_km_{};
  double min_elevation_deg_{};
  std::vector<std::size_t> offsets_{0};
  std::vector<Edge> edges_;
  std::vector<Vec3> positions_;
  mutable std::vector<std::vector<Edge>> lists_;
  mutable std::vector<char> ready_;
};

/// Builds the slot graph: a satellite pair is linked when within range and the chord clears
/// the atmosphere shell; a station-satellite pair is linked at or above the minimum elevation.
SlotGraph build_slot_graph(std::span<const Vec3> sat_positions, std::span<const Vec3> stations,
                           double lisl_range_km, double min_elevation_deg);

/// Same, rebuilding `out` in place so its storage is reused from slot to slot.
void build_slot_graph(SlotGraph& out, std::span<const Vec3> sat_positions,
                      std::span<const Vec3> stations, double lisl_range_km,
                      double min_elevation_deg);

struct Path {
  std::vector<int> nodes;        // source station, satellites..., destination station
  std::vector<double> edge_km;   // nodes.size() - 1 entries
  double total_km{};

  int satellite_count() const { return static_cast<int>(nodes.size()) - 2; }
};

/// Minimum-distance path. Ties resolve to the lowest predecessor id.
/// On graphs that carry node positions the search is goal-directed by the straight-line distance
/// to the target; the returned path is the same as without it.
/// Scratch space is thread-local, so concurrent calls from different threads are safe.
/// Stations other than `source` are never used as relays.
/// `lisl_cap_km` ignores inter-satellite edges longer than the cap, so one graph built at the
/// largest range serves every smaller range.
std::optional<Path> dijkstra(const SlotGraph& g, int source, int target,
                             double lisl_cap_km = std::numeric_limits<double>::infinity());

}  // namespace fsosn
