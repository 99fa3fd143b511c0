#include "fsosn/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fsosn {

SlotGraph::SlotGraph(int satellite_count, int station_count, double lisl_range_km,
                     double min_elevation_deg, const std::vector<std::vector<Edge>>& adjacency,
                     std::vector<Vec3> positions)
    : satellite_count_(satellite_count),
      lisl_range_km_(lisl_range_km),
      min_elevation_deg_(min_elevation_deg),
      positions_(std::move(positions)) {
  node_count_ = static_cast<int>(adjacency.size());
  if (static_cast<int>(adjacency.size()) != satellite_count + station_count) {
    throw std::invalid_argument("adjacency size does not match node count");
  }
  if (!positions_.empty() && positions_.size() != adjacency.size()) {
    throw std::invalid_argument("positions size does not match node count");
  }
  for (const auto& list : adjacency) {
    const auto first = static_cast<std::ptrdiff_t>(edges_.size());
    edges_.insert(edges_.end(), list.begin(), list.end());
    std::sort(edges_.begin() + first, edges_.end(),
              [](const Edge& a, const Edge& b) { return a.to < b.to; });
    offsets_.push_back(edges_.size());
  }
}

SlotGraph::SlotGraph(int satellite_count, double lisl_range_km, double min_elevation_deg,
                     std::vector<std::size_t> offsets, std::vector<Edge> edges)
    : satellite_count_(satellite_count),
      lisl_range_km_(lisl_range_km),
      min_elevation_deg_(min_elevation_deg),
      offsets_(std::move(offsets)),
      edges_(std::move(edges)) {
  if (offsets_.empty() || offsets_.back() != edges_.size() ||
      static_cast<int>(offsets_.size()) - 1 < satellite_count) {
    throw std::invalid_argument("inconsistent compressed adjacency");
  }
  node_count_ = static_cast<int>(offsets_.size()) - 1;
}

std::optional<double> SlotGraph::weight(int a, int b) const {
  const auto nb = neighbors(a);
  const auto it = std::lower_bound(nb.begin(), nb.end(), b,
                                   [](const Edge& e, int id) { return e.to < id; });
  if (it == nb.end() || it->to != b) return std::nullopt;
  return it->km;
}

std::size_t SlotGraph::edge_count() const {
  if (!lazy_) return edges_.size() / 2;
  std::size_t ends = 0;
  for (int v = 0; v < node_count_; ++v) ends += neighbors(v).size();
  return ends / 2;
}

std::span<const Edge> SlotGraph::lazy_neighbors(int node) const {
  auto& list = lists_[node];
  if (ready_[node]) return list;
  ready_[node] = 1;

  const std::span<const Vec3> sats(positions_.data(), static_cast<std::size_t>(satellite_count_));
  const std::span<const Vec3> stations(positions_.data() + satellite_count_,
                                       static_cast<std::size_t>(node_count_ - satellite_count_));
  auto ground_ok = [&](const Vec3& gs, const Vec3& sat) {
    const auto el = elevation_angle(gs, sat);
    return el && *el >= min_elevation_deg_;
  };

  if (is_station(node)) {
    const Vec3& gs = positions_[node];
    for (int i = 0; i < satellite_count_; ++i) {
      if (ground_ok(gs, sats[i])) list.push_back({i, distance(gs, sats[i]), EdgeKind::ground});
    }
    return list;
  }

  const double r2 = lisl_range_km_ * lisl_range_km_;
  const double shell = earth::kRadiusKm + earth::kAtmosphereHeightKm;
  const double shell2 = shell * shell;
  const Vec3& p = sats[node];
  const double rp = dot(p, p);
  for (int j = 0; j < satellite_count_; ++j) {
    const double dx = p.x - sats[j].x;
    const double dy = p.y - sats[j].y;
    const double dz = p.z - sats[j].z;
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 > r2 || j == node) continue;
    // Every point of the chord is at least sqrt(min(|a|^2, |b|^2) - d^2/4) from the centre,
    // so the exact test is needed only when that bound dips below the shell. The exact test
    // always takes the lower id first so both ends of a link agree.
    if (std::min(rp, dot(sats[j], sats[j])) - 0.25 * d2 < shell2) {
      const auto [a, b] = std::minmax(node, j);
      if (segment_min_radius(sats[a], sats[b]) < shell) continue;
    }
    list.push_back({j, std::sqrt(d2), EdgeKind::lisl});
  }
  for (int k = 0; k < static_cast<int>(stations.size()); ++k) {
    if (ground_ok(stations[k], p)) {
      list.push_back({satellite_count_ + k, distance(stations[k], p), EdgeKind::ground});
    }
  }
  return list;
}

void build_slot_graph(SlotGraph& out, std::span<const Vec3> sat_positions,
                      std::span<const Vec3> stations, double lisl_range_km,
                      double min_elevation_deg) {
  const auto n = sat_positions.size() + stations.size();
  out.positions_.assign(sat_positions.begin(), sat_positions.end());
  out.positions_.insert(out.positions_.end(), stations.begin(), stations.end());
  out.satellite_count_ = static_cast<int>(sat_positions.size());
  out.node_count_ = static_cast<int>(n);
  out.lisl_range_km_ = lisl_range_km;
  out.min_elevation_deg_ = min_elevation_deg;
  out.lazy_ = true;
  out.offsets_.assign(1, 0);
  out.edges_.clear();
  if (out.lists_.size() < n) out.lists_.resize(n);
  for (auto& list : out.lists_) list.clear();
  out.ready_.assign(n, 0);
}

SlotGraph build_slot_graph(std::span<const Vec3> sat_positions, std::span<const Vec3> stations,
                           double lisl_range_km, double min_elevation_deg) {
  SlotGraph g;
  build_slot_graph(g, sat_positions, stations, lisl_range_km, min_elevation_deg);
  return g;
}

std::optional<Path> dijkstra(const SlotGraph& g, int source, int target, double lisl_cap_km) {
  const int n = g.node_count();
  if (source < 0 || source >= n || target < 0 || target >= n) {
    throw std::out_of_range("dijkstra: node id out of range");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  using Entry = std::pair<double, int>;
  struct Scratch {
    std::vector<double> dist;
    std::vector<double> bound;
    std::vector<int> pred;
    std::vector<char> done;
    std::vector<Entry> heap;
  };
  thread_local Scratch scratch;
  auto& [dist, bound, pred, done, heap] = scratch;
  dist.assign(static_cast<std::size_t>(n), inf);
  pred.assign(static_cast<std::size_t>(n), -1);
  done.assign(static_cast<std::size_t>(n), 0);
  heap.clear();

  // Lower bound on the remaining distance. Shrinking the straight line by 1e-9 keeps it strictly
  // consistent despite rounding, so every equal-cost predecessor of a node is settled before the
  // node itself and the tie rule sees the same candidates as a plain search.
  const auto pos = g.positions();
  bound.assign(static_cast<std::size_t>(n), 0.0);
  if (!pos.empty()) {
    for (int v = 0; v < n; ++v) bound[v] = (1.0 - 1e-9) * distance(pos[v], pos[target]);
  }

  // Min-heap on (distance + bound, node id) kept in a reusable vector.
  const auto later = std::greater<>{};
  auto push = [&](double key, int v) {
    heap.emplace_back(key, v);
    std::push_heap(heap.begin(), heap.end(), later);
  };
  dist[source] = 0.0;
  push(bound[source], source);

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    const int q = heap.back().second;
    heap.pop_back();
    if (done[q]) continue;
    done[q] = 1;
    if (q == target) break;
    if (q != source && g.is_station(q)) continue;
    const double d = dist[q];
    for (const Edge& e : g.neighbors(q)) {
      if (e.km > lisl_cap_km && e.kind == EdgeKind::lisl) continue;
      if (done[e.to]) continue;
      const double nd = d + e.km;
      if (nd < dist[e.to] || (nd == dist[e.to] && q < pred[e.to])) {
        dist[e.to] = nd;
        pred[e.to] = q;
        push(nd + bound[e.to], e.to);
      }
    }
  }
  if (!done[target] || source == target) return std::nullopt;

  Path path;
  for (int v = target; v != -1; v = pred[v]) path.nodes.push_back(v);
  std::reverse(path.nodes.begin(), path.nodes.end());
  path.edge_km.reserve(path.nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    path.edge_km.push_back(*g.weight(path.nodes[i], path.nodes[i + 1]));
  }
  path.total_km = dist[target];
  return path;
}

}  // namespace fsosn
