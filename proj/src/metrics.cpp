#include "fsosn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsosn/geo.hpp"

namespace fsosn {

NodeDelay node_delay_components(double packet_bytes, double rate_gbps) {
  if (!(packet_bytes > 0.0) || !(rate_gbps > 0.0)) {
    throw std::invalid_argument("packet size and data rate must be positive");
  }
  NodeDelay d;
  d.transmission_ms = packet_bytes * 8.0 / (rate_gbps * 1e9) * 1e3;
  d.node_ms = d.queuing_ms + d.processing_ms;
  return d;
}

double link_latency_ms(double distance_km) { return distance_km / earth::kSpeedOfLightKmPerMs; }

LatencyBreakdown latency_from_delays(double up_ms, std::span<const double> isl_ms, double down_ms,
                                     double node_ms) {
  LatencyBreakdown b;
  b.up_ms = up_ms;
  b.isl_ms.assign(isl_ms.begin(), isl_ms.end());
  b.down_ms = down_ms;
  b.satellites = static_cast<int>(isl_ms.size()) + 1;
  b.node_ms = node_ms;
  double links = up_ms;
  for (double t : isl_ms) links += t;
  links += down_ms;
  b.net_ms = links + b.satellites * node_ms;
  return b;
}

LatencyBreakdown path_latency(const Path& path, double node_ms) {
  if (path.nodes.size() < 3 || path.edge_km.size() + 1 != path.nodes.size()) {
    throw std::invalid_argument("path must contain at least one satellite");
  }
  std::vector<double> isl;
  isl.reserve(path.edge_km.size() - 2);
  for (std::size_t k = 1; k + 1 < path.edge_km.size(); ++k) {
    isl.push_back(link_latency_ms(path.edge_km[k]));
  }
  return latency_from_delays(link_latency_ms(path.edge_km.front()), isl,
                             link_latency_ms(path.edge_km.back()), node_ms);
}

std::vector<double> satellite_powers(double up, std::span<const double> isl, double down) {
  if (isl.empty()) return {up + down};
  std::vector<double> out;
  out.reserve(isl.size() + 1);
  out.push_back(up + isl.front());
  for (std::size_t m = 1; m < isl.size(); ++m) out.push_back(isl[m - 1] + isl[m]);
  out.push_back(isl.back() + down);
  return out;
}

PowerBreakdown path_power(const Path& path, const LinkBudgetParams& lb, const WeatherProfile& w,
                          const PathGeometry& geometry) {
  if (path.nodes.size() < 3 || path.edge_km.size() + 1 != path.nodes.size()) {
    throw std::invalid_argument("path must contain at least one satellite");
  }
  PowerBreakdown b;
  const auto up = updown_transmission_power(lb, Direction::up, path.edge_km.front(),
                                            geometry.up_elevation_deg, geometry.source_altitude_km, w);
  const auto down =
      updown_transmission_power(lb, Direction::down, path.edge_km.back(),
                                geometry.down_elevation_deg, geometry.destination_altitude_km, w);
  if (up) b.up_mw = *up * 1e3;
  if (down) b.down_mw = *down * 1e3;
  for (std::size_t k = 1; k + 1 < path.edge_km.size(); ++k) {
    b.isl_mw.push_back(lisl_transmission_power(lb, path.edge_km[k]) * 1e3);
  }
  if (!b.up_mw || !b.down_mw) return b;
  b.satellite_mw = satellite_powers(*b.up_mw, b.isl_mw, *b.down_mw);
  double total = 0.0;
  for (double p : b.satellite_mw) total += p;
  b.average_mw = total / static_cast<double>(b.satellite_mw.size());
  return b;
}

std::optional<Intersection> find_intersection(const TradeoffCurve& curve) {
  std::vector<const TradeoffPoint*> pts;
  for (const auto& p : curve.points) {
    if (p.mean_net_ms && p.mean_power_mw) pts.push_back(&p);
  }
  if (pts.size() < 2) return std::nullopt;

  auto [tmin, tmax] = std::minmax_element(pts.begin(), pts.end(), [](auto* a, auto* b) {
    return *a->mean_net_ms < *b->mean_net_ms;
  });
  auto [pmin, pmax] = std::minmax_element(pts.begin(), pts.end(), [](auto* a, auto* b) {
    return *a->mean_power_mw < *b->mean_power_mw;
  });
  const double t_lo = *(*tmin)->mean_net_ms;
  const double t_span = *(*tmax)->mean_net_ms - t_lo;
  const double p_lo = *(*pmin)->mean_power_mw;
  const double p_span = *(*pmax)->mean_power_mw - p_lo;
  if (t_span <= 0.0 || p_span <= 0.0) return std::nullopt;

  auto gap = [&](const TradeoffPoint* p) {
    return (*p->mean_net_ms - t_lo) / t_span - (*p->mean_power_mw - p_lo) / p_span;
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double g0 = gap(pts[i]);
    const double g1 = gap(pts[i + 1]);
    if ((g0 <= 0.0 && g1 >= 0.0) || (g0 >= 0.0 && g1 <= 0.0)) {
      const double f = (g0 == g1) ? 0.0 : g0 / (g0 - g1);
      auto lerp = [f](double a, double b) { return a + f * (b - a); };
      return Intersection{lerp(pts[i]->lisl_range_km, pts[i + 1]->lisl_range_km),
                          lerp(*pts[i]->mean_net_ms, *pts[i + 1]->mean_net_ms),
                          lerp(*pts[i]->mean_power_mw, *pts[i + 1]->mean_power_mw)};
    }
  }
  return std::nullopt;
}

}  // namespace fsosn
