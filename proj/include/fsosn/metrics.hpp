#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fsosn/link_budget.hpp"
#include "fsosn/topology.hpp"

namespace fsosn {

struct NodeDelay {
  double transmission_ms{};
  double queuing_ms = 4.0;
  double processing_ms = 6.0;
  double node_ms = 10.0;  // queuing + processing; transmission is negligible at these rates
};

NodeDelay node_delay_components(double packet_bytes, double rate_gbps);

/// Propagation delay of a link, ms.
double link_latency_ms(double distance_km);

struct LatencyBreakdown {
  double up_ms{};
  std::vector<double> isl_ms;
  double down_ms{};
  int satellites{};
  double node_ms{};
  double net_ms{};
};

/// End-to-end latency from per-link delays: links plus one node delay per satellite.
LatencyBreakdown latency_from_delays(double up_ms, std::span<const double> isl_ms, double down_ms,
                                     double node_ms);

LatencyBreakdown path_latency(const Path& path, double node_ms);

/// Per-satellite transmit powers from per-link powers: each satellite carries its incoming and
/// outgoing link. With no ISLs the single satellite carries both ground links.
std::vector<double> satellite_powers(double up, std::span<const double> isl, double down);

struct PowerBreakdown {
  std::optional<double> up_mw;    // empty when the uplink is infeasible
  std::vector<double> isl_mw;
  std::optional<double> down_mw;  // empty when the downlink is infeasible
  std::vector<double> satellite_mw;
  std::optional<double> average_mw;

  bool feasible() const { return average_mw.has_value(); }
};

struct PathGeometry {
  double up_elevation_deg{};
  double down_elevation_deg{};
  double source_altitude_km{};
  double destination_altitude_km{};
};

PowerBreakdown path_power(const Path& path, const LinkBudgetParams& lb, const WeatherProfile& w,
                          const PathGeometry& geometry);

struct TradeoffPoint {
  double lisl_range_km{};
  std::optional<double> mean_net_ms;
  std::optional<double> mean_power_mw;
  int unreachable_slots{};
  int infeasible_power_slots{};
};

struct TradeoffCurve {
  int slot_count{};
  std::vector<TradeoffPoint> points;  // ascending range
};

struct Intersection {
  double lisl_range_km{};
  double net_ms{};
  double power_mw{};
};

/// Both series are min-max normalized over the curve, then the first crossing is located by
/// linear interpolation. Empty when the normalized series do not cross.
std::optional<Intersection> find_intersection(const TradeoffCurve& curve);

}  // namespace fsosn
