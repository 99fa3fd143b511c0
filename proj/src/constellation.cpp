#include "fsosn/constellation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fsosn {

void validate(const WalkerParams& p) {
  if (p.planes <= 0) throw std::invalid_argument("walker: planes must be positive");
  if (p.total_sats <= 0) throw std::invalid_argument("walker: total_sats must be positive");
  if (p.total_sats % p.planes != 0) {
    throw std::invalid_argument("walker: total_sats (" + std::to_string(p.total_sats) +
                                ") is not divisible by planes (" + std::to_string(p.planes) + ")");
  }
  if (p.phasing_f < 0 || p.phasing_f >= p.planes) {
    throw std::invalid_argument("walker: phasing_f must be in [0, planes - 1]");
  }
  if (!(p.inclination_deg >= 0.0 && p.inclination_deg <= 180.0)) {
    throw std::invalid_argument("walker: inclination must be in [0, 180] degrees");
  }
  if (!(p.altitude_km > earth::kAtmosphereHeightKm)) {
    throw std::invalid_argument("walker: altitude must be above the atmosphere shell");
  }
}

WalkerParams starlink_phase1_v3() { return {53.0, 1584, 22, 17, 550.0}; }
WalkerParams kuiper_shell2() { return {42.0, 1296, 36, 11, 610.0}; }

std::optional<WalkerParams> walker_preset(std::string_view name) {
  if (name == "starlink-p1v3") return starlink_phase1_v3();
  if (name == "kuiper-shell2") return kuiper_shell2();
  return std::nullopt;
}

std::vector<std::string> walker_preset_names() { return {"starlink-p1v3", "kuiper-shell2"}; }

Constellation::Constellation(const WalkerParams& params) : params_(params) {
  validate(params_);
  const int per_plane = params_.sats_per_plane();
  const double two_pi = 2.0 * std::numbers::pi;
  elements_.reserve(static_cast<std::size_t>(params_.total_sats));
  for (int p = 0; p < params_.planes; ++p) {
    const double raan = two_pi * p / params_.planes;
    const double plane_phase = two_pi * params_.phasing_f * p / params_.total_sats;
    for (int k = 0; k < per_plane; ++k) {
      elements_.push_back({raan, two_pi * k / per_plane + plane_phase});
    }
  }
  mean_motion_ = mean_motion(params_.altitude_km);
}

double Constellation::period_s() const { return 2.0 * std::numbers::pi / mean_motion_; }

Constellation generate(const WalkerParams& params) { return Constellation(params); }

SnapshotPositions propagate_inertial(const Constellation& c, double t_s) {
  if (!(t_s >= 0.0)) throw std::invalid_argument("propagate: time must be >= 0");
  const double radius = earth::kRadiusKm + c.params().altitude_km;
  const double inc = deg_to_rad(c.params().inclination_deg);
  const double ci = std::cos(inc);
  const double si = std::sin(inc);
  const double advance = c.mean_motion_rad_s() * t_s;

  SnapshotPositions out;
  out.time_s = t_s;
  out.positions.reserve(static_cast<std::size_t>(c.size()));
  for (const auto& e : c.elements()) {
    const double u = e.arg_latitude_rad + advance;
    const double cu = std::cos(u);
    const double su = std::sin(u);
    const double co = std::cos(e.raan_rad);
    const double so = std::sin(e.raan_rad);
    out.positions.push_back({radius * (co * cu - so * su * ci), radius * (so * cu + co * su * ci),
                             radius * su * si});
  }
  return out;
}

SnapshotPositions propagate(const Constellation& c, double t_s) {
  SnapshotPositions snap = propagate_inertial(c, t_s);
  const double theta = earth::kRotationRateRadPerS * t_s;
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  for (auto& p : snap.positions) {
    p = {ct * p.x + st * p.y, -st * p.x + ct * p.y, p.z};
  }
  return snap;
}

std::vector<int> permanent_neighbor_count(const Constellation& c, double lisl_range_km,
                                          double stride_s) {
  if (!(stride_s > 0.0)) throw std::invalid_argument("stride must be positive");
  const auto n = static_cast<std::size_t>(c.size());
  const double r2 = lisl_range_km * lisl_range_km;
  // Upper-triangular "always within range" mask.
  std::vector<char> permanent(n * n, 1);
  const double period = c.period_s();
  for (double t = 0.0; t < period; t += stride_s) {
    // Pair distances are invariant under the Earth rotation, so the inertial frame suffices.
    const auto snap = propagate_inertial(c, t);
    const auto& pos = snap.positions;
    for (std::size_t i = 0; i < n; ++i) {
      char* row = permanent.data() + i * n;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!row[j]) continue;
        const Vec3 d = pos[i] - pos[j];
        if (dot(d, d) > r2) row[j] = 0;
      }
    }
  }
  std::vector<int> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (permanent[i * n + j]) {
        ++counts[i];
        ++counts[j];
      }
    }
  }
  return counts;
}

}  // namespace fsosn
