#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsosn/geo.hpp"

namespace fsosn {

/// Walker-delta shell, i:T/P/F notation plus altitude.
struct WalkerParams {
  double inclination_deg{};
  int total_sats{};
  int planes{};
  int phasing_f{};
  double altitude_km{};

  int sats_per_plane() const { return planes > 0 ? total_sats / planes : 0; }

  friend bool operator==(const WalkerParams&, const WalkerParams&) = default;
};

/// Throws std::invalid_argument naming the violated invariant.
void validate(const WalkerParams& p);

WalkerParams starlink_phase1_v3();
WalkerParams kuiper_shell2();

/// Known shell presets: "starlink-p1v3", "kuiper-shell2".
std::optional<WalkerParams> walker_preset(std::string_view name);
std::vector<std::string> walker_preset_names();

/// Orbital elements of one satellite at t = 0.
struct SatelliteElements {
  double raan_rad{};
  double arg_latitude_rad{};
};

/// Immutable satellite set. Satellite id = plane * sats_per_plane + slot.
class Constellation {
 public:
  explicit Constellation(const WalkerParams& params);

  const WalkerParams& params() const { return params_; }
  int size() const { return static_cast<int>(elements_.size()); }
  std::span<const SatelliteElements> elements() const { return elements_; }

  int plane_of(int sat_id) const { return sat_id / params_.sats_per_plane(); }
  int slot_of(int sat_id) const { return sat_id % params_.sats_per_plane(); }

  double mean_motion_rad_s() const { return mean_motion_; }
  double period_s() const;

 private:
  WalkerParams params_;
  std::vector<SatelliteElements> elements_;
  double mean_motion_{};
};

Constellation generate(const WalkerParams& params);

struct SnapshotPositions {
  double time_s{};
  std::vector<Vec3> positions;  // indexed by satellite id
};

/// Positions in the inertial frame (aligned with ECEF at t = 0).
SnapshotPositions propagate_inertial(const Constellation& c, double t_s);

/// Positions rotated into ECEF by the Earth rotation accumulated since t = 0.
SnapshotPositions propagate(const Constellation& c, double t_s);

/// For every satellite, the number of others that stay within `lisl_range_km`
/// at every sample over one orbital period.
std::vector<int> permanent_neighbor_count(const Constellation& c, double lisl_range_km,
                                          double stride_s = 60.0);

}  // namespace fsosn
