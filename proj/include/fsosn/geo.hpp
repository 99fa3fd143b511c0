#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace fsosn {

/// Physical constants shared by every module. Spherical Earth throughout.
namespace earth {
inline constexpr double kRadiusKm = 6378.0;
inline constexpr double kAtmosphereHeightKm = 80.0;
inline constexpr double kGravitationalConstant = 6.673e-11;  // N m^2 / kg^2
inline constexpr double kMassKg = 5.98e24;
inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kSpeedOfLightKmPerMs = kSpeedOfLightMps * 1e-6;
inline constexpr double kRotationRateRadPerS = 7.2921159e-5;  // sidereal
}  // namespace earth

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Cartesian position in km, Earth-centered frame (ECEF unless stated otherwise).
struct Vec3 {
  double x{};
  double y{};
  double z{};

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// Geodetic location on the spherical Earth. Degrees, km.
struct GeoPoint {
  double latitude_deg{};
  double longitude_deg{};
  double altitude_km{};

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Throws std::invalid_argument when latitude/longitude/altitude are out of bounds.
void validate(const GeoPoint& p);

Vec3 geodetic_to_ecef(const GeoPoint& p);

/// Ground-station to satellite distance for a given elevation angle (degrees).
/// Rejects elevations outside (0, 90] and satellites not above the station.
double slant_distance(double elevation_deg, double sat_altitude_km, double station_altitude_km);

/// Elevation of `sat` above the local horizon at `gs`, in degrees.
/// Empty when the satellite is below the horizon.
std::optional<double> elevation_angle(const Vec3& gs, const Vec3& sat);

/// Inverts slant_distance by bisection on the elevation angle (tolerance 1e-9 deg).
/// The distance must lie between the zenith range and the horizon range.
double elevation_from_slant(double slant_km, double sat_altitude_km, double station_altitude_km);

/// Longest line of sight between two satellites that clears the atmosphere shell.
double max_lisl_range(double sat_altitude_km);

double orbital_period(double sat_altitude_km);

/// Mean motion of a circular orbit, rad/s.
double mean_motion(double sat_altitude_km);

/// Beam path length through a layer of height `layer_height_km`.
double troposphere_path_length(double elevation_deg, double station_altitude_km,
                               double layer_height_km);

/// Closest approach of segment a-b to the Earth center, km.
double segment_min_radius(const Vec3& a, const Vec3& b);

}  // namespace fsosn
