#include "fsosn/geo.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fsosn {

namespace {

void require_elevation(double elevation_deg) {
  if (!(elevation_deg > 0.0 && elevation_deg <= 90.0)) {
    throw std::invalid_argument("elevation angle must be in (0, 90] degrees, got " +
                                std::to_string(elevation_deg));
  }
}

}  // namespace

void validate(const GeoPoint& p) {
  if (!(p.latitude_deg >= -90.0 && p.latitude_deg <= 90.0)) {
    throw std::invalid_argument("latitude out of [-90, 90]: " + std::to_string(p.latitude_deg));
  }
  if (!(p.longitude_deg >= -180.0 && p.longitude_deg <= 180.0)) {
    throw std::invalid_argument("longitude out of [-180, 180]: " + std::to_string(p.longitude_deg));
  }
  if (!(p.altitude_km >= 0.0) || !std::isfinite(p.altitude_km)) {
    throw std::invalid_argument("altitude must be >= 0 km: " + std::to_string(p.altitude_km));
  }
}

Vec3 geodetic_to_ecef(const GeoPoint& p) {
  const double radius = earth::kRadiusKm + p.altitude_km;
  const double lat = deg_to_rad(p.latitude_deg);
  const double lon = deg_to_rad(p.longitude_deg);
  return {radius * std::cos(lat) * std::cos(lon), radius * std::cos(lat) * std::sin(lon),
          radius * std::sin(lat)};
}

double slant_distance(double elevation_deg, double sat_altitude_km, double station_altitude_km) {
  require_elevation(elevation_deg);
  if (!(sat_altitude_km > station_altitude_km)) {
    throw std::invalid_argument("satellite altitude must exceed station altitude");
  }
  const double big_r = earth::kRadiusKm + station_altitude_km;
  const double big_h = sat_altitude_km - station_altitude_km;
  const double el = deg_to_rad(elevation_deg);
  const double ratio = (big_r + big_h) / big_r;
  const double c = std::cos(el);
  return big_r * (std::sqrt(ratio * ratio - c * c) - std::sin(el));
}

std::optional<double> elevation_angle(const Vec3& gs, const Vec3& sat) {
  const double rg = norm(gs);
  const Vec3 v = sat - gs;
  const double d = norm(v);
  if (d <= 0.0 || rg <= 0.0) return std::nullopt;
  // atan2 of the vertical and horizontal components stays accurate near the zenith.
  const double up = dot(v, gs) / rg;
  if (up < 0.0) return std::nullopt;
  const Vec3 horizontal = v - (up / rg) * gs;
  return rad_to_deg(std::atan2(up, norm(horizontal)));
}

double elevation_from_slant(double slant_km, double sat_altitude_km, double station_altitude_km) {
  if (!(sat_altitude_km > station_altitude_km)) {
    throw std::invalid_argument("satellite altitude must exceed station altitude");
  }
  const double zenith = sat_altitude_km - station_altitude_km;
  const double big_r = earth::kRadiusKm + station_altitude_km;
  const double orbit_r = earth::kRadiusKm + sat_altitude_km;
  const double horizon = std::sqrt(orbit_r * orbit_r - big_r * big_r);
  // Allow for rounding in the caller's distance at the zenith end.
  if (!(slant_km >= zenith * (1.0 - 1e-12) && slant_km < horizon)) {
    throw std::invalid_argument("slant distance " + std::to_string(slant_km) +
                                " km is outside the visible range");
  }
  // slant_distance is strictly decreasing in elevation.
  double lo = 0.0;
  double hi = 90.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (slant_distance(mid, sat_altitude_km, station_altitude_km) > slant_km) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double max_lisl_range(double sat_altitude_km) {
  if (sat_altitude_km < earth::kAtmosphereHeightKm) {
    throw std::invalid_argument("satellite altitude must be above the atmosphere");
  }
  const double rs = earth::kRadiusKm + sat_altitude_km;
  const double ra = earth::kRadiusKm + earth::kAtmosphereHeightKm;
  return 2.0 * std::sqrt(rs * rs - ra * ra);
}

double orbital_period(double sat_altitude_km) {
  return 2.0 * std::numbers::pi / mean_motion(sat_altitude_km);
}

double mean_motion(double sat_altitude_km) {
  if (!(sat_altitude_km >= 0.0)) {
    throw std::invalid_argument("satellite altitude must be >= 0 km");
  }
  const double radius_m = (earth::kRadiusKm + sat_altitude_km) * 1e3;
  return std::sqrt(earth::kGravitationalConstant * earth::kMassKg /
                   (radius_m * radius_m * radius_m));
}

double troposphere_path_length(double elevation_deg, double station_altitude_km,
                               double layer_height_km) {
  require_elevation(elevation_deg);
  if (!(layer_height_km > station_altitude_km)) {
    throw std::invalid_argument("layer height must exceed station altitude");
  }
  return (layer_height_km - station_altitude_km) / std::sin(deg_to_rad(elevation_deg));
}

double segment_min_radius(const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(a);
  const double t = std::clamp(-dot(a, ab) / len2, 0.0, 1.0);
  return norm(a + t * ab);
}

}  // namespace fsosn
