#include "fsosn/link_budget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsosn/geo.hpp"

namespace fsosn {

namespace {

// exp(-690.78) == 1e-300
constexpr double kMaxOpticalDepth = 690.7755278982137;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

void validate(const LinkBudgetParams& p) {
  require_positive(p.lambda_nm, "lambda_nm");
  require_positive(p.eta_t, "eta_t");
  require_positive(p.eta_r, "eta_r");
  require_positive(p.divergence_rad, "divergence_rad");
  require_positive(p.rx_diameter_mm, "rx_diameter_mm");
  require_positive(p.pointing_error_tx_rad, "pointing_error_tx_rad");
  require_positive(p.pointing_error_rx_rad, "pointing_error_rx_rad");
  require_positive(p.data_rate_gbps, "data_rate_gbps");
  if (p.eta_t > 1.0 || p.eta_r > 1.0) throw std::invalid_argument("optics efficiency exceeds 1");
  if (p.divergence_rad < p.pointing_error_tx_rad) {
    throw std::invalid_argument("divergence angle must be at least the transmit pointing error");
  }
  if (!std::isfinite(p.sensitivity_dbm) || !std::isfinite(p.margin_isl_db) ||
      !std::isfinite(p.margin_updown_db)) {
    throw std::invalid_argument("sensitivity and link margins must be finite");
  }
}

void validate(const WeatherProfile& w) {
  require_positive(w.number_concentration_cm3, "weather number concentration");
  require_positive(w.liquid_water_gm3, "weather liquid water content");
  require_positive(w.phi, "weather phi");
  require_positive(w.troposphere_height_km, "troposphere height");
}

WeatherProfile thin_cirrus() { return {"thin-cirrus", 0.5, 3.128e-4, 1.6, 20.0}; }
WeatherProfile cirrus() { return {"cirrus", 0.0255, 0.06405, 1.6, 20.0}; }
WeatherProfile cumulus() { return {"cumulus", 250.0, 1.0, 1.6, 20.0}; }

std::optional<WeatherProfile> weather_preset(std::string_view name) {
  if (name == "thin-cirrus") return thin_cirrus();
  if (name == "cirrus") return cirrus();
  if (name == "cumulus") return cumulus();
  return std::nullopt;
}

std::vector<std::string> weather_preset_names() { return {"thin-cirrus", "cirrus", "cumulus"}; }

std::string_view to_string(Direction d) { return d == Direction::up ? "up" : "down"; }

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "up") return Direction::up;
  if (s == "down") return Direction::down;
  return std::nullopt;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }
double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

double transmitter_gain(double divergence_rad) {
  require_positive(divergence_rad, "divergence angle");
  return 16.0 / (divergence_rad * divergence_rad);
}

double receiver_gain(double rx_diameter_mm, double lambda_nm) {
  require_positive(rx_diameter_mm, "receiver diameter");
  require_positive(lambda_nm, "wavelength");
  const double g = std::numbers::pi * (rx_diameter_mm * 1e-3) / (lambda_nm * 1e-9);
  return g * g;
}

double pointing_loss(double gain, double pointing_error_rad) {
  return std::exp(-gain * pointing_error_rad * pointing_error_rad);
}

double free_space_path_loss(double lambda_nm, double distance_km) {
  require_positive(distance_km, "link distance");
  const double v = (lambda_nm * 1e-9) / (4.0 * std::numbers::pi * distance_km * 1e3);
  return v * v;
}

MieCoefficients mie_coefficients(double l) {
  return {-0.000545 * l * l + 0.002 * l - 0.0038, 0.00628 * l * l - 0.0232 * l + 0.00439,
          -0.028 * l * l + 0.101 * l - 0.18, -0.228 * l * l * l + 0.922 * l * l - 1.26 * l + 0.719};
}

double mie_extinction_ratio(double station_altitude_km, double lambda_um) {
  if (!(lambda_um >= 0.5 && lambda_um <= 2.0)) {
    throw std::invalid_argument("Mie fit is only valid for wavelengths in [0.5, 2.0] um");
  }
  if (!(station_altitude_km >= 0.0)) throw std::invalid_argument("station altitude must be >= 0");
  const auto [a, b, c, d] = mie_coefficients(lambda_um);
  const double h = station_altitude_km;
  return a * h * h * h + b * h * h + c * h + d;
}

double mie_attenuation(double extinction_ratio, double elevation_deg) {
  if (!(elevation_deg > 0.0 && elevation_deg <= 90.0)) {
    throw std::invalid_argument("elevation angle must be in (0, 90] degrees");
  }
  return std::exp(-extinction_ratio / std::sin(deg_to_rad(elevation_deg)));
}

double visibility_km(const WeatherProfile& w) {
  validate(w);
  return 1.002 / std::pow(w.number_concentration_cm3 * w.liquid_water_gm3, 0.6473);
}

double geometric_attenuation_coefficient(double visibility_km, double lambda_nm, double phi) {
  require_positive(visibility_km, "visibility");
  return (3.91 / visibility_km) * std::pow(lambda_nm / 550.0, -phi);
}

double geometric_attenuation(double coefficient_per_km, double path_km) {
  if (!(coefficient_per_km >= 0.0) || !(path_km >= 0.0)) {
    throw std::invalid_argument("attenuation coefficient and path length must be >= 0");
  }
  const double depth = coefficient_per_km * path_km;
  if (depth > kMaxOpticalDepth) return 0.0;
  return std::exp(-depth);
}

double atmospheric_loss(Direction dir, double elevation_deg, double station_altitude_km,
                        const WeatherProfile& w, double lambda_nm) {
  const double path = troposphere_path_length(elevation_deg, station_altitude_km,
                                              w.troposphere_height_km);
  const double coeff = geometric_attenuation_coefficient(visibility_km(w), lambda_nm, w.phi);
  const double geometric = geometric_attenuation(coeff, path);
  if (dir == Direction::up) return geometric;
  const double rho = mie_extinction_ratio(station_altitude_km, lambda_nm * 1e-3);
  return mie_attenuation(rho, elevation_deg) * geometric;
}

double received_power_watts(const LinkBudgetParams& p, LinkKind kind) {
  const double margin = kind == LinkKind::isl ? p.margin_isl_db : p.margin_updown_db;
  return dbm_to_watts(p.sensitivity_dbm + margin);
}

double terminal_factor(const LinkBudgetParams& p) {
  const double gt = transmitter_gain(p.divergence_rad);
  const double gr = receiver_gain(p.rx_diameter_mm, p.lambda_nm);
  return gt * gr * pointing_loss(gt, p.pointing_error_tx_rad) *
         pointing_loss(gr, p.pointing_error_rx_rad) * p.eta_t * p.eta_r;
}

double lisl_transmission_power(const LinkBudgetParams& p, double distance_km) {
  return received_power_watts(p, LinkKind::isl) /
         (terminal_factor(p) * free_space_path_loss(p.lambda_nm, distance_km));
}

std::optional<double> updown_transmission_power(const LinkBudgetParams& p, Direction dir,
                                                double distance_km, double elevation_deg,
                                                double station_altitude_km,
                                                const WeatherProfile& w) {
  const double atm = atmospheric_loss(dir, elevation_deg, station_altitude_km, w, p.lambda_nm);
  if (atm <= 0.0) return std::nullopt;
  const double denom = terminal_factor(p) * atm * free_space_path_loss(p.lambda_nm, distance_km);
  const double watts = received_power_watts(p, LinkKind::updown) / denom;
  if (!std::isfinite(watts)) return std::nullopt;
  return watts;
}

}  // namespace fsosn
