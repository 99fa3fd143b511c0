#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsosn {

/// Optical terminal constants. Wavelength in nm, angles in rad, aperture in mm.
struct LinkBudgetParams {
  double lambda_nm = 1550.0;
  double eta_t = 0.8;
  double eta_r = 0.8;
  double divergence_rad = 15e-6;  // full transmit divergence angle
  double rx_diameter_mm = 80.0;
  double pointing_error_tx_rad = 1e-6;
  double pointing_error_rx_rad = 1e-6;
  double sensitivity_dbm = -35.5;
  double margin_isl_db = 3.0;
  double margin_updown_db = 6.0;
  double data_rate_gbps = 10.0;

  friend bool operator==(const LinkBudgetParams&, const LinkBudgetParams&) = default;
};

void validate(const LinkBudgetParams& p);

/// Cloud scenario for geometrical scattering.
/// `number_concentration_cm3` is N, `liquid_water_gm3` is L_W; only their product enters.
struct WeatherProfile {
  std::string name;
  double number_concentration_cm3{};
  double liquid_water_gm3{};
  double phi = 1.6;
  double troposphere_height_km = 20.0;

  friend bool operator==(const WeatherProfile&, const WeatherProfile&) = default;
};

void validate(const WeatherProfile& w);

WeatherProfile thin_cirrus();
WeatherProfile cirrus();
WeatherProfile cumulus();
std::optional<WeatherProfile> weather_preset(std::string_view name);
std::vector<std::string> weather_preset_names();

enum class LinkKind { isl, updown };
enum class Direction { up, down };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_ratio(double db);

double transmitter_gain(double divergence_rad);
double receiver_gain(double rx_diameter_mm, double lambda_nm);
double pointing_loss(double gain, double pointing_error_rad);
double free_space_path_loss(double lambda_nm, double distance_km);

/// Empirical Mie extinction ratio; wavelength in micrometres, valid band [0.5, 2.0].
double mie_extinction_ratio(double station_altitude_km, double lambda_um);

struct MieCoefficients {
  double a, b, c, d;
};
MieCoefficients mie_coefficients(double lambda_um);

double mie_attenuation(double extinction_ratio, double elevation_deg);
double visibility_km(const WeatherProfile& w);
double geometric_attenuation_coefficient(double visibility_km, double lambda_nm, double phi);

/// Beer-Lambert attenuation. Returns exactly 0 once the factor drops below 1e-300.
double geometric_attenuation(double coefficient_per_km, double path_km);

/// Uplink: geometrical scattering only. Downlink: Mie times geometrical.
double atmospheric_loss(Direction dir, double elevation_deg, double station_altitude_km,
                        const WeatherProfile& w, double lambda_nm);

double received_power_watts(const LinkBudgetParams& p, LinkKind kind);

/// Product G_T G_R L_T L_R eta_T eta_R shared by every link.
double terminal_factor(const LinkBudgetParams& p);

double lisl_transmission_power(const LinkBudgetParams& p, double distance_km);

/// Empty when atmospheric attenuation has clamped to zero (infeasible link).
std::optional<double> updown_transmission_power(const LinkBudgetParams& p, Direction dir,
                                                double distance_km, double elevation_deg,
                                                double station_altitude_km,
                                                const WeatherProfile& w);

}  // namespace fsosn
