#pragma once

#include <optional>
#include <string_view>

namespace fsosn {

/// Which reading of the Rytov expression to use.
/// `verbatim`: the integral expression is sigma_R itself.
/// `standard`: the integral expression is sigma_R squared (weak-turbulence convention).
enum class RytovConvention { verbatim, standard };

std::string_view to_string(RytovConvention c);
std::optional<RytovConvention> parse_rytov_convention(std::string_view s);

/// Hufnagel-Valley profile inputs and path geometry. Heights in metres.
struct TurbulenceParams {
  double wind_speed_mps = 21.0;
  double ground_cn2 = 1.7e-14;  // m^(-2/3)
  double zenith_deg = 60.0;
  double station_altitude_m = 100.0;
  double sat_altitude_m = 550e3;
  double lambda_nm = 1550.0;
  RytovConvention convention = RytovConvention::verbatim;

  friend bool operator==(const TurbulenceParams&, const TurbulenceParams&) = default;
};

void validate(const TurbulenceParams& p);

/// Exponentiated-Weibull irradiance fading, normalized to unit mean.
struct EWFadingParams {
  double alpha{};
  double beta{};
  double eta{};
  double g{};
  double sigma_i{};
  double sigma_r{};
};

/// Refractive-index structure constant at height `h_m` (metres), m^(-2/3).
double cn2(double h_m, double wind_speed_mps, double ground_cn2);

double rytov_variance(const TurbulenceParams& p);

double scintillation_index(double sigma_r);

struct SeriesResult {
  double value{};
  int terms{};
  bool converged{};  // false when the term cap was hit; value then carries a tail estimate
};

/// Series for g(alpha, beta), stopped once |term| < tol or after `max_terms` terms.
SeriesResult g_series(double alpha, double beta, int max_terms = 1000, double tol = 1e-12);

/// g(alpha, beta) from the EW mean computed by quadrature.
double g_quadrature(double alpha, double beta);

/// Shape and scale parameters for a scintillation index. Throws std::domain_error when
/// the gamma argument is not positive.
EWFadingParams ew_params(double sigma_i);

/// Full chain: profile -> Rytov -> scintillation -> EW parameters.
EWFadingParams fading_for(const TurbulenceParams& p);

double ew_pdf(double irradiance, const EWFadingParams& p);
double ew_cdf(double irradiance, const EWFadingParams& p);

/// E[I] by quadrature; 1 for parameters produced by ew_params.
double ew_mean(const EWFadingParams& p);

/// Probability that SNR = avg_snr * (atm_loss * I)^2 falls below the threshold.
/// Exactly 1 when atm_loss is 0.
double outage_probability(double avg_snr_db, double threshold_db, const EWFadingParams& p,
                          double atm_loss);

}  // namespace fsosn
