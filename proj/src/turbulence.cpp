#include "fsosn/turbulence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fsosn/geo.hpp"
#include "fsosn/quadrature.hpp"

namespace fsosn {

namespace {

// e^-60 ~ 1e-26: the EW tail beyond this in u = (I/eta)^beta is below any tolerance used here.
constexpr double kUpperU = 60.0;

/// Integral over u in [0, inf) of u^(1/beta) * alpha * e^-u * (1 - e^-u)^(alpha - 1),
/// i.e. E[I] for eta = 1. The [0, 1] piece uses u = s^q so the integrand vanishes at 0.
double unit_scale_mean(double alpha, double beta) {
  const double q = std::max(1.0, 2.0 / (alpha + 1.0 / beta));
  auto density_u = [alpha, beta](double u) {
    return std::pow(u, 1.0 / beta) * alpha * std::exp(-u) * std::pow(-std::expm1(-u), alpha - 1.0);
  };
  auto near = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double u = std::pow(s, q);
    return q * std::pow(s, q - 1.0) * density_u(u);
  };
  const auto head = adaptive_simpson(near, 0.0, 1.0, 1e-13);
  const std::array<double, 4> cuts{1.0, 5.0, 15.0, kUpperU};
  const auto tail = adaptive_simpson(density_u, cuts, 1e-13);
  if (!head.converged || !tail.converged) {
    throw std::runtime_error("EW mean quadrature did not converge");
  }
  return head.value + tail.value;
}

}  // namespace

std::string_view to_string(RytovConvention c) {
  return c == RytovConvention::verbatim ? "verbatim" : "standard";
}

std::optional<RytovConvention> parse_rytov_convention(std::string_view s) {
  if (s == "verbatim") return RytovConvention::verbatim;
  if (s == "standard") return RytovConvention::standard;
  return std::nullopt;
}

void validate(const TurbulenceParams& p) {
  if (!(p.zenith_deg >= 0.0 && p.zenith_deg <= 85.0)) {
    throw std::invalid_argument("zenith angle must be in [0, 85] degrees");
  }
  if (!(p.sat_altitude_m > p.station_altitude_m)) {
    throw std::invalid_argument("satellite altitude must exceed station altitude");
  }
  if (!(p.station_altitude_m >= 0.0)) throw std::invalid_argument("station altitude must be >= 0");
  if (!(p.lambda_nm > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(p.wind_speed_mps >= 0.0) || !(p.ground_cn2 >= 0.0)) {
    throw std::invalid_argument("wind speed and ground Cn2 must be >= 0");
  }
}

double cn2(double h_m, double wind_speed_mps, double ground_cn2) {
  if (!(h_m >= 0.0)) throw std::invalid_argument("height must be >= 0");
  const double h10 = std::pow(h_m, 10.0);
  return 8.148e-56 * wind_speed_mps * wind_speed_mps * h10 * std::exp(-h_m / 1000.0) +
         2.7e-16 * std::exp(-h_m / 1500.0) + ground_cn2 * std::exp(-h_m / 100.0);
}

double rytov_variance(const TurbulenceParams& p) {
  validate(p);
  const double h0 = p.station_altitude_m;
  const double h1 = p.sat_altitude_m;

  // Normalize so the quadrature tolerance is relative to the integral's natural size.
  const double scale = std::max(cn2(h0, p.wind_speed_mps, p.ground_cn2), 1e-30) *
                       std::pow(100.0, 11.0 / 6.0);
  auto integrand = [&](double h) {
    return cn2(h, p.wind_speed_mps, p.ground_cn2) * std::pow(h - h0, 5.0 / 6.0) / scale;
  };

  std::vector<double> cuts{h0};
  for (double offset : {200.0, 1000.0, 3000.0, 10000.0, 20000.0, 40000.0, 100000.0}) {
    if (h0 + offset < h1) cuts.push_back(h0 + offset);
  }
  cuts.push_back(h1);
  const auto integral = adaptive_simpson(integrand, cuts, 1e-12);
  if (!integral.converged) throw std::runtime_error("Rytov integral did not converge");

  const double k = 2.0 * std::numbers::pi / (p.lambda_nm * 1e-9);
  const double sec = 1.0 / std::cos(deg_to_rad(p.zenith_deg));
  const double value =
      2.25 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * integral.value * scale;
  return p.convention == RytovConvention::verbatim ? value : std::sqrt(value);
}

double scintillation_index(double sigma_r) {
  if (!(sigma_r >= 0.0)) throw std::invalid_argument("Rytov variance must be >= 0");
  const double s24 = std::pow(sigma_r, 2.4);
  return std::exp(0.49 * sigma_r * sigma_r / std::pow(1.0 + 1.11 * s24, 7.0 / 6.0) +
                  0.51 * sigma_r / std::pow(1.0 + 0.69 * s24, 5.0 / 6.0)) -
         1.0;
}

SeriesResult g_series(double alpha, double beta, int max_terms, double tol) {
  const double exponent = 1.0 + 1.0 / beta;
  // coef_i = (-1)^i Gamma(alpha) / (i! Gamma(alpha - i)), built by recurrence to avoid gamma poles.
  double coef = 1.0;
  double sum = 0.0;
  double term = 0.0;
  double previous = 0.0;
  for (int i = 0; i < max_terms; ++i) {
    if (i > 0) coef *= -(alpha - i) / i;
    previous = term;
    term = coef / std::pow(i + 1.0, exponent);
    sum += term;
    if (!std::isfinite(sum)) return {sum, i + 1, false};
    if (std::abs(term) < tol) return {sum, i + 1, true};
  }
  // Terms decay like a power law once i > alpha; estimate the remainder from the last two.
  SeriesResult r{sum, max_terms, false};
  if (previous != 0.0 && term / previous > 0.0) {
    const double n = max_terms;
    const double p = -std::log(term / previous) / std::log(n / (n - 1.0));
    if (p > 1.0) r.value += term * std::pow(n, p) * std::pow(n + 0.5, 1.0 - p) / (p - 1.0);
  }
  return r;
}

double g_quadrature(double alpha, double beta) {
  return unit_scale_mean(alpha, beta) / (alpha * std::tgamma(1.0 + 1.0 / beta));
}

EWFadingParams ew_params(double sigma_i) {
  if (!(sigma_i > 0.0) || !std::isfinite(sigma_i)) {
    throw std::domain_error("scintillation index must be positive");
  }
  const double gamma_arg = 2.487 * std::cbrt(sigma_i) - 0.104;
  if (!(gamma_arg > 0.0)) {
    throw std::domain_error("scintillation index too small: gamma argument is not positive");
  }
  EWFadingParams p;
  p.sigma_i = sigma_i;
  p.alpha = 7.220 * std::pow(sigma_i, 2.0 / 3.0) / std::tgamma(gamma_arg);
  p.beta = 1.012 * std::pow(p.alpha * sigma_i * sigma_i, -0.52) + 0.142;

  const auto series = g_series(p.alpha, p.beta);
  if (series.converged && series.value > 0.0) {
    p.g = series.value;
  } else {
    p.g = g_quadrature(p.alpha, p.beta);
  }
  p.eta = 1.0 / (p.alpha * std::tgamma(1.0 + 1.0 / p.beta) * p.g);
  if (!(p.eta > 0.0) || !std::isfinite(p.eta)) {
    throw std::runtime_error("EW normalization failed for both series and quadrature");
  }
  return p;
}

EWFadingParams fading_for(const TurbulenceParams& tp) {
  const double sigma_r = rytov_variance(tp);
  EWFadingParams p = ew_params(scintillation_index(sigma_r));
  p.sigma_r = sigma_r;
  return p;
}

double ew_pdf(double irradiance, const EWFadingParams& p) {
  if (irradiance < 0.0) return 0.0;
  if (irradiance == 0.0) {
    const double ab = p.alpha * p.beta;
    if (ab > 1.0) return 0.0;
    if (ab < 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / p.eta;
  }
  const double x = irradiance / p.eta;
  const double xb = std::pow(x, p.beta);
  return (p.alpha * p.beta / p.eta) * std::pow(x, p.beta - 1.0) * std::exp(-xb) *
         std::pow(-std::expm1(-xb), p.alpha - 1.0);
}

double ew_cdf(double irradiance, const EWFadingParams& p) {
  if (irradiance <= 0.0) return 0.0;
  const double xb = std::pow(irradiance / p.eta, p.beta);
  return std::pow(-std::expm1(-xb), p.alpha);
}

double ew_mean(const EWFadingParams& p) { return p.eta * unit_scale_mean(p.alpha, p.beta); }

double outage_probability(double avg_snr_db, double threshold_db, const EWFadingParams& p,
                          double atm_loss) {
  if (!(atm_loss >= 0.0 && atm_loss <= 1.0)) {
    throw std::invalid_argument("atmospheric loss must be in [0, 1]");
  }
  if (atm_loss == 0.0) return 1.0;
  const double avg = std::pow(10.0, avg_snr_db / 10.0);
  const double threshold = std::pow(10.0, threshold_db / 10.0);
  const double scale = p.eta * atm_loss;
  const double x = threshold / (avg * scale * scale);
  return std::pow(-std::expm1(-std::pow(x, p.beta / 2.0)), p.alpha);
}

}  // namespace fsosn
