#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsosn/geo.hpp"
#include "fsosn/link_budget.hpp"
#include "reference_tables.hpp"

using namespace fsosn;
using namespace fsosn::earth;

namespace {

constexpr double kPi = std::numbers::pi;

// Transmit power for a link of length d (km) written out from first principles.
double power_oracle(double d_km, double received_dbm, double atm) {
  const double lambda = 1550e-9;
  const double gt = 16.0 / (15e-6 * 15e-6);
  const double gr = std::pow(kPi * 0.080 / lambda, 2);
  const double lt = std::exp(-gt * 1e-12);
  const double lr = std::exp(-gr * 1e-12);
  const double lp = std::pow(lambda / (4.0 * kPi * d_km * 1e3), 2);
  const double pr = std::pow(10.0, received_dbm / 10.0) * 1e-3;
  return pr / (0.8 * 0.8 * gt * gr * lt * lr * lp * atm);
}

}  // namespace

TEST_CASE("defaults") {
  const LinkBudgetParams p;
  CHECK(p.lambda_nm == 1550.0);
  CHECK(p.divergence_rad == 15e-6);
  CHECK(p.rx_diameter_mm == 80.0);
  CHECK(p.sensitivity_dbm == -35.5);
  CHECK_NOTHROW(validate(p));

  LinkBudgetParams bad = p;
  bad.eta_t = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = p;
  bad.divergence_rad = 0.5e-6;  // narrower than the pointing jitter
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  CHECK_THROWS_AS(validate(WeatherProfile{"x", 0.0, 1.0}), std::invalid_argument);
  CHECK(weather_preset("cirrus")->number_concentration_cm3 == 0.0255);
  CHECK(weather_preset("cumulus")->liquid_water_gm3 == 1.0);
  CHECK_FALSE(weather_preset("fog").has_value());
}

TEST_CASE("gains and geometric losses") {
  CHECK(transmitter_gain(15e-6) == doctest::Approx(7.111e10).epsilon(1e-3));
  CHECK(transmitter_gain(4.0) == doctest::Approx(1.0));
  CHECK(transmitter_gain(7.5e-6) == doctest::Approx(4.0 * transmitter_gain(15e-6)));

  CHECK(receiver_gain(80.0, 1550.0) == doctest::Approx(2.628e10).epsilon(1e-3));
  CHECK(receiver_gain(1550e-6 / kPi, 1550.0) == doctest::Approx(1.0));
  CHECK(receiver_gain(160.0, 1550.0) == doctest::Approx(4.0 * receiver_gain(80.0, 1550.0)));

  CHECK(pointing_loss(7.111e10, 0.0) == 1.0);
  CHECK(std::abs(pointing_loss(7.111e10, 1e-6) - 0.9314) < 1e-4);
  CHECK(std::abs(pointing_loss(2.628e10, 1e-6) - 0.9741) < 1e-4);

  CHECK(free_space_path_loss(1550.0, 2410.3) == doctest::Approx(2.619e-27).epsilon(1e-3));
  CHECK(free_space_path_loss(1550.0, 968.3) == doctest::Approx(1.623e-26).epsilon(1e-3));
  CHECK(free_space_path_loss(1550.0, 2000.0) ==
        doctest::Approx(free_space_path_loss(1550.0, 1000.0) / 4.0));
}

TEST_CASE("mie scattering") {
  CHECK(std::abs(mie_extinction_ratio(0.1, 1.55) - 0.1228) < 1e-3);
  CHECK(std::abs(mie_coefficients(1.55).d - 0.1321) < 1e-3);
  CHECK(mie_extinction_ratio(0.0, 1.55) == mie_coefficients(1.55).d);
  CHECK_THROWS_AS(mie_extinction_ratio(0.1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(mie_extinction_ratio(0.1, 2.1), std::invalid_argument);

  CHECK(std::abs(mie_attenuation(0.1228, 90.0) - 0.8844) < 1e-3);
  CHECK(mie_attenuation(0.0, 40.0) == 1.0);
  CHECK(std::abs(mie_attenuation(0.1228, 27.3) - 0.7654) < 1e-3);
  CHECK_THROWS_AS(mie_attenuation(0.1228, 0.0), std::invalid_argument);
}

TEST_CASE("geometrical scattering") {
  CHECK(visibility_km(thin_cirrus()) == doctest::Approx(290.9).epsilon(0.01));
  CHECK(visibility_km(cumulus()) == doctest::Approx(0.0281).epsilon(0.01));
  const double unit = std::pow(1.002, 1.0 / 0.6473);
  CHECK(visibility_km(WeatherProfile{"u", unit, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(geometric_attenuation_coefficient(290.9, 1550.0, 1.6) ==
        doctest::Approx(2.561e-3).epsilon(0.01));
  CHECK(geometric_attenuation_coefficient(7.0, 550.0, 1.6) == doctest::Approx(3.91 / 7.0));
  CHECK(geometric_attenuation_coefficient(0.0281, 1550.0, 1.6) ==
        doctest::Approx(26.5).epsilon(0.02));

  CHECK(std::abs(geometric_attenuation(2.561e-3, 38.51) - 0.9061) < 1e-3);
  CHECK(geometric_attenuation(5.0, 0.0) == 1.0);
  CHECK(geometric_attenuation(26.5, 38.5) == 0.0);
}

TEST_CASE("atmospheric loss") {
  const auto w = thin_cirrus();
  CHECK(std::abs(atmospheric_loss(Direction::up, 31.1, 0.1, w, 1550.0) - 0.9061) < 1e-3);
  CHECK(std::abs(atmospheric_loss(Direction::down, 27.3, 0.1, w, 1550.0) - 0.6850) < 2e-3);
  const double theta_a =
      geometric_attenuation_coefficient(visibility_km(w), 1550.0, w.phi);
  CHECK(atmospheric_loss(Direction::up, 90.0, 0.1, w, 1550.0) ==
        doctest::Approx(std::exp(-theta_a * 19.9)));
  for (double el = 10.0; el <= 90.0; el += 10.0) {
    CHECK(atmospheric_loss(Direction::down, el, 0.1, w, 1550.0) <=
          atmospheric_loss(Direction::up, el, 0.1, w, 1550.0));
  }
  CHECK(atmospheric_loss(Direction::up, 30.0, 0.1, cumulus(), 1550.0) == 0.0);
}

TEST_CASE("received power and unit conversions") {
  const LinkBudgetParams p;
  CHECK(received_power_watts(p, LinkKind::isl) == doctest::Approx(5.623e-7).epsilon(1e-3));
  CHECK(received_power_watts(p, LinkKind::updown) == doctest::Approx(1.122e-6).epsilon(1e-3));
  LinkBudgetParams no_margin = p;
  no_margin.margin_isl_db = 0.0;
  CHECK(received_power_watts(no_margin, LinkKind::isl) == doctest::Approx(dbm_to_watts(-35.5)));

  for (double dbm : {-60.0, -35.5, 0.0, 13.7, 40.0}) {
    CHECK(watts_to_dbm(dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
  }
  CHECK(db_to_ratio(3.0) == doctest::Approx(1.99526).epsilon(1e-5));
}

TEST_CASE("laser inter-satellite link power") {
  const LinkBudgetParams p;
  const double c = 299792.458 / 1000.0;  // km per ms
  CHECK(lisl_transmission_power(p, 8.04 * c) * 1e3 == doctest::Approx(197.9).epsilon(1e-3));
  CHECK(lisl_transmission_power(p, 8.04 * c) * 1e3 == doctest::Approx(198.26).epsilon(0.01));
  CHECK(lisl_transmission_power(p, 3.94 * c) * 1e3 == doctest::Approx(47.67).epsilon(0.01));
  for (double d : {100.0, 1575.0, 3000.0, 5016.0}) {
    CHECK(lisl_transmission_power(p, d) == doctest::Approx(power_oracle(d, -32.5, 1.0)).epsilon(1e-12));
    CHECK(lisl_transmission_power(p, 2 * d) == doctest::Approx(4 * lisl_transmission_power(p, d)));
  }
  CHECK_THROWS_AS(lisl_transmission_power(p, 0.0), std::invalid_argument);
}

TEST_CASE("ground link power") {
  const LinkBudgetParams p;
  const auto w = thin_cirrus();
  const double c = 299792.458 / 1000.0;

  const double d_up = 3.23 * c;
  const double el_up = elevation_from_slant(d_up, 550.0, 0.1);
  const auto up = updown_transmission_power(p, Direction::up, d_up, el_up, 0.1, w);
  REQUIRE(up.has_value());
  CHECK(*up * 1e3 == doctest::Approx(70.3).epsilon(2e-3));
  CHECK(*up * 1e3 == doctest::Approx(70.42).epsilon(0.01));

  const double d_down = 3.53 * c;
  const double el_down = elevation_from_slant(d_down, 550.0, 0.1);
  const auto down = updown_transmission_power(p, Direction::down, d_down, el_down, 0.1, w);
  REQUIRE(down.has_value());
  CHECK(*down * 1e3 == doctest::Approx(111.1).epsilon(2e-3));
  CHECK(*down * 1e3 == doctest::Approx(111.49).epsilon(0.01));

  // With no attenuation the ground-link equation reduces to the inter-satellite one.
  const double atm = atmospheric_loss(Direction::up, el_up, 0.1, w, 1550.0);
  CHECK(*up == doctest::Approx(power_oracle(d_up, -29.5, atm)).epsilon(1e-12));

  for (double el : {25.0, 40.0, 70.0}) {
    const double d = slant_distance(el, 550.0, 0.1);
    CHECK(*updown_transmission_power(p, Direction::down, d, el, 0.1, w) >=
          *updown_transmission_power(p, Direction::up, d, el, 0.1, w));
  }
  CHECK_FALSE(updown_transmission_power(p, Direction::up, 1000.0, 30.0, 0.1, cumulus()).has_value());
}

TEST_CASE("published per-link powers within one percent") {
  const LinkBudgetParams p;
  const auto w = thin_cirrus();
  for (int s = 0; s < ref::kSlots; ++s) {
    for (int k = 0; k < 9; ++k) {
      const double d = ref::kDelayMs[s][k] * kSpeedOfLightKmPerMs;
      double watts = 0.0;
      if (k == 0 || k == 8) {
        const double el = elevation_from_slant(d, ref::kSatelliteAltitudeKm, ref::kStationAltitudeKm);
        watts = *updown_transmission_power(p, k == 0 ? Direction::up : Direction::down, d, el,
                                           ref::kStationAltitudeKm, w);
      } else {
        watts = lisl_transmission_power(p, d);
      }
      CAPTURE(s);
      CAPTURE(k);
      CHECK(watts * 1e3 == doctest::Approx(ref::kPowerMw[s][k]).epsilon(0.01));
    }
  }
}
