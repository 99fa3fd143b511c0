// Command-line front end: run scenarios, list presets, validate files, print outage curves.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsosn/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kValidationFailure = 2;

int cmd_run(const std::string& file, const std::string& out_dir, bool quiet) {
  const fsosn::Scenario s = fsosn::load_scenario(file);
  int last_pct = -1;
  auto progress = [&](int done, int total) {
    const int pct = done * 100 / total;
    if (quiet || pct == last_pct || pct % 5 != 0) return;
    last_pct = pct;
    std::fprintf(stderr, "\rslots %d/%d (%d%%)", done, total, pct);
    if (done == total) std::fputc('\n', stderr);
  };
  const fsosn::RunResult r = fsosn::run(s, progress);
  fsosn::export_results(s, r, out_dir);

  std::printf("scenario %s\n", r.digest.c_str());
  std::printf("%-14s %-14s %-16s %s\n", "range_km", "mean_T_net_ms", "mean_P_TS_avg_mW",
              "unreachable");
  for (const auto& p : r.sweep.curve.points) {
    std::printf("%-14s %-14s %-16s %d\n", fsosn::format_number(p.lisl_range_km).c_str(),
                p.mean_net_ms ? fsosn::format_number(*p.mean_net_ms).c_str() : "-",
                p.mean_power_mw ? fsosn::format_number(*p.mean_power_mw).c_str() : "-",
                p.unreachable_slots);
  }
  if (r.intersection) {
    std::printf("crossing at %s km (%s ms, %s mW)\n",
                fsosn::format_number(r.intersection->lisl_range_km).c_str(),
                fsosn::format_number(r.intersection->net_ms).c_str(),
                fsosn::format_number(r.intersection->power_mw).c_str());
  } else {
    std::printf("no crossing in the range grid\n");
  }
  std::printf("results written to %s\n", out_dir.c_str());
  return kOk;
}

int cmd_presets() {
  std::printf("constellations:\n");
  for (const auto& name : fsosn::walker_preset_names()) {
    const auto w = *fsosn::walker_preset(name);
    std::printf("  %-14s %g deg: %d/%d/%d at %g km\n", name.c_str(), w.inclination_deg,
                w.total_sats, w.planes, w.phasing_f, w.altitude_km);
  }
  std::printf("ground stations:\n");
  for (const auto& name : fsosn::city_names()) {
    const auto p = *fsosn::city(name);
    std::printf("  %-14s %.2f, %.2f, %g km\n", name.c_str(), p.latitude_deg, p.longitude_deg,
                p.altitude_km);
  }
  std::printf("weather:\n");
  for (const auto& name : fsosn::weather_preset_names()) {
    const auto w = *fsosn::weather_preset(name);
    std::printf("  %-14s N = %g cm^-3, LWC = %g g/m^3\n", name.c_str(),
                w.number_concentration_cm3, w.liquid_water_gm3);
  }
  return kOk;
}

int cmd_validate(const std::string& file) {
  const fsosn::Scenario s = fsosn::load_scenario(file);
  std::printf("ok %s (%zu ranges, %d slots)\n", fsosn::scenario_digest(s).c_str(),
              s.lisl_ranges_km.size(), s.slot_count);
  return kOk;
}

int cmd_op_curve(const std::string& weather, const std::string& direction,
                 const std::string& snr, double gamma_th, const std::string& convention) {
  const auto w = fsosn::weather_preset(weather);
  if (!w) throw fsosn::ScenarioError(fsosn::ScenarioError::Kind::validation,
                                     "unknown weather '" + weather + "'");
  const auto dir = fsosn::parse_direction(direction);
  if (!dir) throw fsosn::ScenarioError(fsosn::ScenarioError::Kind::validation,
                                       "direction must be 'up' or 'down'");
  double a = 0, b = 0, step = 0;
  char tail = 0;
  if (std::sscanf(snr.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail) != 3 || !(step > 0.0) ||
      b < a) {
    throw fsosn::ScenarioError(fsosn::ScenarioError::Kind::validation,
                               "--snr expects START:STOP:STEP with STEP > 0");
  }
  fsosn::TurbulenceParams t;
  const auto conv = fsosn::parse_rytov_convention(convention);
  if (!conv) throw fsosn::ScenarioError(fsosn::ScenarioError::Kind::validation,
                                        "--rytov must be 'verbatim' or 'standard'");
  t.convention = *conv;
  const auto grid = fsosn::snr_grid(a, b, step);
  const auto fading = fsosn::fading_for(t);
  const auto curve = fsosn::outage_curve(t, fading, *w, *dir, grid, gamma_th);
  std::printf("snr_dB,P_out\n");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::printf("%s,%s\n", fsosn::format_number(grid[i]).c_str(),
                fsosn::format_number(curve.p_out[i]).c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency/power tradeoff simulator for laser-linked LEO constellations"};
  app.require_subcommand(1);

  std::string run_file;
  std::string out_dir = "results";
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Sweep a scenario and write CSV/JSON results");
  run->add_option("scenario", run_file, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_flag("-q,--quiet", quiet, "No progress output");

  auto* presets = app.add_subcommand("presets", "Built-in presets");
  presets->add_subcommand("list", "List constellations, ground stations and weather")
      ->final_callback([] {});
  presets->require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_file, "Scenario JSON file")->required();

  std::string weather = "thin-cirrus";
  std::string direction = "up";
  std::string snr = "0:60:1";
  double gamma_th = 7.0;
  std::string convention = "verbatim";
  auto* op = app.add_subcommand("op-curve", "Outage probability against average SNR");
  op->add_option("--weather", weather, "Weather preset")->capture_default_str();
  op->add_option("--direction", direction, "up or down")->capture_default_str();
  op->add_option("--snr", snr, "START:STOP:STEP in dB")->capture_default_str();
  op->add_option("--gamma-th", gamma_th, "SNR threshold, dB")->capture_default_str();
  op->add_option("--rytov", convention, "verbatim or standard")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  try {
    if (*run) return cmd_run(run_file, out_dir, quiet);
    if (*presets) return cmd_presets();
    if (*validate) return cmd_validate(validate_file);
    if (*op) return cmd_op_curve(weather, direction, snr, gamma_th, convention);
  } catch (const fsosn::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}
