#include "fsosn/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace fsosn {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& msg) {
  throw ScenarioError(ScenarioError::Kind::parse, msg);
}

[[noreturn]] void validation_error(const std::string& msg) {
  throw ScenarioError(ScenarioError::Kind::validation, msg);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Reads the keys of one JSON object and rejects any it was not asked about.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : obj_(j), path_(std::move(path)) {
    if (!obj_.is_object()) parse_error(path_ + ": expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) parse_error(path_ + ": missing required key '" + key + "'");
    return *v;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) out = as_number(*v, key);
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) out = as_integer(*v, key);
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) out = as_string(*v, key);
  }

  double as_number(const json& v, const std::string& key) const {
    if (!v.is_number()) parse_error(field(key) + ": expected a number");
    return v.get<double>();
  }

  int as_integer(const json& v, const std::string& key) const {
    if (!v.is_number_integer()) parse_error(field(key) + ": expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      parse_error(field(key) + ": integer out of range");
    }
    return static_cast<int>(x);
  }

  std::string as_string(const json& v, const std::string& key) const {
    if (!v.is_string()) parse_error(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::string field(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) parse_error(path_ + ": unknown key '" + key + "'");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

WalkerParams read_constellation(const json& v, std::string& name) {
  if (v.is_string()) {
    name = lower(v.get<std::string>());
    const auto preset = walker_preset(name);
    if (!preset) parse_error("$.constellation: unknown preset '" + v.get<std::string>() + "'");
    return *preset;
  }
  ObjectReader r(v, "$.constellation");
  WalkerParams w;
  name.clear();
  r.string("name", name);
  w.inclination_deg = r.as_number(r.require("inclination_deg"), "inclination_deg");
  w.total_sats = r.as_integer(r.require("total_sats"), "total_sats");
  w.planes = r.as_integer(r.require("planes"), "planes");
  w.phasing_f = r.as_integer(r.require("phasing_f"), "phasing_f");
  w.altitude_km = r.as_number(r.require("altitude_km"), "altitude_km");
  r.finish();
  return w;
}

NamedPoint read_point(const json& v, const std::string& path) {
  NamedPoint out;
  if (v.is_string()) {
    out.name = lower(v.get<std::string>());
    const auto p = city(out.name);
    if (!p) parse_error(path + ": unknown city '" + v.get<std::string>() + "'");
    out.point = *p;
    return out;
  }
  ObjectReader r(v, path);
  r.string("name", out.name);
  out.point.latitude_deg = r.as_number(r.require("latitude_deg"), "latitude_deg");
  out.point.longitude_deg = r.as_number(r.require("longitude_deg"), "longitude_deg");
  out.point.altitude_km = 0.1;
  r.number("altitude_km", out.point.altitude_km);
  r.finish();
  return out;
}

WeatherProfile read_weather(const json& v) {
  if (v.is_string()) {
    const auto w = weather_preset(lower(v.get<std::string>()));
    if (!w) parse_error("$.weather: unknown preset '" + v.get<std::string>() + "'");
    return *w;
  }
  ObjectReader r(v, "$.weather");
  WeatherProfile w;
  w.name = "custom";
  r.string("name", w.name);
  w.number_concentration_cm3 =
      r.as_number(r.require("number_concentration_cm3"), "number_concentration_cm3");
  w.liquid_water_gm3 = r.as_number(r.require("liquid_water_gm3"), "liquid_water_gm3");
  r.number("phi", w.phi);
  r.number("troposphere_height_km", w.troposphere_height_km);
  r.finish();
  return w;
}

LinkBudgetParams read_link_budget(const json& v) {
  ObjectReader r(v, "$.link_budget");
  LinkBudgetParams p;
  r.number("lambda_nm", p.lambda_nm);
  r.number("eta_t", p.eta_t);
  r.number("eta_r", p.eta_r);
  r.number("divergence_rad", p.divergence_rad);
  r.number("rx_diameter_mm", p.rx_diameter_mm);
  r.number("pointing_error_tx_rad", p.pointing_error_tx_rad);
  r.number("pointing_error_rx_rad", p.pointing_error_rx_rad);
  r.number("sensitivity_dbm", p.sensitivity_dbm);
  r.number("margin_isl_db", p.margin_isl_db);
  r.number("margin_updown_db", p.margin_updown_db);
  r.number("data_rate_gbps", p.data_rate_gbps);
  r.finish();
  return p;
}

void read_turbulence(const json& v, TurbulenceParams& t) {
  ObjectReader r(v, "$.turbulence");
  r.number("wind_speed_mps", t.wind_speed_mps);
  r.number("ground_cn2", t.ground_cn2);
  r.number("zenith_deg", t.zenith_deg);
  r.number("station_altitude_m", t.station_altitude_m);
  r.number("sat_altitude_m", t.sat_altitude_m);
  r.number("lambda_nm", t.lambda_nm);
  std::string conv;
  r.string("rytov_convention", conv);
  if (!conv.empty()) {
    const auto c = parse_rytov_convention(conv);
    if (!c) parse_error("$.turbulence.rytov_convention: expected 'verbatim' or 'standard'");
    t.convention = *c;
  }
  r.finish();
}

std::vector<double> read_number_list(const json& v, const std::string& path) {
  if (!v.is_array()) parse_error(path + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) parse_error(path + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<double> read_snr_grid(const json& v) {
  if (v.is_array()) return read_number_list(v, "$.op_snr_grid_dB");
  ObjectReader r(v, "$.op_snr_grid_dB");
  const double a = r.as_number(r.require("start"), "start");
  const double b = r.as_number(r.require("stop"), "stop");
  const double step = r.as_number(r.require("step"), "step");
  r.finish();
  if (!(step > 0.0) || !(b >= a)) parse_error("$.op_snr_grid_dB: need start <= stop and step > 0");
  return snr_grid(a, b, step);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json rounded(double v) { return std::stod(format_number(v)); }

json rounded(const std::optional<double>& v) { return v ? rounded(*v) : json(nullptr); }

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::optional<GeoPoint> city(std::string_view name) {
  const std::string key = lower(name);
  if (key == "toronto") return GeoPoint{43.65, -79.38, 0.1};
  if (key == "sydney") return GeoPoint{-33.87, 151.21, 0.1};
  if (key == "istanbul") return GeoPoint{41.01, 28.98, 0.1};
  if (key == "london") return GeoPoint{51.51, -0.13, 0.1};
  return std::nullopt;
}

std::vector<std::string> city_names() { return {"istanbul", "london", "sydney", "toronto"}; }

std::vector<double> default_lisl_ranges(const WalkerParams& w) {
  if (w == starlink_phase1_v3()) return {1575, 1731, 2000, 3000, 4000, 5016};
  if (w == kuiper_shell2()) return {1515, 2000, 3000, 4000, 5339};
  return {};
}

double default_min_elevation(const WalkerParams& w) { return w == kuiper_shell2() ? 35.0 : 25.0; }

std::vector<double> snr_grid(double start_db, double stop_db, double step_db) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop_db - start_db) / step_db + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start_db + static_cast<double>(i) * step_db);
  return out;
}

Scenario scenario_from_json(const json& j) {
  ObjectReader r(j, "$");
  Scenario s;
  r.integer("schema_version", s.schema_version);
  if (s.schema_version != kScenarioSchemaVersion) {
    parse_error("$.schema_version: unsupported version " + std::to_string(s.schema_version));
  }
  s.constellation = read_constellation(r.require("constellation"), s.constellation_name);
  s.source = read_point(r.require("gs_source"), "$.gs_source");
  s.destination = read_point(r.require("gs_destination"), "$.gs_destination");

  s.lisl_ranges_km = default_lisl_ranges(s.constellation);
  if (const json* v = r.find("lisl_ranges_km")) {
    s.lisl_ranges_km = read_number_list(*v, "$.lisl_ranges_km");
  }
  s.weather = thin_cirrus();
  if (const json* v = r.find("weather")) s.weather = read_weather(*v);
  if (const json* v = r.find("link_budget")) s.link_budget = read_link_budget(*v);
  r.number("T_node_ms", s.node_ms);
  r.integer("slot_count", s.slot_count);
  r.number("slot_seconds", s.slot_seconds);
  s.min_elevation_deg = default_min_elevation(s.constellation);
  r.number("min_elevation_deg", s.min_elevation_deg);

  s.turbulence.sat_altitude_m = s.constellation.altitude_km * 1e3;
  s.turbulence.station_altitude_m = s.source.point.altitude_km * 1e3;
  s.turbulence.lambda_nm = s.link_budget.lambda_nm;
  if (const json* v = r.find("turbulence")) read_turbulence(*v, s.turbulence);

  s.op_snr_grid_db = snr_grid(0.0, 60.0, 1.0);
  if (const json* v = r.find("op_snr_grid_dB")) s.op_snr_grid_db = read_snr_grid(*v);
  r.number("gamma_th_dB", s.gamma_th_db);
  s.op_weathers = weather_preset_names();
  if (const json* v = r.find("op_weathers")) {
    if (!v->is_array()) parse_error("$.op_weathers: expected an array");
    s.op_weathers.clear();
    for (const auto& e : *v) {
      if (!e.is_string()) parse_error("$.op_weathers: expected strings");
      s.op_weathers.push_back(lower(e.get<std::string>()));
    }
  }
  r.finish();
  validate(s);
  return s;
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(e.kind(), path.string() + ": " + e.what());
  }
}

void validate(const Scenario& s) {
  try {
    validate(s.constellation);
    validate(s.source.point);
    validate(s.destination.point);
    validate(s.weather);
    validate(s.link_budget);
    validate(s.turbulence);
  } catch (const std::invalid_argument& e) {
    validation_error(e.what());
  }
  if (s.lisl_ranges_km.empty()) {
    validation_error("lisl_ranges_km is required for a custom constellation");
  }
  const double bound = max_lisl_range(s.constellation.altitude_km);
  std::vector<double> sorted = s.lisl_ranges_km;
  std::sort(sorted.begin(), sorted.end());
  for (double r : sorted) {
    if (!(r > 0.0) || !std::isfinite(r)) validation_error("lisl range must be positive");
    if (r > bound) {
      validation_error("lisl range " + format_number(r) + " km exceeds the maximum " +
                       format_number(bound) + " km at this altitude");
    }
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    validation_error("lisl_ranges_km contains duplicates");
  }
  if (s.slot_count < 1) validation_error("slot_count must be >= 1");
  if (!(s.slot_seconds > 0.0)) validation_error("slot_seconds must be positive");
  if (!(s.node_ms >= 0.0)) validation_error("T_node_ms must be non-negative");
  if (!(s.min_elevation_deg >= 0.0 && s.min_elevation_deg < 90.0)) {
    validation_error("min_elevation_deg must lie in [0, 90)");
  }
  if (s.op_snr_grid_db.empty()) validation_error("op_snr_grid_dB is empty");
  for (double v : s.op_snr_grid_db) {
    if (!std::isfinite(v)) validation_error("op_snr_grid_dB has a non-finite value");
  }
  if (!std::isfinite(s.gamma_th_db)) validation_error("gamma_th_dB must be finite");
  for (const auto& w : s.op_weathers) {
    if (!weather_preset(w)) validation_error("op_weathers: unknown preset '" + w + "'");
  }
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  json c = {{"inclination_deg", s.constellation.inclination_deg},
            {"total_sats", s.constellation.total_sats},
            {"planes", s.constellation.planes},
            {"phasing_f", s.constellation.phasing_f},
            {"altitude_km", s.constellation.altitude_km}};
  if (!s.constellation_name.empty()) c["name"] = s.constellation_name;
  j["constellation"] = c;
  auto point = [](const NamedPoint& p) {
    json o = {{"latitude_deg", p.point.latitude_deg},
              {"longitude_deg", p.point.longitude_deg},
              {"altitude_km", p.point.altitude_km}};
    if (!p.name.empty()) o["name"] = p.name;
    return o;
  };
  j["gs_source"] = point(s.source);
  j["gs_destination"] = point(s.destination);
  j["lisl_ranges_km"] = s.lisl_ranges_km;
  j["weather"] = {{"name", s.weather.name},
                  {"number_concentration_cm3", s.weather.number_concentration_cm3},
                  {"liquid_water_gm3", s.weather.liquid_water_gm3},
                  {"phi", s.weather.phi},
                  {"troposphere_height_km", s.weather.troposphere_height_km}};
  const auto& lb = s.link_budget;
  j["link_budget"] = {{"lambda_nm", lb.lambda_nm},
                      {"eta_t", lb.eta_t},
                      {"eta_r", lb.eta_r},
                      {"divergence_rad", lb.divergence_rad},
                      {"rx_diameter_mm", lb.rx_diameter_mm},
                      {"pointing_error_tx_rad", lb.pointing_error_tx_rad},
                      {"pointing_error_rx_rad", lb.pointing_error_rx_rad},
                      {"sensitivity_dbm", lb.sensitivity_dbm},
                      {"margin_isl_db", lb.margin_isl_db},
                      {"margin_updown_db", lb.margin_updown_db},
                      {"data_rate_gbps", lb.data_rate_gbps}};
  j["T_node_ms"] = s.node_ms;
  j["slot_count"] = s.slot_count;
  j["slot_seconds"] = s.slot_seconds;
  j["min_elevation_deg"] = s.min_elevation_deg;
  const auto& t = s.turbulence;
  j["turbulence"] = {{"wind_speed_mps", t.wind_speed_mps},
                     {"ground_cn2", t.ground_cn2},
                     {"zenith_deg", t.zenith_deg},
                     {"station_altitude_m", t.station_altitude_m},
                     {"sat_altitude_m", t.sat_altitude_m},
                     {"lambda_nm", t.lambda_nm},
                     {"rytov_convention", std::string(to_string(t.convention))}};
  j["op_snr_grid_dB"] = s.op_snr_grid_db;
  j["gamma_th_dB"] = s.gamma_th_db;
  j["op_weathers"] = s.op_weathers;
  return j;
}

std::string scenario_digest(const Scenario& s) {
  const std::string text = scenario_to_json(s).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OutageCurve outage_curve(const TurbulenceParams& t, const EWFadingParams& fading,
                         const WeatherProfile& w, Direction dir, std::span<const double> snr_db,
                         double gamma_th_db) {
  OutageCurve c;
  c.weather = w.name;
  c.direction = dir;
  c.atm_loss = atmospheric_loss(dir, 90.0 - t.zenith_deg, t.station_altitude_m * 1e-3, w,
                                t.lambda_nm);
  c.snr_db.assign(snr_db.begin(), snr_db.end());
  c.p_out.reserve(snr_db.size());
  for (double g : snr_db) c.p_out.push_back(outage_probability(g, gamma_th_db, fading, c.atm_loss));
  return c;
}

int threads_from_env() {
  const char* v = std::getenv("FSOSN_THREADS");
  if (!v || !*v) return 0;
  int n = 0;
  const std::string_view sv(v);
  const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), n);
  if (ec != std::errc() || ptr != sv.data() + sv.size() || n < 0) {
    validation_error("FSOSN_THREADS must be a non-negative integer");
  }
  return n;
}

SweepConfig sweep_config(const Scenario& s) {
  SweepConfig c;
  c.constellation = s.constellation;
  c.source = s.source.point;
  c.destination = s.destination.point;
  c.lisl_ranges_km = s.lisl_ranges_km;
  c.weather = s.weather;
  c.link_budget = s.link_budget;
  c.node_ms = s.node_ms;
  c.slot_count = s.slot_count;
  c.slot_seconds = s.slot_seconds;
  c.min_elevation_deg = s.min_elevation_deg;
  c.threads = threads_from_env();
  return c;
}

RunResult run(const Scenario& s, const std::function<void(int, int)>& progress) {
  validate(s);
  RunResult r;
  r.digest = scenario_digest(s);
  r.sweep = sweep(sweep_config(s), progress);
  r.intersection = find_intersection(r.sweep.curve);
  r.fading = fading_for(s.turbulence);
  for (const auto& name : s.op_weathers) {
    const WeatherProfile w = *weather_preset(name);
    for (Direction d : {Direction::up, Direction::down}) {
      r.outage.push_back(outage_curve(s.turbulence, r.fading, w, d, s.op_snr_grid_db,
                                      s.gamma_th_db));
    }
  }
  return r;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

void export_results(const Scenario& s, const RunResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  const auto& points = r.sweep.curve.points;
  std::string trade = "lisl_range_km,mean_T_net_ms,mean_P_TS_avg_mW,unreachable_slots\n";
  for (const auto& p : points) {
    trade += format_number(p.lisl_range_km) + "," + cell(p.mean_net_ms) + "," +
             cell(p.mean_power_mw) + "," + std::to_string(p.unreachable_slots) + "\n";
  }
  write_file(dir / "tradeoff.csv", trade);

  for (std::size_t k = 0; k < points.size(); ++k) {
    std::string out = "slot,T_net_ms,P_TS_avg_mW,n_sats,path\n";
    for (const auto& rec : r.sweep.records[k]) {
      out += std::to_string(rec.slot) + ",";
      if (rec.reachable) {
        out += format_number(rec.net_ms) + "," + cell(rec.power_mw) + "," +
               std::to_string(rec.satellites.size()) + ",";
        for (std::size_t i = 0; i < rec.satellites.size(); ++i) {
          if (i) out += ";";
          out += std::to_string(rec.satellites[i]);
        }
      } else {
        out += ",,0,";
      }
      out += "\n";
    }
    write_file(dir / ("slots_" + format_number(points[k].lisl_range_km) + ".csv"), out);
  }

  for (const auto& c : r.outage) {
    std::string out = "snr_dB,P_out\n";
    for (std::size_t i = 0; i < c.snr_db.size(); ++i) {
      out += format_number(c.snr_db[i]) + "," + format_number(c.p_out[i]) + "\n";
    }
    write_file(dir / ("outage_" + c.weather + "_" + std::string(to_string(c.direction)) + ".csv"),
               out);
  }

  json summary;
  summary["schema_version"] = kScenarioSchemaVersion;
  summary["scenario_digest"] = r.digest;
  summary["slot_count"] = r.sweep.curve.slot_count;
  if (r.intersection) {
    summary["intersection"] = {{"lisl_range_km", rounded(r.intersection->lisl_range_km)},
                               {"T_net_ms", rounded(r.intersection->net_ms)},
                               {"P_TS_avg_mW", rounded(r.intersection->power_mw)}};
  } else {
    summary["intersection"] = nullptr;
  }
  json ranges = json::array();
  for (const auto& p : points) {
    ranges.push_back({{"lisl_range_km", rounded(p.lisl_range_km)},
                      {"mean_T_net_ms", rounded(p.mean_net_ms)},
                      {"mean_P_TS_avg_mW", rounded(p.mean_power_mw)},
                      {"unreachable_slots", p.unreachable_slots},
                      {"infeasible_power_slots", p.infeasible_power_slots}});
  }
  summary["ranges"] = ranges;
  summary["fading"] = {{"sigma_R", rounded(r.fading.sigma_r)},
                       {"sigma_I", rounded(r.fading.sigma_i)},
                       {"alpha", rounded(r.fading.alpha)},
                       {"beta", rounded(r.fading.beta)},
                       {"eta", rounded(r.fading.eta)}};
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  write_file(dir / "scenario.json", scenario_to_json(s).dump(2) + "\n");
}

}  // namespace fsosn
