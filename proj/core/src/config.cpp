#include "molent/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "molent/errors.hpp"
#include "molent/number_format.hpp"
#include "molent/units.hpp"

namespace molent {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw Error(ErrorCode::config, "expected a number, got '" + std::string(text) + "'");
  return value;
}

std::size_t parse_count(std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::config, "expected a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::config, "expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ", ";
    append_double(s, values[i]);
  }
  return s;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"species",
       [](RunConfig& c, std::string_view v) {
         if (!parse_species(trim(v))) throw Error(ErrorCode::config, "unknown species '" + std::string(trim(v)) + "'");
         c.species = std::string(trim(v));
       }},
      {"atom_mass_amu", [](RunConfig& c, std::string_view v) { c.atom_mass_amu = parse_number(v); }},
      {"a_bg_nm", [](RunConfig& c, std::string_view v) { c.a_bg_nm = parse_number(v); }},
      {"b0_gauss", [](RunConfig& c, std::string_view v) { c.b0_gauss = parse_number(v); }},
      {"delta_b_gauss", [](RunConfig& c, std::string_view v) { c.delta_b_gauss = parse_number(v); }},
      {"omega_perp_khz", [](RunConfig& c, std::string_view v) { c.omega_perp_khz = parse_number(v); }},
      {"pole_epsilon_gauss", [](RunConfig& c, std::string_view v) { c.pole_epsilon_gauss = parse_number(v); }},
      {"cir_bracket_floor", [](RunConfig& c, std::string_view v) { c.cir_bracket_floor = parse_number(v); }},
      {"b_start_gauss", [](RunConfig& c, std::string_view v) { c.b_start_gauss = parse_number(v); }},
      {"b_span_gauss", [](RunConfig& c, std::string_view v) { c.b_span_gauss = parse_number(v); }},
      {"b_dot_g_per_ms", [](RunConfig& c, std::string_view v) { c.b_dot_g_per_ms = parse_number(v); }},
      {"scan_b_dot_g_per_ms", [](RunConfig& c, std::string_view v) { c.scan_b_dot_g_per_ms = parse_list(v); }},
      {"hold_until_ms", [](RunConfig& c, std::string_view v) { c.hold_until_ms = parse_number(v); }},
      {"half_width_um", [](RunConfig& c, std::string_view v) { c.half_width_um = parse_number(v); }},
      {"n_points", [](RunConfig& c, std::string_view v) { c.n_points = parse_count(v); }},
      {"dt_us", [](RunConfig& c, std::string_view v) { c.dt_us = parse_number(v); }},
      {"scheme",
       [](RunConfig& c, std::string_view v) {
         const auto s = parse_scheme(trim(v));
         if (!s) throw Error(ErrorCode::config, "unknown scheme '" + std::string(trim(v)) + "'");
         c.scheme = *s;
       }},
      {"check_interval_steps", [](RunConfig& c, std::string_view v) { c.check_interval_steps = parse_count(v); }},
      {"leak_tolerance", [](RunConfig& c, std::string_view v) { c.leak_tolerance = parse_number(v); }},
      {"leak_radius_fraction", [](RunConfig& c, std::string_view v) { c.leak_radius_fraction = parse_number(v); }},
      {"refine_ground_state", [](RunConfig& c, std::string_view v) { c.refine_ground_state = parse_bool(v); }},
      {"t_final_ms", [](RunConfig& c, std::string_view v) { c.t_final_ms = parse_number(v); }},
      {"snapshot_times_ms", [](RunConfig& c, std::string_view v) { c.snapshot_times_ms = parse_list(v); }},
      {"r_ratios", [](RunConfig& c, std::string_view v) { c.r_ratios = parse_list(v); }},
      {"delta_x0_um", [](RunConfig& c, std::string_view v) { c.delta_x0_um = parse_list(v); }},
      {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); }},
  };
  return table;
}

}  // namespace

double RunConfig::atom_mass() const {
  if (atom_mass_amu) return *atom_mass_amu * units::atomic_mass_unit;
  const auto s = parse_species(species);
  if (!s) throw Error(ErrorCode::config, "unknown species '" + species + "'");
  return molent::atomic_mass(*s);
}

FeshbachParams RunConfig::feshbach() const {
  FeshbachParams p;
  p.background_length = a_bg_nm * units::nanometer;
  p.resonance_field = b0_gauss;
  p.resonance_width = delta_b_gauss;
  p.omega_perp = 2.0 * units::pi * omega_perp_khz * units::kilohertz;
  p.atom_mass = atom_mass();
  return p;
}

double RunConfig::hold_until() const { return hold_until_ms.value_or(t_final_ms) * units::millisecond; }

double RunConfig::t_final() const { return t_final_ms * units::millisecond; }

SweepSchedule RunConfig::schedule(double rate_g_per_ms) const {
  return SweepSchedule{b_start_gauss, b_span_gauss, units::gauss_per_ms(rate_g_per_ms), hold_until()};
}

Grid1D RunConfig::grid() const { return Grid1D(half_width_um * units::micrometer, n_points); }

PropagatorConfig RunConfig::propagator() const {
  PropagatorConfig p;
  p.dt = dt_us * units::microsecond;
  p.scheme = scheme;
  p.check_interval = check_interval_steps;
  p.leak_tolerance = leak_tolerance;
  p.leak_radius_fraction = leak_radius_fraction;
  for (double t : snapshot_times_ms) p.snapshot_times.push_back(t * units::millisecond);
  return p;
}

ResonanceLimits RunConfig::limits() const {
  ResonanceLimits l;
  l.pole_epsilon = pole_epsilon_gauss;
  l.cir_bracket_floor = cir_bracket_floor;
  return l;
}

double RunConfig::initial_a1d() const {
  const FeshbachParams p = feshbach();
  const ResonanceLimits l = limits();
  return a1d_from_a(scattering_length(p, b_start_gauss, l.pole_epsilon), transverse_length(p), l);
}

std::vector<double> RunConfig::resolved_r_ratios() const {
  if (!r_ratios.empty()) return r_ratios;
  if (!delta_x0_um.empty()) {
    const double a1d = initial_a1d();
    std::vector<double> out;
    for (double w : delta_x0_um) out.push_back(w * units::micrometer / a1d);
    return out;
  }
  std::vector<double> out;
  constexpr int count = 16;
  const double lo = std::log(0.05);
  const double hi = std::log(5.0);
  for (int i = 0; i < count; ++i) out.push_back(std::exp(lo + (hi - lo) * i / (count - 1)));
  return out;
}

void RunConfig::validate() const {
  if (!r_ratios.empty() && !delta_x0_um.empty())
    throw Error(ErrorCode::config, "r_ratios and delta_x0_um are mutually exclusive");
  for (double r : r_ratios)
    if (!(r > 0.0)) throw Error(ErrorCode::config, "r_ratios entries must be positive");
  for (double w : delta_x0_um)
    if (!(w > 0.0)) throw Error(ErrorCode::config, "delta_x0_um entries must be positive");
  if (atom_mass_amu && !(*atom_mass_amu > 0.0)) throw Error(ErrorCode::config, "atom_mass_amu must be positive");
  if (!(t_final_ms > 0.0)) throw Error(ErrorCode::config, "t_final_ms must be positive");
  if (hold_until_ms && *hold_until_ms < t_final_ms)
    throw Error(ErrorCode::config, "hold_until_ms must not precede t_final_ms");
  for (double t : snapshot_times_ms)
    if (t < 0.0 || t > t_final_ms) throw Error(ErrorCode::config, "snapshot times must lie in [0, t_final_ms]");
  for (double r : scan_b_dot_g_per_ms)
    if (!(r > 0.0)) throw Error(ErrorCode::config, "scan_b_dot_g_per_ms entries must be positive");
  feshbach().validate();
  grid();
  propagator().validate();
}

RunConfig parse_config(std::istream& in, std::string_view source) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::config, where() + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto it = setters().find(key);
    if (it == setters().end()) throw Error(ErrorCode::config, where() + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw Error(ErrorCode::config, where() + "key '" + key + "' given twice");
    try {
      it->second(cfg, line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::config, where() + key + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config file " + path.string());
  return parse_config(in, path.string());
}

std::string to_manifest(const RunConfig& cfg) {
  std::ostringstream os;
  auto line = [&](std::string_view key, const std::string& value) { os << key << " = " << value << '\n'; };
  auto num = [&](std::string_view key, double v) { line(key, format_double(v)); };

  os << "# molent run manifest; parseable as a config file\n";
  line("species", cfg.species);
  num("atom_mass_amu", cfg.atom_mass() / units::atomic_mass_unit);
  num("a_bg_nm", cfg.a_bg_nm);
  num("b0_gauss", cfg.b0_gauss);
  num("delta_b_gauss", cfg.delta_b_gauss);
  num("omega_perp_khz", cfg.omega_perp_khz);
  num("pole_epsilon_gauss", cfg.pole_epsilon_gauss);
  num("cir_bracket_floor", cfg.cir_bracket_floor);
  num("b_start_gauss", cfg.b_start_gauss);
  num("b_span_gauss", cfg.b_span_gauss);
  num("b_dot_g_per_ms", cfg.b_dot_g_per_ms);
  line("scan_b_dot_g_per_ms", join(cfg.scan_b_dot_g_per_ms));
  num("hold_until_ms", cfg.hold_until() / units::millisecond);
  num("half_width_um", cfg.half_width_um);
  line("n_points", std::to_string(cfg.n_points));
  num("dt_us", cfg.dt_us);
  line("scheme", std::string(to_string(cfg.scheme)));
  line("check_interval_steps", std::to_string(cfg.check_interval_steps));
  num("leak_tolerance", cfg.leak_tolerance);
  num("leak_radius_fraction", cfg.leak_radius_fraction);
  line("refine_ground_state", cfg.refine_ground_state ? "true" : "false");
  num("t_final_ms", cfg.t_final_ms);
  line("snapshot_times_ms", join(cfg.snapshot_times_ms));
  line("r_ratios", join(cfg.resolved_r_ratios()));
  line("output_dir", cfg.output_dir);

  const FeshbachParams p = cfg.feshbach();
  const double a_perp = transverse_length(p);
  const double a0 = scattering_length(p, cfg.b_start_gauss, cfg.pole_epsilon_gauss);
  os << "# derived: a_perp_nm = " << format_double(a_perp / units::nanometer) << '\n';
  os << "# derived: a_start_nm = " << format_double(a0 / units::nanometer) << '\n';
  os << "# derived: a1d_start_um = " << format_double(cfg.initial_a1d() / units::micrometer) << '\n';
  os << "# derived: grid_spacing_nm = " << format_double(cfg.grid().spacing() / units::nanometer) << '\n';
  return os.str();
}

}  // namespace molent
