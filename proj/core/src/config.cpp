#include "polsim/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "polsim/io.hpp"

namespace polsim {

namespace {

struct ParsedFile {
  // (section, key) -> value, plus consumption tracking for strictness.
  std::map<std::pair<std::string, std::string>, std::string> entries;
  mutable std::map<std::pair<std::string, std::string>, bool> consumed;

  std::optional<std::string> take(const std::string& section, const std::string& key) const {
    auto it = entries.find({section, key});
    if (it == entries.end()) return std::nullopt;
    consumed[{section, key}] = true;
    return it->second;
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

ParsedFile tokenize(const std::string& text) {
  ParsedFile file;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) +
                                                       ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": key outside a section");
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key or value");
    if (!file.entries.emplace(std::make_pair(section, key), value).second)
      throw std::invalid_argument("config: duplicate key " + section + "." + key);
  }
  return file;
}

double parse_number(const std::string& section, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("config: " + section + "." + key + " is not a number: " + v);
  }
}

long parse_integer(const std::string& section, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("config: " + section + "." + key + " is not an integer: " + v);
  }
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("config: " + section + "." + key + " must be true or false");
}

std::vector<double> parse_list(const std::string& section, const std::string& key,
                               const std::string& v) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) values.push_back(parse_number(section, key, trim(item)));
  if (values.empty())
    throw std::invalid_argument("config: " + section + "." + key + " is an empty list");
  return values;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

ExperimentConfig paper_defaults() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& text) {
  const ParsedFile file = tokenize(text);
  ExperimentConfig cfg;

  auto str = [&](const char* s, const char* k, std::string& out) {
    if (auto v = file.take(s, k)) out = *v;
  };
  auto num = [&](const char* s, const char* k, double& out) {
    if (auto v = file.take(s, k)) out = parse_number(s, k, *v);
  };
  auto integer = [&](const char* s, const char* k, int& out) {
    if (auto v = file.take(s, k)) out = static_cast<int>(parse_integer(s, k, *v));
  };
  auto boolean = [&](const char* s, const char* k, bool& out) {
    if (auto v = file.take(s, k)) out = parse_bool(s, k, *v);
  };

  str("scheme", "variant", cfg.scheme_variant);
  boolean("scheme", "include_loss_level", cfg.include_loss_level);
  num("scheme", "second_excited_offset_mhz", cfg.second_excited_offset_mhz);
  num("scheme", "sigma_minus_sign", cfg.sigma_minus_sign);
  num("scheme", "gamma_mhz", cfg.gamma_mhz);
  str("scheme", "initial_state", cfg.initial_state);

  num("magnetic", "field_gauss", cfg.field_gauss);
  num("magnetic", "lande_gf", cfg.lande_gf);

  num("cavity", "g_max_mhz", cfg.g_max_mhz);
  num("cavity", "kappa_mhz", cfg.kappa_mhz);
  num("cavity", "kappa_out_fraction", cfg.kappa_out_fraction);
  integer("cavity", "n_max", cfg.n_max);
  num("cavity", "detuning_c_mhz", cfg.detuning_c_mhz);

  num("pulse", "omega0_mhz", cfg.omega0_mhz);
  num("pulse", "tp_us", cfg.tp_us);
  num("pulse", "period_us", cfg.period_us);
  integer("pulse", "pairs", cfg.pairs);
  str("pulse", "first", cfg.first_pulse);
  if (auto v = file.take("pulse", "delta_pc_mhz")) {
    if (*v == "auto")
      cfg.delta_pc_mhz.reset();
    else
      cfg.delta_pc_mhz = parse_number("pulse", "delta_pc_mhz", *v);
  }
  num("pulse", "w_plus_re", cfg.w_plus_re);
  num("pulse", "w_plus_im", cfg.w_plus_im);
  num("pulse", "w_minus_re", cfg.w_minus_re);
  num("pulse", "w_minus_im", cfg.w_minus_im);

  str("transit", "mode", cfg.transit_mode);
  num("transit", "g_scale", cfg.g_scale);
  num("transit", "duration_us", cfg.transit_duration_us);
  num("transit", "arrival_rate_per_ms", cfg.arrival_rate_per_ms);
  boolean("transit", "g_scale_ensemble", cfg.g_scale_ensemble);

  str("detection", "waveplate", cfg.waveplate);
  num("detection", "delay_long_us", cfg.delay_long_us);
  boolean("detection", "long_fiber_open", cfg.long_fiber_open);
  num("detection", "bs_overlap", cfg.bs_overlap);
  num("detection", "efficiency", cfg.efficiency);
  num("detection", "dark_rate_per_s", cfg.dark_rate_per_s);
  num("detection", "bin_width_ns", cfg.bin_width_ns);

  if (auto v = file.take("run", "seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_integer("run", "seed", *v));
  num("run", "time_step_ns", cfg.time_step_ns);
  num("run", "mcwf_time_step_ns", cfg.mcwf_time_step_ns);
  integer("run", "points_per_slot", cfg.points_per_slot);
  integer("run", "trajectories", cfg.trajectories);
  integer("run", "g1_points", cfg.g1_points);

  integer("hbt", "transits", cfg.hbt_transits);
  num("hbt", "tau_max_us", cfg.hbt_tau_max_us);
  num("hbt", "efficiency", cfg.hbt_efficiency);

  if (auto v = file.take("scan", "omega0_mhz_values"))
    cfg.scan_omega0_mhz = parse_list("scan", "omega0_mhz_values", *v);
  if (auto v = file.take("scan", "tp_us_values"))
    cfg.scan_tp_us = parse_list("scan", "tp_us_values", *v);
  integer("scan", "trajectories", cfg.scan_trajectories);
  integer("scan", "pairs", cfg.scan_pairs);

  // Strict parsing: every key present must have been consumed.
  for (const auto& [sk, value] : file.entries) {
    if (!file.consumed[sk])
      throw std::invalid_argument("config: unknown key " + sk.first + "." + sk.second);
  }

  // Cross-field validation happens in the builders, but catch the all-text
  // enums here so errors carry the config vocabulary.
  if (cfg.scheme_variant != "minimal" && cfg.scheme_variant != "extended")
    throw std::invalid_argument("config: scheme.variant must be minimal or extended");
  if (cfg.initial_state != "mixed" && cfg.initial_state != "minus" &&
      cfg.initial_state != "zero" && cfg.initial_state != "plus")
    throw std::invalid_argument("config: scheme.initial_state must be mixed/minus/zero/plus");
  if (cfg.first_pulse != "plus" && cfg.first_pulse != "minus")
    throw std::invalid_argument("config: pulse.first must be plus or minus");
  if (cfg.transit_mode != "constant" && cfg.transit_mode != "gaussian")
    throw std::invalid_argument("config: transit.mode must be constant or gaussian");
  if (cfg.waveplate != "balanced" && cfg.waveplate != "polarizing")
    throw std::invalid_argument("config: detection.waveplate must be balanced or polarizing");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "# polarization-controlled photon source configuration\n";
  out << "# frequencies are omega/2pi in MHz; times carry units in key names\n\n";
  out << "[scheme]\n";
  out << "variant = " << c.scheme_variant << "\n";
  out << "include_loss_level = " << (c.include_loss_level ? "true" : "false") << "\n";
  out << "second_excited_offset_mhz = " << format_double(c.second_excited_offset_mhz) << "\n";
  out << "sigma_minus_sign = " << format_double(c.sigma_minus_sign) << "\n";
  out << "gamma_mhz = " << format_double(c.gamma_mhz) << "\n";
  out << "initial_state = " << c.initial_state << "\n\n";
  out << "[magnetic]\n";
  out << "field_gauss = " << format_double(c.field_gauss) << "\n";
  out << "lande_gf = " << format_double(c.lande_gf) << "\n\n";
  out << "[cavity]\n";
  out << "g_max_mhz = " << format_double(c.g_max_mhz) << "\n";
  out << "kappa_mhz = " << format_double(c.kappa_mhz) << "\n";
  out << "kappa_out_fraction = " << format_double(c.kappa_out_fraction) << "\n";
  out << "n_max = " << c.n_max << "\n";
  out << "detuning_c_mhz = " << format_double(c.detuning_c_mhz) << "\n\n";
  out << "[pulse]\n";
  out << "omega0_mhz = " << format_double(c.omega0_mhz) << "\n";
  out << "tp_us = " << format_double(c.tp_us) << "\n";
  out << "period_us = " << format_double(c.period_us) << "\n";
  out << "pairs = " << c.pairs << "\n";
  out << "first = " << c.first_pulse << "\n";
  out << "delta_pc_mhz = " << (c.delta_pc_mhz ? format_double(*c.delta_pc_mhz) : "auto") << "\n";
  out << "w_plus_re = " << format_double(c.w_plus_re) << "\n";
  out << "w_plus_im = " << format_double(c.w_plus_im) << "\n";
  out << "w_minus_re = " << format_double(c.w_minus_re) << "\n";
  out << "w_minus_im = " << format_double(c.w_minus_im) << "\n\n";
  out << "[transit]\n";
  out << "mode = " << c.transit_mode << "\n";
  out << "g_scale = " << format_double(c.g_scale) << "\n";
  out << "duration_us = " << format_double(c.transit_duration_us) << "\n";
  out << "arrival_rate_per_ms = " << format_double(c.arrival_rate_per_ms) << "\n";
  out << "g_scale_ensemble = " << (c.g_scale_ensemble ? "true" : "false") << "\n\n";
  out << "[detection]\n";
  out << "waveplate = " << c.waveplate << "\n";
  out << "delay_long_us = " << format_double(c.delay_long_us) << "\n";
  out << "long_fiber_open = " << (c.long_fiber_open ? "true" : "false") << "\n";
  out << "bs_overlap = " << format_double(c.bs_overlap) << "\n";
  out << "efficiency = " << format_double(c.efficiency) << "\n";
  out << "dark_rate_per_s = " << format_double(c.dark_rate_per_s) << "\n";
  out << "bin_width_ns = " << format_double(c.bin_width_ns) << "\n\n";
  out << "[run]\n";
  out << "seed = " << c.seed << "\n";
  out << "time_step_ns = " << format_double(c.time_step_ns) << "\n";
  out << "mcwf_time_step_ns = " << format_double(c.mcwf_time_step_ns) << "\n";
  out << "points_per_slot = " << c.points_per_slot << "\n";
  out << "trajectories = " << c.trajectories << "\n";
  out << "g1_points = " << c.g1_points << "\n\n";
  out << "[hbt]\n";
  out << "transits = " << c.hbt_transits << "\n";
  out << "tau_max_us = " << format_double(c.hbt_tau_max_us) << "\n";
  out << "efficiency = " << format_double(c.hbt_efficiency) << "\n\n";
  out << "[scan]\n";
  out << "omega0_mhz_values = " << join(c.scan_omega0_mhz) << "\n";
  out << "tp_us_values = " << join(c.scan_tp_us) << "\n";
  out << "trajectories = " << c.scan_trajectories << "\n";
  out << "pairs = " << c.scan_pairs << "\n";
  return out.str();
}

double config_delta_b(const ExperimentConfig& config) {
  return zeeman_splitting(config.field_gauss, config.lande_gf);
}

LevelScheme make_scheme(const ExperimentConfig& config) {
  const double delta_b = config_delta_b(config);
  LevelScheme scheme =
      config.scheme_variant == "minimal"
          ? LevelScheme::minimal(delta_b)
          : LevelScheme::extended(delta_b, mhz_to_rad(config.second_excited_offset_mhz),
                                  config.include_loss_level);
  scheme.set_sigma_minus_sign(config.sigma_minus_sign);
  return scheme;
}

CavityConfig make_cavity(const ExperimentConfig& config) {
  CavityConfig cavity;
  cavity.g_max = mhz_to_rad(config.g_max_mhz);
  cavity.kappa = mhz_to_rad(config.kappa_mhz);
  cavity.kappa_out_fraction = config.kappa_out_fraction;
  cavity.n_max = config.n_max;
  cavity.detuning_c = mhz_to_rad(config.detuning_c_mhz);
  cavity.validate();
  return cavity;
}

PulseProgram make_program(const ExperimentConfig& config) {
  const double delta_pc = config.delta_pc_mhz ? mhz_to_rad(*config.delta_pc_mhz)
                                              : 2.0 * config_delta_b(config);
  PumpPulse plus;
  plus.omega0 = mhz_to_rad(config.omega0_mhz);
  plus.t_p = us_to_s(config.tp_us);
  plus.delta_pc = +delta_pc;
  plus.w_plus = {config.w_plus_re, config.w_plus_im};
  plus.w_minus = {config.w_minus_re, config.w_minus_im};
  PumpPulse minus = plus;
  minus.delta_pc = -delta_pc;

  PulseProgram program;
  if (config.first_pulse == "plus")
    program.pulses = {plus, minus};
  else
    program.pulses = {minus, plus};
  program.period = us_to_s(config.period_us);
  program.repetitions = config.pairs;
  program.validate();
  return program;
}

TransitModel make_transit(const ExperimentConfig& config) {
  TransitModel transit;
  transit.mode = config.transit_mode == "gaussian" ? TransitModel::Mode::Gaussian
                                                   : TransitModel::Mode::Constant;
  transit.g_scale = config.g_scale;
  transit.transit_duration = us_to_s(config.transit_duration_us);
  transit.arrival_rate = config.arrival_rate_per_ms * 1e3;
  transit.validate();
  return transit;
}

DetectionConfig make_detection(const ExperimentConfig& config) {
  DetectionConfig detection;
  detection.waveplate_mode = config.waveplate == "polarizing"
                                 ? DetectionConfig::WaveplateMode::Polarizing
                                 : DetectionConfig::WaveplateMode::Balanced;
  detection.delay_long = us_to_s(config.delay_long_us);
  detection.long_fiber_open = config.long_fiber_open;
  detection.bs_overlap = config.bs_overlap;
  detection.detector_efficiency = config.efficiency;
  detection.dark_rate = config.dark_rate_per_s;
  detection.bin_width = ns_to_s(config.bin_width_ns);
  detection.validate();
  return detection;
}

InitialAtomState make_initial_state(const ExperimentConfig& config) {
  if (config.initial_state == "minus") return InitialAtomState::GroundMinus;
  if (config.initial_state == "zero") return InitialAtomState::GroundZero;
  if (config.initial_state == "plus") return InitialAtomState::GroundPlus;
  return InitialAtomState::MixedEdges;
}

double config_gamma(const ExperimentConfig& config) { return mhz_to_rad(config.gamma_mhz); }

}  // namespace polsim
