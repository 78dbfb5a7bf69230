#include "ifm/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "command",          "R",
      "gap_m",            "source",
      "source.kind",      "source.a",
      "source.amplitude", "grid.points",
      "grid.span_sigmas", "n_max",
      "spectrum.u_max",   "spectrum.points",
      "bomb",             "trials",
      "efficiency",       "workers",
      "trials_output",    "coupler.lambda0",
      "coupler.n1",       "coupler.n2",
      "coupler.n_gap",    "coupler.theta1_deg",
      "coupler.decay_index", "sweep.x_max",
      "sweep.points",     "alpha",
      "transient.mode",   "transient.epsilon",
      "transient.buildup_ns", "scenario.T_ns",
      "scenario.rate_ns", "scenario.reaction_ns",
      "scenario.info_delay_ns", "scenario.duration_ns",
      "scenario.schedule", "scenario.psi",
      "output",           "report",
      "seed",
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(trim(part));
  return parts;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  const std::string* find(const std::string& key) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? nullptr : &it->second;
  }
  bool has(const std::string& key) const { return find(key) != nullptr; }

  double number(const std::string& key, double fallback) const {
    const auto* v = find(key);
    return v ? to_double(key, *v) : fallback;
  }
  long long integer(const std::string& key, long long fallback) const {
    const auto* v = find(key);
    return v ? to_integer(key, *v) : fallback;
  }
  bool boolean(const std::string& key, bool fallback) const {
    const auto* v = find(key);
    return v ? to_bool(key, *v) : fallback;
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    std::vector<double> out;
    for (const auto& part : split(*v, ',')) out.push_back(to_double(key, part));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

 private:
  const KeyValues& kv_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

Command parse_command(const std::string& s) {
  static const std::map<std::string, Command> names = {
      {"reflectivity", Command::reflectivity}, {"match-gap", Command::match_gap},
      {"eta-curve", Command::eta_curve},       {"eta-limit", Command::eta_limit},
      {"spectrum", Command::spectrum},         {"outcomes", Command::outcomes},
      {"transient", Command::transient},
  };
  const auto it = names.find(s);
  if (it == names.end()) throw ConfigError("command", "unknown command '" + s + "'");
  return it->second;
}

std::vector<SwitchTransition> parse_schedule(const std::string& text) {
  std::vector<SwitchTransition> schedule;
  for (const auto& entry : split(text, ',')) {
    const auto colon = entry.find(':');
    require(colon != std::string::npos, "scenario.schedule", "entries must be time:on or time:off");
    const std::string state = trim(entry.substr(colon + 1));
    require(state == "on" || state == "off", "scenario.schedule", "state must be on or off");
    schedule.push_back({to_double("scenario.schedule", trim(entry.substr(0, colon))), state == "on"});
  }
  return schedule;
}

}  // namespace

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::reflectivity: return "reflectivity";
    case Command::match_gap: return "match-gap";
    case Command::eta_curve: return "eta-curve";
    case Command::eta_limit: return "eta-limit";
    case Command::spectrum: return "spectrum";
    case Command::outcomes: return "outcomes";
    case Command::transient: return "transient";
  }
  return "?";
}

std::vector<SourceSpec> RunConfig::sources() const {
  if (source_kind == SourceKind::cw) return {SourceSpec::cw(amplitude_scale)};
  std::vector<SourceSpec> out;
  for (double a : a_values) out.push_back(SourceSpec::pulse(a, amplitude_scale));
  return out;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, trim(body.substr(eq + 1))).second) throw ConfigError(key, "key given twice");
  }
  return kv;
}

RunConfig parse_config(const std::string& text, const KeyValues& overrides) {
  KeyValues kv = parse_key_values(text);
  for (const auto& [k, v] : overrides) kv[k] = v;
  return build_config(kv);
}

RunConfig build_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv)
    if (!known_keys().contains(key)) throw ConfigError(key, "unknown key");
  if (kv.contains("source") && kv.contains("source.kind"))
    throw ConfigError("source", "give either source or source.kind, not both");

  const Reader in(kv);
  RunConfig cfg;

  const auto* command = in.find("command");
  require(command != nullptr, "command", "missing required key");
  cfg.command = parse_command(*command);

  // Coupler first: a gap-derived R needs it.
  {
    const double lambda0 = in.number("coupler.lambda0", 633e-9);
    const double n1 = in.number("coupler.n1", 1.5);
    const double n2 = in.number("coupler.n2", 1.5);
    const double n_gap = in.number("coupler.n_gap", 1.0);
    const double theta_deg = in.number("coupler.theta1_deg", 45.0);
    DecayIndex decay = DecayIndex::gap;
    if (const auto* d = in.find("coupler.decay_index")) {
      require(*d == "gap" || *d == "printed", "coupler.decay_index", "must be gap or printed");
      decay = *d == "gap" ? DecayIndex::gap : DecayIndex::printed;
    }
    try {
      cfg.coupler = CouplerParams(lambda0, n1, n2, n_gap, theta_deg * std::numbers::pi / 180.0, decay);
      if (decay == DecayIndex::printed) (void)evanescent_b(cfg.coupler);
    } catch (const std::exception& e) {
      throw ConfigError("coupler", e.what());
    }
    cfg.sweep_x_max = in.number("sweep.x_max", 2 * lambda0);
    require(cfg.sweep_x_max > 0.0, "sweep.x_max", "must be positive");
    cfg.sweep_points = static_cast<int>(in.integer("sweep.points", 201));
    require(cfg.sweep_points >= 2, "sweep.points", "must be >= 2");
    cfg.alphas = in.numbers("alpha", cfg.alphas);
    for (double a : cfg.alphas) require(a >= 0.0, "alpha", "must be non-negative");
  }

  const bool needs_R = cfg.command != Command::reflectivity && cfg.command != Command::match_gap;
  if (in.has("R")) {
    cfg.R = in.number("R", 0.0);
    require(cfg.R >= 0.0 && cfg.R < 1.0, "R", "must lie in [0, 1)");
  } else if (in.has("gap_m")) {
    cfg.gap_m = in.number("gap_m", 0.0);
    require(*cfg.gap_m >= 0.0, "gap_m", "must be non-negative");
    cfg.R = power_reflectivity(*cfg.gap_m, cfg.coupler);
    cfg.R_from_gap = true;
    require(cfg.R < 1.0, "gap_m", "gap so wide that R rounds to 1");
  } else if (needs_R) {
    throw ConfigError("R", "missing required key (or give gap_m)");
  }

  const std::string* kind = in.find("source.kind");
  const std::string kind_key = kind ? "source.kind" : "source";
  if (!kind) kind = in.find("source");
  if (kind) {
    require(*kind == "cw" || *kind == "pulse", kind_key, "must be cw or pulse");
    cfg.source_kind = *kind == "cw" ? SourceKind::cw : SourceKind::pulse;
    if (cfg.source_kind == SourceKind::pulse)
      require(in.has("source.a"), "source.a", "missing required key a for a pulse source");
    else
      require(!in.has("source.a"), "source.a", "a cw source carries no a");
  }
  cfg.a_values = in.numbers("source.a", cfg.a_values);
  for (double a : cfg.a_values) require(a > 0.0, "source.a", "must be positive");
  cfg.amplitude_scale = in.number("source.amplitude", 1.0);
  require(cfg.amplitude_scale > 0.0, "source.amplitude", "must be positive");

  cfg.grid_points = static_cast<int>(in.integer("grid.points", 4001));
  require(cfg.grid_points >= 3 && cfg.grid_points % 2 == 1, "grid.points", "must be odd and >= 3");
  cfg.grid_span_sigmas = in.number("grid.span_sigmas", 8.0);
  require(cfg.grid_span_sigmas > 0.0, "grid.span_sigmas", "must be positive");

  cfg.n_max = static_cast<int>(in.integer("n_max", 300));
  require(cfg.n_max >= 0 && cfg.n_max <= 10'000'000, "n_max", "must lie in [0, 1e7]");

  cfg.spectrum_u_max = in.number("spectrum.u_max", 0.1);
  require(cfg.spectrum_u_max > 0.0, "spectrum.u_max", "must be positive");
  cfg.spectrum_points = static_cast<int>(in.integer("spectrum.points", 2001));
  require(cfg.spectrum_points >= 2, "spectrum.points", "must be >= 2");

  cfg.bomb = in.boolean("bomb", true);
  cfg.trials = in.integer("trials", 0);
  require(cfg.trials >= 0, "trials", "must be non-negative");
  cfg.efficiency = in.number("efficiency", 0.85);
  require(cfg.efficiency >= 0.0 && cfg.efficiency <= 1.0, "efficiency", "must lie in [0, 1]");
  const long long workers = in.integer("workers", 1);
  require(workers >= 1 && workers <= 64, "workers", "must lie in [1, 64]");
  cfg.workers = static_cast<unsigned>(workers);
  if (const auto* p = in.find("trials_output")) cfg.trials_output = *p;

  if (const auto* m = in.find("transient.mode")) {
    require(*m == "buildup" || *m == "switch", "transient.mode", "must be buildup or switch");
    cfg.transient_mode = *m == "buildup" ? TransientMode::buildup : TransientMode::switching;
  }
  cfg.epsilon = in.number("transient.epsilon", 0.01);
  require(cfg.epsilon > 0.0 && cfg.epsilon < 1.0, "transient.epsilon", "must lie in (0, 1)");
  cfg.buildup_ns = in.number("transient.buildup_ns", 100.0);
  require(cfg.buildup_ns > 0.0, "transient.buildup_ns", "must be positive");
  if (cfg.command == Command::transient && cfg.transient_mode == TransientMode::buildup)
    require(cfg.n_max >= 1, "n_max", "must be >= 1 for a build-up curve");

  auto& sc = cfg.scenario;
  sc.round_trip_time_ns = in.number("scenario.T_ns", 0.01);
  require(sc.round_trip_time_ns > 0.0, "scenario.T_ns", "must be positive");
  sc.photon_rate_per_ns = in.number("scenario.rate_ns", 10.0);
  require(sc.photon_rate_per_ns > 0.0, "scenario.rate_ns", "must be positive");
  sc.pockels_reaction_ns = in.number("scenario.reaction_ns", 0.1);
  require(sc.pockels_reaction_ns >= 0.0, "scenario.reaction_ns", "must be non-negative");
  sc.info_delay_ns = in.number("scenario.info_delay_ns", 4.0);
  require(sc.info_delay_ns >= 0.0, "scenario.info_delay_ns", "must be non-negative");
  sc.duration_ns = in.number("scenario.duration_ns", 20.0);
  require(sc.duration_ns > 0.0, "scenario.duration_ns", "must be positive");
  sc.psi = in.number("scenario.psi", 0.0);
  sc.schedule = parse_schedule(in.find("scenario.schedule") ? *in.find("scenario.schedule") : "0:off,10:on");
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario.schedule", e.what());
  }
  const double trips = sc.duration_ns / sc.round_trip_time_ns;
  require(trips <= 5e7, "scenario.duration_ns", "more than 5e7 round trips");

  if (const auto* p = in.find("output")) cfg.output = *p;
  if (const auto* p = in.find("report")) cfg.report = *p;
  const long long seed = in.integer("seed", 0);
  require(seed >= 0, "seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);

  if (cfg.a_values.size() > 1 && cfg.command == Command::eta_curve && !cfg.output)
    throw ConfigError("output", "several source.a values need an output path");
  return cfg;
}

}  // namespace ifm
