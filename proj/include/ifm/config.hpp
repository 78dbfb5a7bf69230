#pragma once

// Run configuration for the command-line front end.
//
// The document format is flat `key = value` text, one entry per line, with
// `#` comments. Keys are namespaced with dots (source.kind, grid.points,
// scenario.rate_ns). Unknown keys are rejected.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifm/ftir.hpp"
#include "ifm/spectral.hpp"
#include "ifm/transient.hpp"

namespace ifm {

enum class Command { reflectivity, match_gap, eta_curve, eta_limit, spectrum, outcomes, transient };

std::string_view command_name(Command c) noexcept;

enum class TransientMode { buildup, switching };

using KeyValues = std::map<std::string, std::string>;

struct RunConfig {
  Command command = Command::eta_curve;
  double R = 0.0;
  bool R_from_gap = false;
  std::optional<double> gap_m;

  SourceKind source_kind = SourceKind::pulse;
  std::vector<double> a_values{200.0};
  double amplitude_scale = 1.0;
  int grid_points = 4001;
  double grid_span_sigmas = 8.0;

  int n_max = 300;

  double spectrum_u_max = 0.1;
  int spectrum_points = 2001;

  bool bomb = true;
  std::int64_t trials = 0;
  double efficiency = 0.85;
  unsigned workers = 1;
  std::optional<std::string> trials_output;

  CouplerParams coupler = CouplerParams::reference();
  double sweep_x_max = 2 * 633e-9;
  int sweep_points = 201;
  std::vector<double> alphas{0.0015};

  TransientMode transient_mode = TransientMode::buildup;
  double epsilon = 0.01;
  double buildup_ns = 100.0;
  SwitchScenario scenario;

  std::optional<std::string> output;
  std::optional<std::string> report;
  std::uint64_t seed = 0;

  /// Sources implied by source.kind and the a list (one per a for pulses).
  std::vector<SourceSpec> sources() const;
};

/// Splits a key=value document. Throws ConfigError on malformed lines or
/// repeated keys.
KeyValues parse_key_values(const std::string& text);

/// Validated configuration with defaults filled in. Entries in `overrides`
/// replace those from `text`. Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text, const KeyValues& overrides = {});
RunConfig build_config(const KeyValues& kv);

}  // namespace ifm
