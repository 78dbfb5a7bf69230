#include "ifm/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "ifm/errors.hpp"
#include "ifm/ftir.hpp"
#include "ifm/photon.hpp"
#include "ifm/resonator.hpp"
#include "ifm/transient.hpp"

namespace ifm {

namespace {

std::string num(double v) { return format_number(v); }

std::string source_label(const SourceSpec& s) {
  return s.is_pulse() ? "pulse a=" + num(*s.a) : std::string("cw");
}

void report_header(std::ostringstream& rep, const RunConfig& cfg) {
  rep << "command: " << command_name(cfg.command) << '\n';
  if (cfg.command != Command::reflectivity && cfg.command != Command::match_gap) {
    rep << "R: " << num(cfg.R);
    if (cfg.R_from_gap) rep << " (from gap " << num(*cfg.gap_m) << " m)";
    rep << '\n';
  }
}

CommandResult run_reflectivity(const RunConfig& cfg, std::ostringstream& rep) {
  CsvTable t{{"gap_m", "r", "delta", "R"}, {}};
  for (int k = 0; k < cfg.sweep_points; ++k) {
    const double x = cfg.sweep_x_max * k / (cfg.sweep_points - 1);
    const auto c = complex_reflection(x, cfg.coupler);
    t.add_row({num(x), num(c.r), num(c.delta), num(c.r * c.r)});
  }
  rep << "evanescent b: " << num(evanescent_b(cfg.coupler)) << " 1/m\n"
      << "r(0): " << num(complex_reflection(0.0, cfg.coupler).r) << '\n'
      << "r(x_max): " << num(complex_reflection(cfg.sweep_x_max, cfg.coupler).r) << '\n';
  return {{{"", std::move(t)}}, {}, {}};
}

CommandResult run_match_gap(const RunConfig& cfg, std::ostringstream& rep) {
  CsvTable t{{"alpha", "gap_m", "r", "R"}, {}};
  for (double alpha : cfg.alphas) {
    const double x = match_gap(alpha, cfg.coupler);
    const double r = complex_reflection(x, cfg.coupler).r;
    t.add_row({num(alpha), num(x), num(r), num(r * r)});
    rep << "alpha " << num(alpha) << ": x_m = " << num(x) << " m, |r - e^-alpha| = "
        << num(std::abs(r - std::exp(-alpha))) << '\n';
  }
  rep << "tolerance: |r(x_m) - e^-alpha| < 1e-10\n";
  return {{{"", std::move(t)}}, {}, {}};
}

CommandResult run_eta_curve(const RunConfig& cfg, std::ostringstream& rep) {
  CommandResult res;
  const auto sources = cfg.sources();
  for (const auto& src : sources) {
    const EtaCurve curve = eta_curve(cfg.R, cfg.n_max, src);
    CsvTable t{{"n", "eta"}, {}};
    for (std::size_t k = 0; k < curve.n_values.size(); ++k)
      t.add_row({std::to_string(curve.n_values[k]), num(curve.eta_values[k])});
    rep << source_label(src) << ": eta(" << cfg.n_max << ") = " << num(curve.eta_values.back());
    if (src.is_pulse()) {
      const auto grid = make_grid(*src.a, cfg.grid_points, cfg.grid_span_sigmas);
      rep << ", eta_limit = " << num(eta_limit(cfg.R, src, grid));
    } else {
      rep << ", closed form R^(2n+1) = " << num(std::pow(cfg.R, 2.0 * cfg.n_max + 1));
    }
    rep << '\n';
    const std::string tag = sources.size() > 1 ? "a" + num(*src.a) : "";
    res.tables.push_back({tag, std::move(t)});
  }
  return res;
}

CommandResult run_eta_limit(const RunConfig& cfg, std::ostringstream& rep) {
  CsvTable t{{"a", "eta_limit"}, {}};
  for (const auto& src : cfg.sources()) {
    if (!src.is_pulse()) {
      t.add_row({"cw", num(eta_limit(cfg.R, src))});
      continue;
    }
    const auto grid = make_grid(*src.a, cfg.grid_points, cfg.grid_span_sigmas);
    const double lim = eta_limit(cfg.R, src, grid);
    t.add_row({num(*src.a), num(lim)});
    rep << "a " << num(*src.a) << ": eta_limit = " << num(lim)
        << " (small-angle closed form " << num(eta_limit_small_angle(cfg.R, *src.a)) << ")\n";
  }
  rep << "grid: " << cfg.grid_points << " points, +-" << num(cfg.grid_span_sigmas)
      << " sigma; tolerance: refinement change < 1e-8\n";
  return {{{"", std::move(t)}}, {}, {}};
}

CommandResult run_spectrum(const RunConfig& cfg, std::ostringstream& rep) {
  CsvTable t{{"u", "ratio"}, {}};
  const int n = cfg.spectrum_points;
  for (int k = 0; k < n; ++k) {
    const double u = -cfg.spectrum_u_max + 2 * cfg.spectrum_u_max * k / (n - 1);
    t.add_row({num(u), num(asymptotic_spectral_ratio(cfg.R, u))});
  }
  rep << "ratio(0) = " << num(asymptotic_spectral_ratio(cfg.R, 0.0)) << ", ratio(pi) = "
      << num(asymptotic_spectral_ratio(cfg.R, std::numbers::pi)) << '\n';
  return {{{"", std::move(t)}}, {}, {}};
}

CommandResult run_outcomes(const RunConfig& cfg, std::ostringstream& rep) {
  CommandResult res;
  const auto exact = exact_distribution(cfg.R, cfg.bomb);
  const auto expected = thinned(exact, cfg.efficiency);
  rep << "object present: " << (cfg.bomb ? "yes" : "no") << '\n'
      << "exact: p_dr=" << num(exact.p_dr) << " p_explode=" << num(exact.p_explode)
      << " p_dt=" << num(exact.p_dt) << " p_lost=" << num(exact.p_lost) << '\n'
      << "detector efficiency: " << num(cfg.efficiency) << '\n';
  const auto merit = ifm_merit(cfg.R);
  rep << "merit: detection " << num(merit.detection_probability) << ", safe fraction "
      << num(merit.safe_fraction) << '\n';

  std::optional<TrialRun> run;
  if (cfg.trials > 0) {
    run = simulate_trials(cfg.R, cfg.bomb, cfg.trials, cfg.efficiency, cfg.seed, cfg.workers);
    rep << "trials: " << cfg.trials << ", seed " << cfg.seed << "; tolerance: 4 sigma binomial\n";
  }
  CsvTable t{{"outcome", "probability", "empirical"}, {}};
  for (Outcome o : {Outcome::DR, Outcome::DT, Outcome::EXPLODE, Outcome::LOST}) {
    t.add_row({std::string(outcome_name(o)), num(expected.probability(o)),
               run ? num(run->empirical.probability(o)) : std::string()});
  }
  res.tables.push_back({"", std::move(t)});
  if (run && cfg.trials_output) {
    res.trial_records.header = {"trial_id", "outcome", "detected"};
    res.trial_records.rows.reserve(run->records.size());
    for (const auto& r : run->records)
      res.trial_records.rows.push_back(
          {std::to_string(r.trial_id), std::string(outcome_name(r.outcome)), r.detected ? "1" : "0"});
  }
  return res;
}

CommandResult run_transient(const RunConfig& cfg, std::ostringstream& rep) {
  if (cfg.transient_mode == TransientMode::buildup) {
    const EtaCurve curve = build_up_curve(cfg.R, cfg.n_max);
    CsvTable t{{"n", "eta"}, {}};
    for (std::size_t k = 0; k < curve.n_values.size(); ++k)
      t.add_row({std::to_string(curve.n_values[k]), num(curve.eta_values[k])});
    const int rounds = rounds_to_threshold(cfg.R, cfg.epsilon);
    rep << "rounds to eta <= " << num(cfg.epsilon) << ": " << rounds << '\n';
    if (rounds > 0)
      rep << "build-up in " << num(cfg.buildup_ns) << " ns implies round-trip time "
          << num(implied_round_trip_time_ns(cfg.R, cfg.epsilon, cfg.buildup_ns) * 1e3) << " ps\n";
    return {{{"", std::move(t)}}, {}, {}};
  }

  const auto timelines = run_switch_experiment(cfg.scenario, cfg.R, cfg.seed);
  std::vector<const ClickEvent*> events;
  for (const auto& tl : timelines)
    for (const auto& e : tl.events) events.push_back(&e);
  std::stable_sort(events.begin(), events.end(),
                   [](const ClickEvent* a, const ClickEvent* b) { return a->time_ns < b->time_ns; });
  CsvTable t{{"time_ns", "detector", "hypothesis"}, {}};
  for (const auto* e : events) t.add_row({num(e->time_ns), std::string(detector_name(e->detector)), e->hypothesis});

  double last_on = -1.0;
  for (const auto& tr : cfg.scenario.schedule)
    if (tr.blocked) last_on = tr.time_ns;
  for (const auto& tl : timelines) {
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& e : tl.events) ++counts[static_cast<int>(e.detector)];
    rep << tl.hypothesis << ": DR " << counts[0] << ", DT " << counts[1] << ", DP " << counts[2];
    if (last_on >= 0.0) {
      if (const auto first = first_click(tl, Detector::DR, last_on))
        rep << ", first DR after switch-on at +" << num(*first - last_on) << " ns";
    }
    rep << '\n';
  }
  rep << "seed: " << cfg.seed << '\n';
  return {{{"", std::move(t)}}, {}, {}};
}

}  // namespace

std::string tagged_path(const std::string& path, const std::string& tag) {
  if (tag.empty()) return path;
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string())).string();
}

CommandResult run_command(const RunConfig& cfg) {
  std::ostringstream rep;
  report_header(rep, cfg);
  CommandResult res;
  switch (cfg.command) {
    case Command::reflectivity: res = run_reflectivity(cfg, rep); break;
    case Command::match_gap: res = run_match_gap(cfg, rep); break;
    case Command::eta_curve: res = run_eta_curve(cfg, rep); break;
    case Command::eta_limit: res = run_eta_limit(cfg, rep); break;
    case Command::spectrum: res = run_spectrum(cfg, rep); break;
    case Command::outcomes: res = run_outcomes(cfg, rep); break;
    case Command::transient: res = run_transient(cfg, rep); break;
  }
  res.report = rep.str();
  return res;
}

void write_outputs(const RunConfig& cfg, const CommandResult& result, std::ostream& out,
                   std::ostream& err) {
  if (cfg.output) {
    for (const auto& t : result.tables) emit_csv(t.table, tagged_path(*cfg.output, t.tag));
    out << result.report;
  } else {
    for (const auto& t : result.tables) write_csv(out, t.table);
    err << result.report;
  }
  if (cfg.trials_output && !result.trial_records.header.empty())
    emit_csv(result.trial_records, *cfg.trials_output);
  if (cfg.report) {
    std::ofstream os(*cfg.report, std::ios::binary | std::ios::trunc);
    os << result.report;
    if (!os) throw IoError("write failed: " + *cfg.report);
  }
}

int run_cli(const KeyValues& kv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = build_config(kv);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  try {
    write_outputs(cfg, run_command(cfg), out, err);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace ifm
