#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifm/config.hpp"
#include "ifm/csv.hpp"

namespace ifm {

struct CommandOutput {
  std::string tag;  // empty for the primary table, "a100" etc. for per-source tables
  CsvTable table;
};

struct CommandResult {
  std::vector<CommandOutput> tables;
  CsvTable trial_records;  // filled by `outcomes` when trials_output is set
  std::string report;
};

/// Runs one validated configuration. Pure apart from worker threads; throws
/// NumericalError or NoSolutionError on numerical failure.
CommandResult run_command(const RunConfig& cfg);

/// Writes tables and report. With no output path the single table goes to
/// `out` and the report to `err`; otherwise tables go to files and the report
/// to `out` (and to cfg.report when given). Throws IoError.
void write_outputs(const RunConfig& cfg, const CommandResult& result, std::ostream& out,
                   std::ostream& err);

/// Path for a tagged table: "curve.csv" + "a100" -> "curve_a100.csv".
std::string tagged_path(const std::string& path, const std::string& tag);

/// Full CLI behaviour for an already merged key set; returns the exit code
/// (0 ok, 2 config, 3 numerical, 4 I/O).
int run_cli(const KeyValues& kv, std::ostream& out, std::ostream& err);

}  // namespace ifm
