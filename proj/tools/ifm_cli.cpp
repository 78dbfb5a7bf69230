// Command-line front end. Keys come from an optional --config file, then
// --set KEY=VALUE entries in order, then the named flags; later sources win.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ifm/commands.hpp"
#include "ifm/config.hpp"
#include "ifm/errors.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> named;
};

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("-c,--config", flags.config_path, "key=value configuration file");
  cmd->add_option("--set", flags.sets, "override a key, KEY=VALUE (repeatable)");
  const std::pair<const char*, const char*> named[] = {
      {"-R", "R"},
      {"--gap", "gap_m"},
      {"--source", "source.kind"},
      {"-a", "source.a"},
      {"--n-max", "n_max"},
      {"--alpha", "alpha"},
      {"--trials", "trials"},
      {"--bomb", "bomb"},
      {"--efficiency", "efficiency"},
      {"--mode", "transient.mode"},
      {"-o,--output", "output"},
      {"--report", "report"},
      {"--seed", "seed"},
  };
  for (const auto& [flag, key] : named) {
    const std::string k = key;
    cmd->add_option_function<std::string>(
        flag, [&flags, k](const std::string& v) { flags.named[k] = v; }, "sets " + k);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interaction-free detection in a total-internal-reflection ring resonator"};
  app.require_subcommand(1);
  Flags flags;
  const char* commands[][2] = {
      {"reflectivity", "coupler reflection r e^{i delta} versus gap"},
      {"match-gap", "gap that impedance-matches a round-trip loss alpha"},
      {"eta-curve", "reflected energy ratio versus round-trip count"},
      {"eta-limit", "asymptotic reflected energy ratio for pulses"},
      {"spectrum", "asymptotic reflection ratio versus detuning"},
      {"outcomes", "single-photon outcome probabilities and Monte Carlo"},
      {"transient", "cavity build-up curve or Pockels switching run"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ifm::KeyValues kv;
  try {
    if (!flags.config_path.empty()) {
      std::ifstream in(flags.config_path);
      if (!in) {
        std::cerr << "I/O error: cannot read " << flags.config_path << '\n';
        return 4;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      kv = ifm::parse_key_values(ss.str());
    }
    for (const auto& s : flags.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ifm::ConfigError(s, "--set expects KEY=VALUE");
      kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
  } catch (const ifm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  for (const auto& [k, v] : flags.named) kv[k] = v;
  kv["command"] = app.get_subcommands().front()->get_name();
  if (kv.contains("source") && kv.contains("source.kind")) kv.erase("source");

  return ifm::run_cli(kv, std::cout, std::cerr);
}
