// udw_entangle: parameter scans for a moving detector in a thermal bath.
//
//   udw_entangle concurrence --config fig1c.cfg
//   udw_entangle coeffs --beta-omega 0.5,5 --velocity 0,0.1,0.5,0.9
//   udw_entangle death-time --coupling td --beta-omega 0.5,1,5 --velocity 0,0.5,0.9 --oracle
//   udw_entangle wightman --beta-omega 2 --velocity 0.3 --s=-3:3:61 --format json
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "udw/scan.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct Flags {
  std::string config_path;
  std::vector<std::pair<CLI::Option*, std::string>> bound;
  std::string values[12];
  bool oracle = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "key = value configuration file");
  struct Spec {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const Spec specs[] = {
      {"--coupling", "coupling", "udw or td"},
      {"--beta-omega", "beta_omega", "comma-separated list of beta*omega (inf allowed)"},
      {"--velocity", "velocity", "comma-separated list of speeds in [0, v_max]"},
      {"--tau", "tau", "START:STOP:STEPS in units of 1/Gamma_0"},
      {"--output", "output", "output path (default: standard output)"},
      {"--format", "format", "csv or json"},
      {"--delta-omega", "delta_omega", "frequency shift added to omega"},
      {"--lambda", "lambda", "coupling strength"},
      {"--omega", "omega", "detector gap"},
      {"--v-max", "v_max", "largest accepted speed"},
      {"--s", "s", "START:STOP:STEPS proper-time separations (wightman)"},
      {"--epsilon", "epsilon", "i*epsilon regulator (wightman; default 1e-3 beta)"},
  };
  int i = 0;
  for (const Spec& s : specs) {
    CLI::Option* opt = sub->add_option(s.flag, f.values[i], s.help)->allow_extra_args(false);
    f.bound.emplace_back(opt, s.key);
    ++i;
  }
  sub->add_flag("--oracle", f.oracle, "append brute-force oracle columns");
}

udw::scan::ScanConfig build_config(const Flags& f) {
  udw::scan::ScanConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw udw::scan::ConfigError("config", "cannot read '" + f.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    cfg = udw::scan::parse_config(text.str());
  }
  for (std::size_t i = 0; i < f.bound.size(); ++i) {
    if (f.bound[i].first->count() > 0) udw::scan::apply_setting(cfg, f.bound[i].second, f.values[i]);
  }
  if (f.oracle) cfg.oracle = true;
  udw::scan::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of a moving two-level atom in a thermal scalar field"};
  app.require_subcommand(1);

  using Scan = udw::scan::Table (*)(const udw::scan::ScanConfig&);
  const std::pair<const char*, Scan> commands[] = {
      {"concurrence", udw::scan::concurrence_scan},
      {"coeffs", udw::scan::coefficients_scan},
      {"death-time", udw::scan::death_time_scan},
      {"wightman", udw::scan::wightman_scan},
  };
  const char* help[] = {
      "concurrence of the shared state against tau*Gamma_0",
      "mode numbers N and decay rates against velocity",
      "sudden-death time in units of 1/Gamma_0",
      "Wightman function along the worldline",
  };
  Flags flags[4];
  CLI::App* subs[4];
  for (int i = 0; i < 4; ++i) {
    subs[i] = app.add_subcommand(commands[i].first, help[i]);
    add_common(subs[i], flags[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  int which = 0;
  while (!subs[which]->parsed()) ++which;

  udw::scan::ScanConfig cfg;
  try {
    cfg = build_config(flags[which]);
  } catch (const udw::scan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }

  udw::scan::Table table;
  try {
    table = commands[which].second(cfg);
  } catch (const udw::scan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }

  std::ostringstream out;
  udw::scan::write_table(table, cfg.format, out);
  if (cfg.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file || !(file << out.str()) || !file.flush()) {
      std::cerr << "config error: output: cannot write '" << cfg.output << "'\n";
      return exit_config;
    }
  }
  return 0;
}
