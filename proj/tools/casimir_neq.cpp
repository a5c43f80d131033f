// casimir-neq: sweeps of the sphere/plate thermal Casimir signal.
//
//   casimir-neq run [CONFIG] [--preset fig2|fig3] [--workers N] [--out PATH]
//                   [--format csv|json] [--gnuplot SCRIPT]
//   casimir-neq config [CONFIG] [--preset fig2|fig3]
//
// Exit status: 0 success, 1 configuration error, 2 some grid points failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "casimir/output.hpp"
#include "casimir/run_config.hpp"
#include "casimir/sweep.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

casimir::RunConfig load_config(const std::string& path, const std::string& preset) {
  std::optional<casimir::RunConfig> base;
  if (!preset.empty()) base = casimir::preset_config(preset);
  if (path.empty()) {
    if (!base) throw casimir::ConfigError("no config file or --preset given");
    casimir::validate_run_config(*base);
    return *base;
  }
  std::ifstream in(path);
  if (!in) throw casimir::ConfigError("cannot read config file '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  try {
    return casimir::parse_run_config(text.str(), base);
  } catch (const casimir::ConfigError& e) {
    throw casimir::ConfigError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-equilibrium Casimir force sweeps for a sphere above an Au/Si plate"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  int workers = 0;
  std::string out_path;
  std::string format;
  std::string gnuplot_path;

  auto* run = app.add_subcommand("run", "evaluate a configuration and write CSV/JSON");
  run->add_option("config", config_path, "configuration file");
  run->add_option("--preset", preset, "figure preset")->check(CLI::IsMember({"fig2", "fig3"}));
  run->add_option("--workers", workers, "worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--out", out_path, "output file (default: stdout)");
  run->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--gnuplot", gnuplot_path, "also write a gnuplot script stub");

  auto* show = app.add_subcommand("config", "print the resolved configuration");
  show->add_option("config", config_path, "configuration file");
  show->add_option("--preset", preset, "figure preset")->check(CLI::IsMember({"fig2", "fig3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  casimir::RunConfig cfg;
  try {
    cfg = load_config(config_path, preset);
    if (!out_path.empty()) cfg.output_path = out_path;
    if (format == "csv") cfg.output_format = casimir::OutputFormat::Csv;
    if (format == "json") cfg.output_format = casimir::OutputFormat::Json;
  } catch (const casimir::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (show->parsed()) {
    for (const auto& line : casimir::serialize_run_config(cfg)) std::cout << line << '\n';
    return 0;
  }

  casimir::SweepResult result;
  try {
    result = casimir::run_sweep(cfg, workers);
  } catch (const casimir::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    casimir::emit_output(cfg, result);
    if (!gnuplot_path.empty()) {
      std::ofstream gp(gnuplot_path);
      if (!gp) throw std::runtime_error("cannot open '" + gnuplot_path + "' for writing");
      gp << casimir::gnuplot_stub(cfg, result,
                                  cfg.output_path.empty() ? "data.csv" : cfg.output_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitConfig;
  }

  int failed = 0;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!result.rows[i].ok) {
      ++failed;
      std::cerr << "row " << i << ": " << result.rows[i].error << '\n';
    }
  }
  if (failed > 0) {
    std::cerr << failed << " of " << result.rows.size() << " grid points failed\n";
    return kExitPartial;
  }
  return 0;
}
