#pragma once

// Declarative run configuration: flat `key = value` text (or `key: value`),
// `#` comments, and `sweep.<param> = start:stop:count` or `a, b, c` sweeps.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/noneq.hpp"

namespace casimir {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { DeltaF, Equilibrium, NeqPotential, Spectral, Diagnostics };
enum class ModelChoice { Drude, Plasma, Tabulated };
enum class OutputFormat { Csv, Json };

const char* to_string(Mode mode);
const char* to_string(ModelChoice model);
const char* to_string(OutputFormat format);

struct SweepAxis {
  std::string parameter;  // separation, T1, T2, overlayer_thickness, sphere_radius, omega, model
  std::vector<double> numbers;      // numeric parameters
  std::vector<ModelChoice> models;  // parameter == "model"

  std::size_t size() const { return parameter == "model" ? models.size() : numbers.size(); }
  bool operator==(const SweepAxis&) const = default;
};

struct RunConfig {
  std::optional<Mode> mode;
  std::string figure;  // preset name the config was built from, informational

  double sphere_radius = 150e-6;       // m
  std::optional<double> separation;    // m
  double overlayer_thickness = 100e-9;  // m
  std::optional<double> T1;            // K
  std::optional<double> T2;            // K
  std::optional<double> omega;         // rad/s, spectral mode

  ModelChoice model = ModelChoice::Drude;
  std::string au_table = "au_synthetic.txt";  // bare names resolve in the data directory
  std::string si_table = "si_synthetic.txt";
  double drude_plasma_frequency_eV = 8.9;
  double drude_relaxation_rate_eV = 0.035;

  MatsubaraSpec matsubara;
  NeqQuadratureSpec neq;

  std::string output_path;  // empty: stdout
  OutputFormat output_format = OutputFormat::Csv;

  std::vector<SweepAxis> sweeps;  // first axis outermost

  bool is_swept(std::string_view parameter) const;
  std::size_t grid_size() const;
  bool operator==(const RunConfig&) const = default;
};

inline constexpr int kMaxSweepAxes = 3;

// Built-in figure configurations ("fig2" Drude, "fig3" plasma).
RunConfig preset_config(std::string_view name);

// Parses and validates. Keys are applied on top of `base` (a preset), and a
// `figure` key in the text selects a preset base itself.
RunConfig parse_run_config(std::string_view source, std::optional<RunConfig> base = std::nullopt);

// Checks ranges and required fields; throws ConfigError.
void validate_run_config(const RunConfig& cfg);

// One `key = value` line per field, parseable by parse_run_config.
std::vector<std::string> serialize_run_config(const RunConfig& cfg);

// Recovers the config from an output file's `# config:` preamble lines.
RunConfig parse_config_preamble(std::string_view output_text);

std::string resolve_data_path(const std::string& name);

}  // namespace casimir
