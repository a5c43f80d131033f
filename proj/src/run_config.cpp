#include "casimir/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "casimir/materials.hpp"

namespace casimir {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& what) {
  throw ConfigError("line " + std::to_string(e.line) + ", key '" + key + "': " + what);
}

double parse_number(std::string_view text, const Entry& e, const std::string& key) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    fail(e, key, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, const Entry& e, const std::string& key) {
  text = trim(text);
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(e, key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::optional<Mode> mode_from(std::string_view s) {
  if (s == "delta_f") return Mode::DeltaF;
  if (s == "equilibrium") return Mode::Equilibrium;
  if (s == "neq_potential") return Mode::NeqPotential;
  if (s == "spectral") return Mode::Spectral;
  if (s == "diagnostics") return Mode::Diagnostics;
  return std::nullopt;
}

std::optional<ModelChoice> model_from(std::string_view s) {
  if (s == "drude") return ModelChoice::Drude;
  if (s == "plasma") return ModelChoice::Plasma;
  if (s == "tabulated") return ModelChoice::Tabulated;
  return std::nullopt;
}

const std::vector<std::string>& sweepable() {
  static const std::vector<std::string> names = {"separation",    "T1",     "T2",
                                                 "overlayer_thickness", "sphere_radius",
                                                 "omega",         "model"};
  return names;
}

SweepAxis parse_sweep(const std::string& parameter, const Entry& e, const std::string& key) {
  SweepAxis axis;
  axis.parameter = parameter;
  const std::string_view text = trim(e.value);
  if (text.empty()) fail(e, key, "empty sweep");
  if (parameter == "model") {
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto m = model_from(trim(item));
      if (!m) fail(e, key, "unknown model '" + std::string(trim(item)) + "'");
      axis.models.push_back(*m);
    }
    return axis;
  }
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) fail(e, key, "range sweep must be start:stop:count");
    const double lo = parse_number(parts[0], e, key);
    const double hi = parse_number(parts[1], e, key);
    const int count = parse_int(parts[2], e, key);
    if (count < 1) fail(e, key, "sweep count must be >= 1");
    if (count == 1 && lo != hi) fail(e, key, "a single-point range needs start == stop");
    for (int i = 0; i < count; ++i) {
      axis.numbers.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
    }
    return axis;
  }
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) axis.numbers.push_back(parse_number(item, e, key));
  return axis;
}

void check_range(double v, double lo, double hi, const std::string& name) {
  if (!(v > lo && v <= hi)) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside (" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

void check_parameter(const std::string& parameter, double v) {
  if (parameter == "separation") check_range(v, 0.0, 1e-3, "separation [m]");
  else if (parameter == "T1" || parameter == "T2") check_range(v, 0.0, 1e4, parameter + " [K]");
  else if (parameter == "overlayer_thickness") check_range(v, 0.0, 1e-3, "overlayer_thickness [m]");
  else if (parameter == "sphere_radius") check_range(v, 0.0, 1.0, "sphere_radius [m]");
  else if (parameter == "omega") check_range(v, 0.0, 1e20, "omega [rad/s]");
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::DeltaF: return "delta_f";
    case Mode::Equilibrium: return "equilibrium";
    case Mode::NeqPotential: return "neq_potential";
    case Mode::Spectral: return "spectral";
    case Mode::Diagnostics: return "diagnostics";
  }
  return "?";
}

const char* to_string(ModelChoice model) {
  switch (model) {
    case ModelChoice::Drude: return "drude";
    case ModelChoice::Plasma: return "plasma";
    case ModelChoice::Tabulated: return "tabulated";
  }
  return "?";
}

const char* to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

bool RunConfig::is_swept(std::string_view parameter) const {
  return std::any_of(sweeps.begin(), sweeps.end(),
                     [&](const SweepAxis& s) { return s.parameter == parameter; });
}

std::size_t RunConfig::grid_size() const {
  std::size_t n = 1;
  for (const auto& s : sweeps) n *= s.size();
  return n;
}

RunConfig preset_config(std::string_view name) {
  RunConfig cfg;
  if (name == "fig2") {
    cfg.model = ModelChoice::Drude;
  } else if (name == "fig3") {
    cfg.model = ModelChoice::Plasma;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2 or fig3)");
  }
  cfg.figure = std::string(name);
  cfg.mode = Mode::DeltaF;
  cfg.sphere_radius = 150e-6;
  cfg.overlayer_thickness = 100e-9;
  cfg.T2 = 300.0;
  SweepAxis t1{"T1", {300.0, 325.0, 350.0}, {}};
  SweepAxis sep{"separation", {}, {}};
  for (int i = 0; i < 17; ++i) sep.numbers.push_back(i == 16 ? 1000e-9 : 200e-9 + 50e-9 * i);
  cfg.sweeps = {t1, sep};
  return cfg;
}

RunConfig parse_run_config(std::string_view source, std::optional<RunConfig> base) {
  std::map<std::string, Entry> entries;
  std::vector<std::string> order;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const auto nl = source.find('\n', pos);
    std::string_view line = source.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string_view::npos) sep = line.find(':');
    if (sep == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, sep)));
    const std::string value(trim(line.substr(sep + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (entries.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    entries[key] = {value, line_no};
    order.push_back(key);
  }

  RunConfig cfg;
  if (auto it = entries.find("figure"); it != entries.end()) {
    try {
      cfg = preset_config(it->second.value);
    } catch (const ConfigError& err) {
      fail(it->second, "figure", err.what());
    }
  } else if (base) {
    cfg = *base;
  }

  using Setter = std::function<void(const Entry&, const std::string&)>;
  auto number = [](double& field) -> Setter {
    return [&field](const Entry& e, const std::string& k) { field = parse_number(e.value, e, k); };
  };
  auto optional_number = [](std::optional<double>& field) -> Setter {
    return [&field](const Entry& e, const std::string& k) { field = parse_number(e.value, e, k); };
  };
  auto integer = [](int& field) -> Setter {
    return [&field](const Entry& e, const std::string& k) { field = parse_int(e.value, e, k); };
  };
  auto text = [](std::string& field) -> Setter {
    return [&field](const Entry& e, const std::string&) { field = e.value; };
  };

  const std::map<std::string, Setter> setters = {
      {"figure", [](const Entry&, const std::string&) {}},
      {"mode",
       [&](const Entry& e, const std::string& k) {
         const auto m = mode_from(e.value);
         if (!m) fail(e, k, "unknown mode '" + e.value + "'");
         cfg.mode = m;
       }},
      {"sphere_radius", number(cfg.sphere_radius)},
      {"separation", optional_number(cfg.separation)},
      {"overlayer_thickness", number(cfg.overlayer_thickness)},
      {"T1", optional_number(cfg.T1)},
      {"T2", optional_number(cfg.T2)},
      {"omega", optional_number(cfg.omega)},
      {"model",
       [&](const Entry& e, const std::string& k) {
         const auto m = model_from(e.value);
         if (!m) fail(e, k, "unknown model '" + e.value + "'");
         cfg.model = *m;
       }},
      {"au_table", text(cfg.au_table)},
      {"si_table", text(cfg.si_table)},
      {"drude.plasma_frequency_eV", number(cfg.drude_plasma_frequency_eV)},
      {"drude.relaxation_rate_eV", number(cfg.drude_relaxation_rate_eV)},
      {"matsubara.relative_tolerance", number(cfg.matsubara.relative_tolerance)},
      {"matsubara.max_terms", integer(cfg.matsubara.max_terms)},
      {"matsubara.kperp_relative_tolerance", number(cfg.matsubara.kperp_relative_tolerance)},
      {"matsubara.kperp_max_subdivisions", integer(cfg.matsubara.kperp_max_subdivisions)},
      {"neq.relative_tolerance", number(cfg.neq.relative_tolerance)},
      {"neq.omega_window_factor", number(cfg.neq.omega_window_factor)},
      {"neq.eta_relative", number(cfg.neq.eta_relative)},
      {"neq.max_subdivisions", integer(cfg.neq.max_subdivisions)},
      {"neq.inner_max_subdivisions", integer(cfg.neq.inner_max_subdivisions)},
      {"output.path", text(cfg.output_path)},
      {"output.format",
       [&](const Entry& e, const std::string& k) {
         if (e.value == "csv") cfg.output_format = OutputFormat::Csv;
         else if (e.value == "json") cfg.output_format = OutputFormat::Json;
         else fail(e, k, "expected csv or json");
       }},
  };

  std::vector<std::string> user_sweeps;
  for (const auto& key : order) {
    const Entry& e = entries.at(key);
    if (key.rfind("sweep.", 0) == 0) {
      const std::string parameter = key.substr(6);
      const auto& names = sweepable();
      if (std::find(names.begin(), names.end(), parameter) == names.end()) {
        fail(e, key, "parameter cannot be swept");
      }
      if (entries.count(parameter)) fail(e, key, "parameter is both fixed and swept");
      SweepAxis axis = parse_sweep(parameter, e, key);
      auto existing = std::find_if(cfg.sweeps.begin(), cfg.sweeps.end(),
                                   [&](const SweepAxis& s) { return s.parameter == parameter; });
      if (existing != cfg.sweeps.end()) {
        *existing = std::move(axis);
      } else {
        cfg.sweeps.push_back(std::move(axis));
      }
      user_sweeps.push_back(parameter);
      continue;
    }
    const auto setter = setters.find(key);
    if (setter == setters.end()) fail(e, key, "unknown key");
    setter->second(e, key);
    // A fixed value replaces a swept one inherited from the preset.
    std::erase_if(cfg.sweeps, [&](const SweepAxis& s) { return s.parameter == key; });
  }

  validate_run_config(cfg);
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  std::vector<std::string> missing;
  if (!cfg.mode) missing.push_back("mode");
  auto need = [&](const std::optional<double>& field, const char* name) {
    if (!field && !cfg.is_swept(name)) missing.push_back(name);
  };
  need(cfg.separation, "separation");
  need(cfg.T1, "T1");
  need(cfg.T2, "T2");
  if (cfg.mode == Mode::Spectral) need(cfg.omega, "omega");
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("missing required field(s): " + list);
  }

  if (cfg.sweeps.size() > static_cast<std::size_t>(kMaxSweepAxes)) {
    throw ConfigError("at most " + std::to_string(kMaxSweepAxes) + " swept parameters per run");
  }
  for (std::size_t i = 0; i < cfg.sweeps.size(); ++i) {
    const auto& axis = cfg.sweeps[i];
    if (axis.size() == 0) throw ConfigError("sweep." + axis.parameter + " has no values");
    for (std::size_t j = 0; j < i; ++j) {
      if (cfg.sweeps[j].parameter == axis.parameter) {
        throw ConfigError("sweep." + axis.parameter + " given twice");
      }
    }
    for (double v : axis.numbers) check_parameter(axis.parameter, v);
  }

  check_parameter("sphere_radius", cfg.sphere_radius);
  check_parameter("overlayer_thickness", cfg.overlayer_thickness);
  if (cfg.separation) check_parameter("separation", *cfg.separation);
  if (cfg.T1) check_parameter("T1", *cfg.T1);
  if (cfg.T2) check_parameter("T2", *cfg.T2);
  if (cfg.omega) check_parameter("omega", *cfg.omega);
  if (!(cfg.drude_plasma_frequency_eV > 0.0)) {
    throw ConfigError("drude.plasma_frequency_eV must be positive");
  }
  if (!(cfg.drude_relaxation_rate_eV >= 0.0)) {
    throw ConfigError("drude.relaxation_rate_eV must be non-negative");
  }
  if (cfg.au_table.empty() || cfg.si_table.empty()) throw ConfigError("table paths must be non-empty");
  try {
    cfg.matsubara.validate();
    cfg.neq.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> serialize_run_config(const RunConfig& cfg) {
  std::vector<std::string> out;
  auto put = [&](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
  auto num = [&](const std::string& k, double v) { put(k, format_number(v)); };
  if (cfg.mode) put("mode", to_string(*cfg.mode));
  if (!cfg.figure.empty()) put("figure", cfg.figure);
  num("sphere_radius", cfg.sphere_radius);
  if (cfg.separation) num("separation", *cfg.separation);
  num("overlayer_thickness", cfg.overlayer_thickness);
  if (cfg.T1) num("T1", *cfg.T1);
  if (cfg.T2) num("T2", *cfg.T2);
  if (cfg.omega) num("omega", *cfg.omega);
  put("model", to_string(cfg.model));
  put("au_table", cfg.au_table);
  put("si_table", cfg.si_table);
  num("drude.plasma_frequency_eV", cfg.drude_plasma_frequency_eV);
  num("drude.relaxation_rate_eV", cfg.drude_relaxation_rate_eV);
  num("matsubara.relative_tolerance", cfg.matsubara.relative_tolerance);
  put("matsubara.max_terms", std::to_string(cfg.matsubara.max_terms));
  num("matsubara.kperp_relative_tolerance", cfg.matsubara.kperp_relative_tolerance);
  put("matsubara.kperp_max_subdivisions", std::to_string(cfg.matsubara.kperp_max_subdivisions));
  num("neq.relative_tolerance", cfg.neq.relative_tolerance);
  num("neq.omega_window_factor", cfg.neq.omega_window_factor);
  num("neq.eta_relative", cfg.neq.eta_relative);
  put("neq.max_subdivisions", std::to_string(cfg.neq.max_subdivisions));
  put("neq.inner_max_subdivisions", std::to_string(cfg.neq.inner_max_subdivisions));
  if (!cfg.output_path.empty()) put("output.path", cfg.output_path);
  put("output.format", to_string(cfg.output_format));
  for (const auto& axis : cfg.sweeps) {
    std::string list;
    if (axis.parameter == "model") {
      for (auto m : axis.models) list += (list.empty() ? "" : ", ") + std::string(to_string(m));
    } else {
      for (double v : axis.numbers) list += (list.empty() ? "" : ", ") + format_number(v);
    }
    put("sweep." + axis.parameter, list);
  }
  return out;
}

RunConfig parse_config_preamble(std::string_view output_text) {
  static constexpr std::string_view kPrefix = "# config: ";
  std::string body;
  std::size_t pos = 0;
  while (pos < output_text.size()) {
    const auto nl = output_text.find('\n', pos);
    const auto line = output_text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? output_text.size() : nl + 1;
    if (line.rfind(kPrefix, 0) == 0) {
      body += line.substr(kPrefix.size());
      body += '\n';
    }
  }
  if (body.empty()) throw ConfigError("no '# config:' preamble found");
  return parse_run_config(body);
}

std::string resolve_data_path(const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  return (std::filesystem::path(data_directory()) / name).string();
}

}  // namespace casimir
