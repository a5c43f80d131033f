#include "casimir/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "casimir/constants.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "unknown"
#endif

namespace casimir {

namespace {

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isnan(*d)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

}  // namespace

const std::vector<std::string>& unit_suffixes() {
  static const std::vector<std::string> suffixes = {
      "_m", "_K", "_fN", "_N", "_J_m2", "_N_m2", "_rad_s", "_J_s_m2", "_count", "_rel", "_code", "_flag"};
  return suffixes;
}

bool has_unit_suffix(const std::string& column) {
  for (const auto& s : unit_suffixes()) {
    if (column.size() > s.size() && column.ends_with(s)) return true;
  }
  return false;
}

std::vector<std::string> output_preamble(const RunConfig& cfg) {
  std::vector<std::string> lines;
  lines.push_back(std::string("# casimir-neq ") + CASIMIR_VERSION);
  lines.push_back(std::string("# constants: ") + constants::codata_version);
  for (const auto& line : serialize_run_config(cfg)) {
    if (line.rfind("output.", 0) == 0) continue;
    lines.push_back("# config: " + line);
  }
  return lines;
}

void write_csv(std::ostream& out, const RunConfig& cfg, const SweepResult& result) {
  for (const auto& line : output_preamble(cfg)) out << line << '\n';
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    out << (i ? "," : "") << result.columns[i];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      out << (i ? "," : "") << format_cell(row.cells[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.cells.size() && i < result.columns.size(); ++i) {
      const auto& name = result.columns[i];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              obj[name] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json();
            } else {
              obj[name] = v;
            }
          },
          row.cells[i]);
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

void emit_output(const RunConfig& cfg, const SweepResult& result) {
  if (result.rows.empty()) throw std::runtime_error("no rows to emit");
  auto write = [&](std::ostream& out) {
    if (cfg.output_format == OutputFormat::Json) {
      write_json(out, result);
    } else {
      write_csv(out, cfg, result);
    }
  };
  if (cfg.output_path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + cfg.output_path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("write to '" + cfg.output_path + "' failed");
}

std::string gnuplot_stub(const RunConfig& cfg, const SweepResult& result,
                         const std::string& data_path) {
  const std::size_t n_sweeps = cfg.sweeps.size();
  std::ostringstream gp;
  gp << "# gnuplot script for " << data_path << "\n";
  gp << "set datafile separator ','\n";
  gp << "set datafile commentschars '#'\n";
  gp << "set key autotitle columnhead\n";
  if (n_sweeps == 0 || n_sweeps >= result.columns.size()) {
    gp << "plot '" << data_path << "' using 0:1 with linespoints\n";
    return gp.str();
  }
  const std::size_t x = n_sweeps;  // 1-based column of the innermost sweep
  const std::size_t y = n_sweeps + 1;
  gp << "set xlabel '" << result.columns[x - 1] << "'\n";
  gp << "set ylabel '" << result.columns[y - 1] << "'\n";
  if (n_sweeps >= 2) {
    // One curve per value of the outermost axis.
    const auto& outer = cfg.sweeps.front();
    gp << "plot ";
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const bool model = outer.parameter == "model";
      const std::string label = model ? to_string(outer.models[i]) : format_cell(outer.numbers[i]);
      const std::string test = model ? "strcol(1) eq '" + label + "'" : "$1==" + label;
      gp << (i ? ", \\\n     " : "") << "'" << data_path << "' using " << x << ":((" << test
         << ")?$" << y << ":1/0) with linespoints title '" << result.columns[0] << "=" << label
         << "'";
    }
    gp << "\n";
  } else {
    gp << "plot '" << data_path << "' using " << x << ":" << y << " with linespoints\n";
  }
  return gp.str();
}

}  // namespace casimir
