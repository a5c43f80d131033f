#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "casimir/output.hpp"
#include "casimir/run_config.hpp"
#include "casimir/sweep.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace casimir;
namespace fs = std::filesystem;

namespace {

std::string csv_text(const RunConfig& cfg, const SweepResult& r) {
  std::ostringstream out;
  write_csv(out, cfg, r);
  return out.str();
}

std::size_t column(const SweepResult& r, const std::string& name) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (r.columns[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

double number_at(const SweepResult& r, std::size_t row, const std::string& name) {
  return std::get<double>(r.rows[row].cells[column(r, name)]);
}

std::string error_of(std::string_view text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "casimir_neq_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CASIMIR_NEQ_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("figure presets") {
  const RunConfig f2 = parse_run_config("figure: fig2\n");
  CHECK(f2.mode == Mode::DeltaF);
  CHECK(f2.sphere_radius == 150e-6);
  CHECK(f2.overlayer_thickness == 100e-9);
  CHECK(f2.T2 == 300.0);
  CHECK(f2.model == ModelChoice::Drude);
  REQUIRE(f2.sweeps.size() == 2);
  CHECK(f2.sweeps[0].parameter == "T1");
  CHECK(f2.sweeps[0].numbers == std::vector<double>{300.0, 325.0, 350.0});
  CHECK(f2.sweeps[1].parameter == "separation");
  CHECK(f2.sweeps[1].numbers.front() == 200e-9);
  CHECK(f2.sweeps[1].numbers.back() == 1000e-9);

  const RunConfig f3 = parse_run_config("figure = fig3");
  CHECK(f3.model == ModelChoice::Plasma);
  CHECK(f3.sweeps == f2.sweeps);
  CHECK(preset_config("fig2") == f2);
  CHECK_THROWS_AS(preset_config("fig9"), ConfigError);
}

TEST_CASE("parse errors carry context") {
  const std::string empty = error_of("");
  CHECK(empty.find("mode") != std::string::npos);
  CHECK(empty.find("separation") != std::string::npos);
  CHECK(empty.find("T1") != std::string::npos);
  CHECK(empty.find("T2") != std::string::npos);

  const std::string unknown = error_of("mode = delta_f\ncolour = blue\n");
  CHECK(unknown.find("colour") != std::string::npos);
  CHECK(unknown.find("line 2") != std::string::npos);

  CHECK_FALSE(error_of("mode = equilibrium\nseparation = 2e-3\nT1 = 300\nT2 = 300\n").empty());
  CHECK_FALSE(error_of("mode = equilibrium\nseparation = 3e-7\nT1 = -5\nT2 = 300\n").empty());
  CHECK_FALSE(error_of("mode = spectral\nseparation = 3e-7\nT1 = 350\nT2 = 300\n").empty());
  CHECK_FALSE(error_of("mode = delta_f\nseparation = 3e-7\nT1 = 350\nT2 = 300\nmode = equilibrium\n").empty());
  CHECK_FALSE(error_of("mode = delta_f\nseparation = 3e-7\nT2 = 300\nsweep.T1 = 300,310\n"
                       "sweep.T2 = 300,310\nsweep.overlayer_thickness = 1e-7,2e-7\n"
                       "sweep.sphere_radius = 1e-4,2e-4\n")
                  .empty());
  CHECK_FALSE(error_of("mode = delta_f\nseparation = 3e-7\nT1 = 300\nT2 = 300\nsweep.colour = 1,2\n").empty());
  CHECK_FALSE(error_of("mode = delta_f\nseparation = 3e-7\nT1 = 300\nT2 = 300\nsweep.T1 = 300,310\n").empty());
  CHECK_FALSE(error_of("mode = delta_f\nseparation = 3e-7\nT1 = 300\nT2 = 300\nmodel = jellium\n").empty());
  CHECK_FALSE(error_of("mode = delta_f\nseparation = 3e-7\nT1 = 300\nT2 = 300\nneq.relative_tolerance = 0\n").empty());
}

TEST_CASE("sweep syntax") {
  const RunConfig cfg = parse_run_config(
      "# comment\nmode = delta_f\nT2 = 300\nsweep.T1 = 300, 325, 350\n"
      "sweep.separation = 200e-9:1000e-9:17\nsweep.model = drude, plasma\n");
  REQUIRE(cfg.sweeps.size() == 3);
  CHECK(cfg.sweeps[1].numbers.size() == 17);
  CHECK(cfg.sweeps[1].numbers.front() == 200e-9);
  CHECK(cfg.sweeps[1].numbers.back() == 1000e-9);
  CHECK(cfg.sweeps[1].numbers[2] == doctest::Approx(300e-9).epsilon(1e-14));
  CHECK(cfg.sweeps[2].models == std::vector<ModelChoice>{ModelChoice::Drude, ModelChoice::Plasma});
  CHECK(cfg.grid_size() == 3 * 17 * 2);

  // A scalar on top of a preset drops the inherited sweep.
  const RunConfig fixed = parse_run_config("figure = fig2\nseparation = 300e-9\n");
  REQUIRE(fixed.sweeps.size() == 1);
  CHECK(fixed.separation == 300e-9);
}

TEST_CASE("serialization round-trips through the preamble") {
  RunConfig cfg = parse_run_config(
      "mode = neq_potential\nseparation = 3.1e-7\nT2 = 300\nmodel = plasma\n"
      "neq.relative_tolerance = 2e-5\nmatsubara.max_terms = 900\nsweep.T1 = 300, 0.1, 1e4\n"
      "output.format = json\noutput.path = somewhere.json\n");
  const auto lines = serialize_run_config(cfg);
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  CHECK(parse_run_config(text) == cfg);

  const RunConfig fig = preset_config("fig2");
  std::string preamble;
  for (const auto& l : output_preamble(fig)) preamble += l + "\n";
  CHECK(preamble.find("# casimir-neq ") == 0);
  CHECK(preamble.find("CODATA 2018") != std::string::npos);
  CHECK(parse_config_preamble(preamble) == fig);

  // The destination is not recorded, so everything else must come back.
  RunConfig expected = cfg;
  expected.output_path.clear();
  expected.output_format = OutputFormat::Csv;
  std::string pre2;
  for (const auto& l : output_preamble(cfg)) pre2 += l + "\n";
  CHECK(parse_config_preamble(pre2) == expected);
}

TEST_CASE("every column carries a unit suffix") {
  for (const char* mode : {"delta_f", "equilibrium", "neq_potential", "spectral", "diagnostics"}) {
    const RunConfig cfg = parse_run_config(std::string("mode = ") + mode +
                                           "\nseparation = 3e-7\nT1 = 350\nT2 = 300\nomega = 2e12\n"
                                           "sweep.model = drude, plasma\n");
    const auto cols = result_columns(cfg);
    CHECK(cols.back() == "status_code");
    for (const auto& c : cols) {
      INFO(c);
      CHECK(has_unit_suffix(c));
    }
  }
  CHECK_FALSE(has_unit_suffix("delta_F"));
}

TEST_CASE("single point CSV and JSON") {
  RunConfig cfg = parse_run_config("mode = diagnostics\nseparation = 3e-7\nT1 = 300\nT2 = 300\n");
  const SweepResult r = run_sweep(cfg, 1);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.all_ok());
  CHECK(number_at(r, 0, "xi1_rad_s") == doctest::Approx(2.46e14).epsilon(0.01));

  const std::string csv = csv_text(cfg, r);
  std::istringstream in(csv);
  std::string line;
  int data_lines = 0, comment_lines = 0;
  while (std::getline(in, line)) (line.rfind("#", 0) == 0 ? comment_lines : data_lines)++;
  CHECK(data_lines == 2);
  CHECK(comment_lines >= 3);

  std::ostringstream js;
  write_json(js, r);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  for (const auto& c : r.columns) CHECK(doc[0].contains(c));
}

TEST_CASE("serial and parallel sweeps are byte identical") {
  const RunConfig cfg = parse_run_config(
      "mode = delta_f\nT2 = 300\nsweep.T1 = 300, 350\nsweep.separation = 250e-9:650e-9:3\n");
  const SweepResult serial = run_sweep(cfg, 1);
  const SweepResult parallel = run_sweep(cfg, 4);
  CHECK(serial.rows.size() == 6);
  CHECK(csv_text(cfg, serial) == csv_text(cfg, parallel));
  // Lexicographic order: T1 outermost.
  CHECK(number_at(serial, 0, "T1_K") == 300.0);
  CHECK(number_at(serial, 2, "T1_K") == 300.0);
  CHECK(number_at(serial, 3, "T1_K") == 350.0);
  CHECK(number_at(serial, 1, "separation_m") == doctest::Approx(450e-9));
  CHECK(number_at(serial, 4, "delta_F_fN") > number_at(serial, 1, "delta_F_fN"));
}

TEST_CASE("swapping temperatures negates the antisymmetric column") {
  const SweepResult fwd = run_sweep(
      parse_run_config("mode = neq_potential\nseparation = 4e-7\nT2 = 300\nsweep.T1 = 330, 350\n"), 2);
  const SweepResult rev = run_sweep(
      parse_run_config("mode = neq_potential\nseparation = 4e-7\nT1 = 300\nsweep.T2 = 330, 350\n"), 2);
  REQUIRE(fwd.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(number_at(fwd, i, "antisymmetric_part_N") == -number_at(rev, i, "antisymmetric_part_N"));
    CHECK(number_at(fwd, i, "antisymmetric_part_N") != 0.0);
  }
}

TEST_CASE("failed grid points are flagged and the run continues") {
  const RunConfig cfg = parse_run_config(
      "mode = neq_potential\nseparation = 3e-7\nT2 = 300\nneq.max_subdivisions = 1\n"
      "neq.relative_tolerance = 1e-13\nsweep.T1 = 300, 350\n");
  const SweepResult r = run_sweep(cfg, 1);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].ok);  // equal temperatures need no integration
  CHECK_FALSE(r.rows[1].ok);
  CHECK(std::get<std::string>(r.rows[1].cells.back()) == "convergence_error");
  CHECK(std::isnan(number_at(r, 1, "neq_total_J_m2")));
  CHECK_FALSE(r.all_ok());
}

TEST_CASE("command-line exit status") {
  const fs::path dir = scratch_dir();
  write_file(dir / "ok.cfg", "mode = diagnostics\nseparation = 3e-7\nT1 = 300\nT2 = 300\n");
  write_file(dir / "bad.cfg", "mode = diagnostics\nseparation = 3e-7\nT1 = 300\nT2 = 300\nwat = 1\n");
  write_file(dir / "partial.cfg",
             "mode = neq_potential\nseparation = 3e-7\nT1 = 350\nT2 = 300\nneq.max_subdivisions = 1\n"
             "neq.relative_tolerance = 1e-13\n");

  const fs::path out = dir / "ok.csv";
  fs::remove(out);
  CHECK(run_cli("run " + (dir / "ok.cfg").string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out));
  CHECK(run_cli("run " + (dir / "ok.cfg").string() + " --format json --out " +
                (dir / "ok.json").string()) == 0);
  const auto doc = nlohmann::json::parse(std::ifstream(dir / "ok.json"));
  CHECK(doc.size() == 1);

  CHECK(run_cli("run " + (dir / "bad.cfg").string()) == 1);
  CHECK(run_cli("run " + (dir / "missing.cfg").string()) == 1);
  CHECK(run_cli("run " + (dir / "partial.cfg").string()) == 2);
  CHECK(run_cli("run " + (dir / "ok.cfg").string() + " --out /nonexistent/dir/x.csv") == 1);
  CHECK(run_cli("config --preset fig3") == 0);
}
