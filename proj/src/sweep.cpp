#include "casimir/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
  double sphere_radius = 0.0;
  double separation = 0.0;
  double overlayer_thickness = 0.0;
  double T1 = 0.0;
  double T2 = 0.0;
  double omega = 0.0;
  ModelChoice model = ModelChoice::Drude;
};

const char* column_for(const std::string& parameter) {
  if (parameter == "separation") return "separation_m";
  if (parameter == "T1") return "T1_K";
  if (parameter == "T2") return "T2_K";
  if (parameter == "overlayer_thickness") return "overlayer_thickness_m";
  if (parameter == "sphere_radius") return "sphere_radius_m";
  if (parameter == "omega") return "omega_rad_s";
  return "model_code";
}

std::vector<std::string> mode_columns(Mode mode) {
  switch (mode) {
    case Mode::DeltaF:
      return {"delta_F_fN",         "F_over_Au_fN",         "F_over_Si_fN",
              "equilibrium_part_fN", "antisymmetric_part_fN", "residual_fN",
              "matsubara_terms_count", "neq_subdivisions_count", "neq_error_rel"};
    case Mode::Equilibrium:
      return {"free_energy_au_J_m2", "free_energy_si_J_m2", "pressure_au_N_m2",
              "pressure_si_N_m2",    "force_au_N",          "force_si_N",
              "matsubara_terms_count"};
    case Mode::NeqPotential:
      return {"neq_prop_te_J_m2",  "neq_prop_tm_J_m2",      "neq_evan_te_J_m2",
              "neq_evan_tm_J_m2",  "neq_total_J_m2",        "total_potential_J_m2",
              "antisymmetric_part_N", "neq_subdivisions_count", "neq_error_rel"};
    case Mode::Spectral:
      return {"density_prop_te_J_s_m2", "density_prop_tm_J_s_m2", "density_evan_te_J_s_m2",
              "density_evan_tm_J_s_m2", "density_total_J_s_m2"};
    case Mode::Diagnostics:
      return {"omega_c_rad_s",   "omega_T_rad_s",       "delta_0_m",
              "delta_T_m",       "lower_margin_rel",    "upper_margin_rel",
              "filter_window_flag", "thermal_wavelength_m", "xi1_rad_s",
              "pfa_ratio_rel",   "pfa_ok_flag"};
  }
  return {};
}

Point point_at(const RunConfig& cfg, std::size_t index) {
  Point p;
  p.sphere_radius = cfg.sphere_radius;
  p.separation = cfg.separation.value_or(0.0);
  p.overlayer_thickness = cfg.overlayer_thickness;
  p.T1 = cfg.T1.value_or(0.0);
  p.T2 = cfg.T2.value_or(0.0);
  p.omega = cfg.omega.value_or(0.0);
  p.model = cfg.model;
  // Mixed radix, last axis fastest.
  for (std::size_t k = cfg.sweeps.size(); k-- > 0;) {
    const auto& axis = cfg.sweeps[k];
    const std::size_t n = axis.size();
    const std::size_t i = index % n;
    index /= n;
    const std::string& name = axis.parameter;
    if (name == "model") {
      p.model = axis.models[i];
      continue;
    }
    const double v = axis.numbers[i];
    if (name == "separation") p.separation = v;
    else if (name == "T1") p.T1 = v;
    else if (name == "T2") p.T2 = v;
    else if (name == "overlayer_thickness") p.overlayer_thickness = v;
    else if (name == "sphere_radius") p.sphere_radius = v;
    else if (name == "omega") p.omega = v;
  }
  return p;
}

std::vector<Cell> sweep_cells(const RunConfig& cfg, const Point& p) {
  std::vector<Cell> cells;
  for (const auto& axis : cfg.sweeps) {
    const std::string& n = axis.parameter;
    if (n == "model") cells.emplace_back(std::string(to_string(p.model)));
    else if (n == "separation") cells.emplace_back(p.separation);
    else if (n == "T1") cells.emplace_back(p.T1);
    else if (n == "T2") cells.emplace_back(p.T2);
    else if (n == "overlayer_thickness") cells.emplace_back(p.overlayer_thickness);
    else if (n == "sphere_radius") cells.emplace_back(p.sphere_radius);
    else if (n == "omega") cells.emplace_back(p.omega);
  }
  return cells;
}

double relative(double error, double value) {
  return value == 0.0 ? 0.0 : error / std::abs(value);
}

std::vector<Cell> evaluate(const RunConfig& cfg, const MaterialSet& materials, const Point& p,
                           bool concurrent_sectors) {
  ApparatusConfig app = ApparatusConfig::with_materials(materials.gold(p.model), materials.silicon);
  app.sphere_radius = p.sphere_radius;
  app.separation = p.separation;
  app.overlayer_thickness = p.overlayer_thickness;
  app.temps = {p.T1, p.T2};
  ApparatusSpecs specs{cfg.matsubara, cfg.neq, concurrent_sectors};

  const double fN = 1e15;
  switch (*cfg.mode) {
    case Mode::DeltaF: {
      const DeltaFResult r = delta_F(app, specs);
      return {r.delta_F * fN,
              r.F_over_Au * fN,
              r.F_over_Si * fN,
              r.equilibrium_part * fN,
              r.antisymmetric_part * fN,
              r.residual * fN,
              static_cast<long long>(r.matsubara_terms),
              static_cast<long long>(r.neq_subdivisions),
              relative(r.neq_si.error_estimate, r.neq_si.total)};
    }
    case Mode::Equilibrium: {
      const EquilibriumConfig au{app.au_plate(), app.sphere(), p.separation, p.T1};
      const EquilibriumConfig si{app.si_plate(), app.sphere(), p.separation, p.T1};
      const MatsubaraSum f_au = free_energy_per_area(au, cfg.matsubara);
      const MatsubaraSum f_si = free_energy_per_area(si, cfg.matsubara);
      const MatsubaraSum p_au = pressure_per_area(au, cfg.matsubara);
      const MatsubaraSum p_si = pressure_per_area(si, cfg.matsubara);
      return {f_au.value,
              f_si.value,
              p_au.value,
              p_si.value,
              pfa_force(p.sphere_radius, f_au.value),
              pfa_force(p.sphere_radius, f_si.value),
              static_cast<long long>(f_au.terms + f_si.terms + p_au.terms + p_si.terms)};
    }
    case Mode::NeqPotential: {
      const ThermalPair temps{p.T1, p.T2};
      const NeqBreakdown si = neq_antisymmetric_potential(app.si_plate(), app.sphere(),
                                                          p.separation, temps, cfg.neq);
      const NeqBreakdown au = neq_antisymmetric_potential(app.au_plate(), app.sphere(),
                                                          p.separation, temps, cfg.neq);
      const double f1 =
          free_energy_per_area({app.si_plate(), app.sphere(), p.separation, p.T1}, cfg.matsubara)
              .value;
      const double f2 =
          p.T1 == p.T2 ? f1
                       : free_energy_per_area({app.si_plate(), app.sphere(), p.separation, p.T2},
                                              cfg.matsubara)
                             .value;
      return {si.propagating_te,
              si.propagating_tm,
              si.evanescent_te,
              si.evanescent_tm,
              si.total,
              0.5 * (f1 + f2) + si.total,
              pfa_force(p.sphere_radius, si.total - au.total),
              static_cast<long long>(si.subdivisions + au.subdivisions),
              relative(si.error_estimate, si.total)};
    }
    case Mode::Spectral: {
      const NeqSpectralDensity d = neq_spectral_density(app.si_plate(), app.sphere(), p.separation,
                                                        {p.T1, p.T2}, p.omega, cfg.neq);
      return {d.propagating_te, d.propagating_tm, d.evanescent_te, d.evanescent_tm, d.total};
    }
    case Mode::Diagnostics: {
      const FilterWindowReport w = filter_window_check(app);
      const double ratio = p.sphere_radius / p.separation;
      return {w.omega_c,
              w.omega_T,
              w.delta_0,
              w.delta_T,
              w.lower_margin,
              w.upper_margin,
              static_cast<long long>(w.satisfied ? 1 : 0),
              thermal_wavelength(std::max(p.T1, p.T2)),
              matsubara_frequency(std::max(p.T1, p.T2), 1),
              ratio,
              static_cast<long long>(ratio >= 100.0 ? 1 : 0)};
    }
  }
  return {};
}

std::vector<Cell> failed_cells(Mode mode) {
  std::vector<Cell> cells;
  for (const auto& name : mode_columns(mode)) {
    const bool integer = name.ends_with("_count") || name.ends_with("_flag");
    cells.emplace_back(integer ? Cell(-1LL) : Cell(kNaN));
  }
  return cells;
}

bool uses_tabulated_gold(const RunConfig& cfg) {
  if (cfg.model == ModelChoice::Tabulated && !cfg.is_swept("model")) return true;
  for (const auto& axis : cfg.sweeps) {
    for (auto m : axis.models) {
      if (m == ModelChoice::Tabulated) return true;
    }
  }
  return false;
}

}  // namespace

bool SweepResult::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepResultRow& r) { return r.ok; });
}

const DielectricModel& MaterialSet::gold(ModelChoice choice) const {
  switch (choice) {
    case ModelChoice::Drude: return drude_gold;
    case ModelChoice::Plasma: return plasma_gold;
    case ModelChoice::Tabulated: return tabulated_gold;
  }
  return drude_gold;
}

MaterialSet load_materials(const RunConfig& cfg) {
  MaterialSet set;
  try {
    const DrudeParams params{cfg.drude_plasma_frequency_eV * constants::ev_to_rad_s,
                             cfg.drude_relaxation_rate_eV * constants::ev_to_rad_s};
    set.drude_gold = DielectricModel::drude(params);
    set.plasma_gold = DielectricModel::plasma(params.plasma_frequency);
    set.silicon = DielectricModel::tabulated(std::make_shared<const OpticalTable>(
        load_optical_table(resolve_data_path(cfg.si_table), std::nullopt)));
    if (uses_tabulated_gold(cfg)) {
      set.tabulated_gold = DielectricModel::tabulated(std::make_shared<const OpticalTable>(
          load_optical_table(resolve_data_path(cfg.au_table), params)));
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return set;
}

std::vector<std::string> result_columns(const RunConfig& cfg) {
  std::vector<std::string> cols;
  for (const auto& axis : cfg.sweeps) cols.emplace_back(column_for(axis.parameter));
  for (auto& c : mode_columns(*cfg.mode)) cols.push_back(std::move(c));
  cols.emplace_back("status_code");
  return cols;
}

SweepResult run_sweep(const RunConfig& cfg, int workers) {
  validate_run_config(cfg);
  const MaterialSet materials = load_materials(cfg);

  SweepResult result;
  result.columns = result_columns(cfg);
  const std::size_t n = cfg.grid_size();
  result.rows.resize(n);

  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
  const bool concurrent_sectors = workers == 1;

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const Point p = point_at(cfg, i);
      SweepResultRow& row = result.rows[i];
      row.cells = sweep_cells(cfg, p);
      std::vector<Cell> values;
      std::string status = "ok";
      try {
        values = evaluate(cfg, materials, p, concurrent_sectors);
      } catch (const ConvergenceError& e) {
        status = "convergence_error";
        row.error = e.what();
      } catch (const DomainError& e) {
        status = "domain_error";
        row.error = e.what();
      } catch (const std::exception& e) {
        status = "error";
        row.error = e.what();
      }
      if (status != "ok") {
        row.ok = false;
        values = failed_cells(*cfg.mode);
      }
      for (auto& v : values) row.cells.push_back(std::move(v));
      row.cells.emplace_back(status);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return result;
}

}  // namespace casimir
