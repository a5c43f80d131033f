#include "casimir/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

using constants::pi;

ApparatusConfig ApparatusConfig::with_materials(const DielectricModel& gold,
                                                const DielectricModel& silicon) {
  ApparatusConfig cfg;
  cfg.sphere_material = gold;
  cfg.overlayer_material = gold;
  cfg.sector_au_material = gold;
  cfg.sector_si_material = silicon;
  return cfg;
}

void ApparatusConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(name) + " must be positive");
    }
  };
  positive(sphere_radius, "sphere_radius");
  positive(separation, "separation");
  positive(overlayer_thickness, "overlayer_thickness");
  temps.validate();
}

std::vector<std::string> ApparatusConfig::warnings() const {
  std::vector<std::string> out;
  if (sphere_radius < 100.0 * separation) {
    std::ostringstream msg;
    msg << "PFA questionable: R/a = " << sphere_radius / separation << " < 100";
    out.push_back(msg.str());
  }
  return out;
}

Reflector ApparatusConfig::sphere() const { return Reflector::half_space(sphere_material); }

Reflector ApparatusConfig::au_plate() const {
  return Reflector::overlayer(overlayer_material, overlayer_thickness, sector_au_material);
}

Reflector ApparatusConfig::si_plate() const {
  return Reflector::overlayer(overlayer_material, overlayer_thickness, sector_si_material);
}

double pfa_force(double sphere_radius, double potential) {
  if (!(sphere_radius > 0.0)) throw DomainError("sphere radius must be positive");
  return 2.0 * pi * sphere_radius * potential;
}

DeltaFResult delta_F(const ApparatusConfig& cfg, const ApparatusSpecs& specs) {
  cfg.validate();
  specs.matsubara.validate();
  specs.neq.validate();

  const Reflector sphere = cfg.sphere();
  const Reflector au = cfg.au_plate();
  const Reflector si = cfg.si_plate();
  const double a = cfg.separation;
  const double T1 = cfg.temps.T1;
  const double T2 = cfg.temps.T2;
  const bool same_t = T1 == T2;

  auto neq_si_task = [&] { return neq_antisymmetric_potential(si, sphere, a, cfg.temps, specs.neq); };
  std::future<NeqBreakdown> pending;
  if (specs.concurrent_sectors) pending = std::async(std::launch::async, neq_si_task);

  DeltaFResult out;
  out.warnings = cfg.warnings();

  // Au sector: plate (T1) against sphere (T2).
  const MatsubaraSum u_au1 = free_energy_per_area({au, sphere, a, T1}, specs.matsubara);
  const MatsubaraSum u_au2 = same_t ? u_au1 : free_energy_per_area({au, sphere, a, T2}, specs.matsubara);
  // Si sector relative to the Au sector: F_Si - F_Au at each temperature.
  const MatsubaraSum d1 = free_energy_difference(sphere, si, au, a, T1, specs.matsubara);
  const MatsubaraSum d2 = same_t ? d1 : free_energy_difference(sphere, si, au, a, T2, specs.matsubara);

  out.neq_au = neq_antisymmetric_potential(au, sphere, a, cfg.temps, specs.neq);
  out.neq_si = specs.concurrent_sectors ? pending.get() : neq_si_task();

  const double R = cfg.sphere_radius;
  const double u_au_eq = 0.5 * (u_au1.value + u_au2.value);
  out.F_over_Au = pfa_force(R, u_au_eq + out.neq_au.total);
  out.equilibrium_part = pfa_force(R, 0.5 * (d1.value + d2.value));
  out.antisymmetric_part = pfa_force(R, out.neq_si.total - out.neq_au.total);
  out.delta_F = out.equilibrium_part + out.antisymmetric_part;
  out.F_over_Si = out.F_over_Au + out.delta_F;
  out.residual = std::abs(out.delta_F - pfa_force(R, out.neq_si.total));

  out.matsubara_terms = u_au1.terms + d1.terms + (same_t ? 0 : u_au2.terms + d2.terms);
  out.neq_subdivisions = out.neq_si.subdivisions + out.neq_au.subdivisions;
  return out;
}

FilterWindowReport filter_window_check(const ApparatusConfig& cfg) {
  cfg.validate();
  FilterWindowReport rep;
  const double t_max = std::max(cfg.temps.T1, cfg.temps.T2);
  rep.omega_c = constants::c / (2.0 * cfg.separation);
  rep.omega_T = 0.05 * constants::k_B * t_max / constants::hbar;
  rep.delta_0 = penetration_depth(cfg.overlayer_material, rep.omega_c);
  rep.delta_T = penetration_depth(cfg.overlayer_material, rep.omega_T);
  rep.thickness = cfg.overlayer_thickness;
  rep.lower_margin = rep.thickness / rep.delta_0;
  rep.upper_margin = rep.delta_T / rep.thickness;
  rep.lower_ok = rep.delta_0 < rep.thickness;
  rep.upper_ok = rep.thickness < rep.delta_T;
  rep.satisfied = rep.lower_ok && rep.upper_ok;
  return rep;
}

double thermal_wavelength(double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return constants::hbar * constants::c / (constants::k_B * temperature);
}

}  // namespace casimir
