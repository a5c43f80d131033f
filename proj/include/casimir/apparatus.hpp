#pragma once

// Sphere above a two-sector (Au / Si) plate covered by a gold overlayer:
// PFA forces and the differential signal between the sectors.

#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/noneq.hpp"

namespace casimir {

struct ApparatusConfig {
  double sphere_radius = 150e-6;       // m
  double separation = 300e-9;          // m
  double overlayer_thickness = 100e-9;  // m
  DielectricModel sphere_material;
  DielectricModel overlayer_material;
  DielectricModel sector_au_material;
  DielectricModel sector_si_material;
  ThermalPair temps;

  // Gold sphere, gold overlayer and gold sector; silicon under the Si sector.
  static ApparatusConfig with_materials(const DielectricModel& gold,
                                        const DielectricModel& silicon);

  void validate() const;
  // Non-fatal issues (PFA validity when R < 100 a).
  std::vector<std::string> warnings() const;

  Reflector sphere() const;
  Reflector au_plate() const;
  Reflector si_plate() const;
};

struct ApparatusSpecs {
  MatsubaraSpec matsubara;
  NeqQuadratureSpec neq;
  // Evaluate the Si-sector antisymmetric term on a second thread.
  bool concurrent_sectors = true;
};

struct DeltaFResult {
  double delta_F = 0.0;  // N
  double F_over_Au = 0.0;
  double F_over_Si = 0.0;
  double equilibrium_part = 0.0;
  double antisymmetric_part = 0.0;
  double residual = 0.0;

  NeqBreakdown neq_si;  // J/m^2
  NeqBreakdown neq_au;
  int matsubara_terms = 0;  // summed over all equilibrium evaluations
  int neq_subdivisions = 0;
  std::vector<std::string> warnings;
};

// 2 pi R U; negative is attraction toward the plate.
double pfa_force(double sphere_radius, double potential);

DeltaFResult delta_F(const ApparatusConfig& cfg, const ApparatusSpecs& specs = {});

struct FilterWindowReport {
  double omega_c = 0.0;  // c / 2a
  double omega_T = 0.0;  // 0.05 k_B max(T) / hbar
  double delta_0 = 0.0;  // m, penetration depth at omega_c
  double delta_T = 0.0;  // m, penetration depth at omega_T
  double thickness = 0.0;
  double lower_margin = 0.0;  // w / delta_0
  double upper_margin = 0.0;  // delta_T / w
  bool lower_ok = false;
  bool upper_ok = false;
  bool satisfied = false;
};

FilterWindowReport filter_window_check(const ApparatusConfig& cfg);

// hbar c / k_B T.
double thermal_wavelength(double temperature);

}  // namespace casimir
