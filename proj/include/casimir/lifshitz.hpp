#pragma once

// Equilibrium Casimir free energy and pressure per unit area between two
// planar reflectors, by Matsubara summation over imaginary frequencies.

#include "casimir/errors.hpp"
#include "casimir/optics.hpp"

namespace casimir {

struct EquilibriumConfig {
  Reflector reflector1;
  Reflector reflector2;
  double separation = 0.0;   // m
  double temperature = 0.0;  // K

  void validate() const;
};

struct MatsubaraSpec {
  double relative_tolerance = 1e-9;
  // 0 selects max(200, 40 c / (2 a xi_1)).
  int max_terms = 0;
  double kperp_relative_tolerance = 1e-11;
  int kperp_max_subdivisions = 400;

  void validate() const;
  int resolved_max_terms(double separation, double temperature) const;
  bool operator==(const MatsubaraSpec&) const = default;
};

struct MatsubaraSum {
  double value = 0.0;
  int terms = 0;
};

struct ZeroFrequencyTerm {
  double te = 0.0;
  double tm = 0.0;
  double total = 0.0;
};

// xi_l = 2 pi l k_B T / hbar.
double matsubara_frequency(double temperature, int l);

// J/m^2; negative means attraction.
MatsubaraSum free_energy_per_area(const EquilibriumConfig& cfg, const MatsubaraSpec& spec);

// -dF/da in N/m^2, differentiated under the integral; negative means attraction.
MatsubaraSum pressure_per_area(const EquilibriumConfig& cfg, const MatsubaraSpec& spec);

// The half-weight l = 0 contribution to the free energy, from the analytic
// xi -> 0 limits of the reflection amplitudes.
ZeroFrequencyTerm zero_frequency_term(const EquilibriumConfig& cfg);

// F(common, plate_a) - F(common, plate_b), integrated as a single log-ratio so
// that the small difference between two nearly equal plates keeps its
// relative accuracy.
MatsubaraSum free_energy_difference(const Reflector& common, const Reflector& plate_a,
                                    const Reflector& plate_b, double separation,
                                    double temperature, const MatsubaraSpec& spec);

}  // namespace casimir
