#pragma once

// Out-of-equilibrium interaction between two planar bodies held at different
// temperatures: the antisymmetric potential from a real-frequency double
// integral, and the total potential (equilibrium average + antisymmetric).

#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/optics.hpp"

namespace casimir {

struct ThermalPair {
  double T1 = 300.0;  // K, plate (reflector 1)
  double T2 = 300.0;  // K, sphere (reflector 2)

  void validate() const;
  ThermalPair swapped() const { return {T2, T1}; }
  bool operator==(const ThermalPair&) const = default;
};

struct NeqQuadratureSpec {
  double relative_tolerance = 1e-5;
  // omega_max = factor * k_B max(T1, T2) / hbar.
  double omega_window_factor = 50.0;
  // When neither body absorbs, lossless metals are evaluated at
  // omega (1 + i eta) and eta/2, then extrapolated to eta -> 0 by one
  // Richardson step. With any absorber present eta is not used.
  double eta_relative = 1e-4;
  int max_subdivisions = 2000;
  int inner_max_subdivisions = 400;

  void validate() const;
  bool operator==(const NeqQuadratureSpec&) const = default;
};

struct NeqBreakdown {
  double propagating_te = 0.0;  // J/m^2
  double propagating_tm = 0.0;
  double evanescent_te = 0.0;
  double evanescent_tm = 0.0;
  double total = 0.0;
  int subdivisions = 0;       // outer + all inner subdivisions
  double error_estimate = 0.0;  // outer absolute error estimate, J/m^2
};

// Omega-integrand per channel, J s / m^2.
struct NeqSpectralDensity {
  double propagating_te = 0.0;
  double propagating_tm = 0.0;
  double evanescent_te = 0.0;
  double evanescent_tm = 0.0;
  double total = 0.0;
};

class NeqConvergenceError : public ConvergenceError {
 public:
  NeqConvergenceError(const std::string& what, double partial, int subdivisions,
                      double worst_omega_lo, double worst_omega_hi)
      : ConvergenceError(what, partial, subdivisions),
        worst_omega_lo_(worst_omega_lo), worst_omega_hi_(worst_omega_hi) {}
  double worst_omega_lo() const { return worst_omega_lo_; }
  double worst_omega_hi() const { return worst_omega_hi_; }

 private:
  double worst_omega_lo_;
  double worst_omega_hi_;
};

// 1 / (exp(hbar omega / k_B T) - 1).
double bose_occupation(double omega, double temperature);
double occupation_difference(double omega, double T1, double T2);

// refl1 is the body at T1, refl2 the body at T2.
NeqBreakdown neq_antisymmetric_potential(const Reflector& refl1, const Reflector& refl2,
                                         double separation, const ThermalPair& temps,
                                         const NeqQuadratureSpec& spec = {});

// (F(T1) + F(T2)) / 2 + antisymmetric potential, J/m^2.
double neq_total_potential(const Reflector& refl1, const Reflector& refl2, double separation,
                           const ThermalPair& temps, const MatsubaraSpec& matsubara = {},
                           const NeqQuadratureSpec& spec = {});

NeqSpectralDensity neq_spectral_density(const Reflector& refl1, const Reflector& refl2,
                                        double separation, const ThermalPair& temps,
                                        double omega, const NeqQuadratureSpec& spec = {});

// The frequency window [omega_min, omega_max] used for the outer integral.
std::pair<double, double> neq_omega_window(const ThermalPair& temps,
                                           const NeqQuadratureSpec& spec);

}  // namespace casimir
