#include "casimir/noneq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

constexpr double kTailCut = 41.45;  // e^{-t} < 1e-18

// arg(1 - X) / Im X, finite as Im X -> 0 away from the resonance Re X >= 1.
double arg_ratio(complex x) {
  const double re = 1.0 - x.real();
  const double im = x.imag();
  if (re > 0.0) {
    const double s = im / re;
    const double atan_over_s = std::abs(s) < 1e-8 ? 1.0 - s * s / 3.0 : std::atan(s) / s;
    return -atan_over_s / re;
  }
  if (im == 0.0) return 0.0;
  return std::atan2(-im, re) / im;
}

// Im(a conj(b)) written out so that a == b gives exactly zero.
double im_cross(complex a, complex b) { return a.imag() * b.real() - a.real() * b.imag(); }

using Channels = quad::Vec<4>;  // prop TE, prop TM, evan TE, evan TM

struct InnerResult {
  Channels value{};
  double error = 0.0;  // absolute, both branches
  int subdivisions = 0;
};

// k_perp integrals of both branches at one real frequency, without the
// hbar / 4 pi^2 prefactor and the occupation difference.
InnerResult inner_channels(const Reflector& refl1, const Reflector& refl2, double a,
                           double omega, double eta, const NeqQuadratureSpec& spec) {
  const RealAxisStack s1(refl1, omega, eta);
  const RealAxisStack s2(refl2, omega, eta);
  const double k0 = omega / c;
  const double k0_sq = k0 * k0;

  quad::Options opts;
  opts.relative_tolerance = 0.1 * spec.relative_tolerance;
  opts.max_subdivisions = spec.inner_max_subdivisions;
  opts.initial_panels = 2;
  opts.min_width_fraction = 1e-6;

  InnerResult out;

  // Propagating: kz = x k0, x in [0, 1]; kperp dkperp = k0^2 x dx.
  auto propagating = [&](double x) {
    const double kz = x * k0;
    const auto r1 = s1.amplitudes(complex(kz * kz), complex(kz));
    const auto r2 = s2.amplitudes(complex(kz * kz), complex(kz));
    const auto l1 = s1.losses(kz);
    const auto l2 = s2.losses(kz);
    const complex phase = std::polar(1.0, 2.0 * a * kz);
    quad::Vec<2> v{};
    for (std::size_t j = 0; j < 2; ++j) {
      // (|R2|^2 - |R1|^2) / (1 - |R1 R2|^2) in terms of L = 1 - |R|^2.
      const double numerator = l1[j] - l2[j];
      if (numerator == 0.0) continue;
      const double weight = numerator / (l1[j] + l2[j] - l1[j] * l2[j]);
      const double im_log = std::arg(1.0 - phase * r1[j] * r2[j]);
      v[j] = k0_sq * x * im_log * weight;
    }
    return v;
  };

  // Evanescent: kappa = t / 2a with t = tail y^2, y in [0, 1], which
  // stretches the region next to the light line;
  // kperp dkperp = t dt / 4a^2 = tail^2 y^3 dy / 2a^2.
  const double evan_scale = kTailCut * kTailCut / (2.0 * a * a);
  auto evanescent = [&](double y) {
    const double t = kTailCut * y * y;
    const double kappa = t / (2.0 * a);
    const complex kz_vac(0.0, kappa);
    const auto r1 = s1.amplitudes(complex(-kappa * kappa), kz_vac);
    const auto r2 = s2.amplitudes(complex(-kappa * kappa), kz_vac);
    const double decay = std::exp(-t);
    quad::Vec<2> v{};
    for (std::size_t j = 0; j < 2; ++j) {
      const double cross = im_cross(r1[j], r2[j]);
      if (cross == 0.0) continue;
      // Im log(1 - X) * Im(R1 R2*) / Im(R1 R2) with X = e^{-t} R1 R2.
      const complex x = decay * r1[j] * r2[j];
      v[j] = evan_scale * y * y * y * decay * arg_ratio(x) * cross;
    }
    return v;
  };

  // An unconverged inner integral is not fatal here: its error estimate is
  // carried into the omega integral and checked against the total there.
  const auto prop = quad::integrate<2>(propagating, 0.0, 1.0, opts);
  const auto evan = quad::integrate<2>(evanescent, 0.0, 1.0, opts);
  out.value = {prop.value[0], prop.value[1], evan.value[0], evan.value[1]};
  out.error = prop.error + evan.error;
  out.subdivisions = prop.subdivisions + evan.subdivisions;
  return out;
}

InnerResult regularized_inner(const Reflector& refl1, const Reflector& refl2, double a,
                              double omega, const NeqQuadratureSpec& spec) {
  // Any absorber fixes the 0/0 weights at eta = 0; adding eta to a lossless
  // layer next to a weak absorber would swamp the physical losses.
  const bool lossless_pair = !refl1.has_dissipative_material() && !refl2.has_dissipative_material();
  if (!lossless_pair || !(refl1.has_lossless_metal() || refl2.has_lossless_metal())) {
    return inner_channels(refl1, refl2, a, omega, 0.0, spec);
  }
  const InnerResult coarse = inner_channels(refl1, refl2, a, omega, spec.eta_relative, spec);
  const InnerResult fine = inner_channels(refl1, refl2, a, omega, 0.5 * spec.eta_relative, spec);
  InnerResult out;
  for (std::size_t i = 0; i < 4; ++i) out.value[i] = 2.0 * fine.value[i] - coarse.value[i];
  out.error = 2.0 * fine.error + coarse.error;
  out.subdivisions = coarse.subdivisions + fine.subdivisions;
  return out;
}

void check_inputs(double separation, const ThermalPair& temps, const NeqQuadratureSpec& spec) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("separation must be positive");
  }
  temps.validate();
  spec.validate();
}

}  // namespace

void ThermalPair::validate() const {
  if (!(T1 > 0.0) || !(T2 > 0.0) || !std::isfinite(T1) || !std::isfinite(T2)) {
    throw DomainError("temperatures must be positive");
  }
}

void NeqQuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0 && relative_tolerance < 1.0)) {
    throw DomainError("non-equilibrium relative tolerance must lie in (0, 1)");
  }
  if (!(omega_window_factor > 0.0)) throw DomainError("omega window factor must be positive");
  if (!(eta_relative > 0.0 && eta_relative < 1.0)) {
    throw DomainError("dissipation floor eta must lie in (0, 1)");
  }
  if (max_subdivisions < 1 || inner_max_subdivisions < 1) {
    throw DomainError("subdivision budgets must be positive");
  }
}

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("occupation requires omega > 0");
  if (!(temperature > 0.0)) throw DomainError("occupation requires T > 0");
  return 1.0 / std::expm1(hbar * omega / (k_B * temperature));
}

double occupation_difference(double omega, double T1, double T2) {
  if (T1 == T2) return 0.0;
  return bose_occupation(omega, T1) - bose_occupation(omega, T2);
}

std::pair<double, double> neq_omega_window(const ThermalPair& temps,
                                           const NeqQuadratureSpec& spec) {
  const double t_min = std::min(temps.T1, temps.T2);
  const double t_max = std::max(temps.T1, temps.T2);
  return {1e-6 * k_B * t_min / hbar, spec.omega_window_factor * k_B * t_max / hbar};
}

NeqBreakdown neq_antisymmetric_potential(const Reflector& refl1, const Reflector& refl2,
                                         double separation, const ThermalPair& temps,
                                         const NeqQuadratureSpec& spec) {
  check_inputs(separation, temps, spec);
  NeqBreakdown out;
  if (temps.T1 == temps.T2) return out;

  const auto [omega_min, omega_max] = neq_omega_window(temps, spec);
  const double prefactor = hbar / (4.0 * pi * pi);
  int inner_subdivisions = 0;

  // Outer integral over s = ln(omega). Component 4 integrates the inner
  // error estimate with the same weight.
  auto integrand = [&](double s) {
    const double omega = std::exp(s);
    const double dn = occupation_difference(omega, temps.T1, temps.T2);
    quad::Vec<5> v{};
    if (dn == 0.0) return v;
    const InnerResult inner = regularized_inner(refl1, refl2, separation, omega, spec);
    inner_subdivisions += inner.subdivisions;
    const double scale = prefactor * omega * dn;
    for (std::size_t i = 0; i < 4; ++i) v[i] = scale * inner.value[i];
    v[4] = std::abs(scale) * inner.error;
    return v;
  };

  quad::Options opts;
  opts.relative_tolerance = spec.relative_tolerance;
  opts.max_subdivisions = spec.max_subdivisions;
  opts.initial_panels = 16;
  opts.min_width_fraction = 1e-8;
  const auto res = quad::integrate<5>(integrand, std::log(omega_min), std::log(omega_max), opts);

  out.propagating_te = res.value[0];
  out.propagating_tm = res.value[1];
  out.evanescent_te = res.value[2];
  out.evanescent_tm = res.value[3];
  out.total = out.propagating_te + out.propagating_tm + out.evanescent_te + out.evanescent_tm;
  out.subdivisions = res.subdivisions + inner_subdivisions;
  const double inner_error = res.value[4];
  out.error_estimate = res.error + inner_error;
  const double magnitude = std::abs(out.propagating_te) + std::abs(out.propagating_tm) +
                           std::abs(out.evanescent_te) + std::abs(out.evanescent_tm);
  if (inner_error > spec.relative_tolerance * magnitude) {
    std::ostringstream msg;
    msg << "non-equilibrium kperp integrals did not converge (propagated error " << inner_error
        << " J/m^2 against total " << out.total << " J/m^2)";
    throw NeqConvergenceError(msg.str(), out.total, out.subdivisions, omega_min, omega_max);
  }
  if (!res.converged) {
    std::ostringstream msg;
    msg << "non-equilibrium omega integral did not converge (error " << res.error
        << " J/m^2, worst panel omega in [" << std::exp(res.worst_lo) << ", "
        << std::exp(res.worst_hi) << "] rad/s)";
    throw NeqConvergenceError(msg.str(), out.total, out.subdivisions, std::exp(res.worst_lo),
                              std::exp(res.worst_hi));
  }
  return out;
}

double neq_total_potential(const Reflector& refl1, const Reflector& refl2, double separation,
                           const ThermalPair& temps, const MatsubaraSpec& matsubara,
                           const NeqQuadratureSpec& spec) {
  check_inputs(separation, temps, spec);
  const double f1 =
      free_energy_per_area({refl1, refl2, separation, temps.T1}, matsubara).value;
  const double f2 = temps.T1 == temps.T2
                        ? f1
                        : free_energy_per_area({refl1, refl2, separation, temps.T2}, matsubara).value;
  const NeqBreakdown neq = neq_antisymmetric_potential(refl1, refl2, separation, temps, spec);
  return 0.5 * (f1 + f2) + neq.total;
}

NeqSpectralDensity neq_spectral_density(const Reflector& refl1, const Reflector& refl2,
                                        double separation, const ThermalPair& temps,
                                        double omega, const NeqQuadratureSpec& spec) {
  check_inputs(separation, temps, spec);
  if (!(omega > 0.0)) throw DomainError("spectral density requires omega > 0");
  NeqSpectralDensity out;
  const double dn = occupation_difference(omega, temps.T1, temps.T2);
  if (dn == 0.0) return out;
  const InnerResult inner = regularized_inner(refl1, refl2, separation, omega, spec);
  const double scale = hbar / (4.0 * pi * pi) * dn;
  out.propagating_te = scale * inner.value[0];
  out.propagating_tm = scale * inner.value[1];
  out.evanescent_te = scale * inner.value[2];
  out.evanescent_tm = scale * inner.value[3];
  out.total = out.propagating_te + out.propagating_tm + out.evanescent_te + out.evanescent_tm;
  return out;
}

}  // namespace casimir
