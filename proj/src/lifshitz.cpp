#include "casimir/lifshitz.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

using constants::c;
using constants::pi;

// e^{-u} < 1e-18 beyond this many e-folds.
constexpr double kTailCut = 41.45;

void check_geometry(double separation, double temperature) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("separation must be positive");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive");
  }
}

// Integral over u = 2 a q in [2 a xi / c, 2 a xi / c + tail] of a per-point
// polarization pair. Returns {TE, TM} already divided by 4 a^2.
template <std::size_t N = 2, class Integrand>
quad::Vec<N> kperp_integral(Integrand&& integrand, double xi, double separation,
                            const MatsubaraSpec& spec) {
  const double u_lo = 2.0 * separation * xi / c;
  quad::Options opts;
  opts.relative_tolerance = spec.kperp_relative_tolerance;
  opts.max_subdivisions = spec.kperp_max_subdivisions;
  opts.initial_panels = 4;
  opts.min_width_fraction = 1e-10;
  const auto res = quad::integrate<N>(integrand, u_lo, u_lo + kTailCut, opts);
  if (!res.converged) {
    std::ostringstream msg;
    msg << "kperp integral did not converge at xi=" << xi << " rad/s (error " << res.error << ")";
    throw ConvergenceError(msg.str(), res.value[0] + res.value[1], res.subdivisions);
  }
  const double scale = 1.0 / (4.0 * separation * separation);
  quad::Vec<N> out = res.value;
  for (double& v : out) v *= scale;
  return out;
}

// Sums prefactor * sum'_l term(l) with the l = 0 term at half weight.
MatsubaraSum matsubara_sum(const std::function<double(int)>& term, double separation,
                           double temperature, const MatsubaraSpec& spec, const char* what) {
  spec.validate();
  const int max_terms = spec.resolved_max_terms(separation, temperature);
  const double prefactor = constants::k_B * temperature / (2.0 * pi);
  double sum = 0.5 * term(0);
  for (int l = 1; l < max_terms; ++l) {
    const double t = term(l);
    sum += t;
    if (std::abs(t) <= spec.relative_tolerance * std::abs(sum)) {
      return {prefactor * sum, l + 1};
    }
  }
  std::ostringstream msg;
  msg << what << ": Matsubara sum not converged within " << max_terms << " terms";
  throw ConvergenceError(msg.str(), prefactor * sum, max_terms);
}

}  // namespace

void EquilibriumConfig::validate() const { check_geometry(separation, temperature); }

void MatsubaraSpec::validate() const {
  if (!(relative_tolerance > 0.0 && relative_tolerance < 1.0)) {
    throw DomainError("Matsubara relative tolerance must lie in (0, 1)");
  }
  if (max_terms < 0) throw DomainError("Matsubara max_terms must be >= 1 (or 0 for auto)");
  if (!(kperp_relative_tolerance > 0.0 && kperp_relative_tolerance < 1.0)) {
    throw DomainError("kperp relative tolerance must lie in (0, 1)");
  }
  if (kperp_max_subdivisions < 1) throw DomainError("kperp_max_subdivisions must be >= 1");
}

int MatsubaraSpec::resolved_max_terms(double separation, double temperature) const {
  if (max_terms > 0) return max_terms;
  const double decay = 2.0 * separation * matsubara_frequency(temperature, 1) / c;
  const double bound = 40.0 / decay;
  return bound > 200.0 ? static_cast<int>(std::ceil(bound)) : 200;
}

double matsubara_frequency(double temperature, int l) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  if (l < 0) throw DomainError("Matsubara index must be non-negative");
  return 2.0 * pi * l * constants::k_B * temperature / constants::hbar;
}

MatsubaraSum free_energy_per_area(const EquilibriumConfig& cfg, const MatsubaraSpec& spec) {
  cfg.validate();
  const double a = cfg.separation;
  auto term = [&](int l) {
    const double xi = matsubara_frequency(cfg.temperature, l);
    const ImagAxisStack s1(cfg.reflector1, xi);
    const ImagAxisStack s2(cfg.reflector2, xi);
    auto integrand = [&](double u) {
      const double q = u / (2.0 * a);
      const auto r1 = s1.amplitudes(q);
      const auto r2 = s2.amplitudes(q);
      const double decay = std::exp(-u);
      return quad::Vec<2>{u * std::log1p(-decay * (r1[0] * r2[0])),
                          u * std::log1p(-decay * (r1[1] * r2[1]))};
    };
    const auto v = kperp_integral(integrand, xi, a, spec);
    return v[0] + v[1];
  };
  return matsubara_sum(term, a, cfg.temperature, spec, "free energy");
}

MatsubaraSum pressure_per_area(const EquilibriumConfig& cfg, const MatsubaraSpec& spec) {
  cfg.validate();
  const double a = cfg.separation;
  auto term = [&](int l) {
    const double xi = matsubara_frequency(cfg.temperature, l);
    const ImagAxisStack s1(cfg.reflector1, xi);
    const ImagAxisStack s2(cfg.reflector2, xi);
    auto integrand = [&](double u) {
      const double q = u / (2.0 * a);
      const auto r1 = s1.amplitudes(q);
      const auto r2 = s2.amplitudes(q);
      const double decay = std::exp(-u);
      const double x_te = decay * (r1[0] * r2[0]);
      const double x_tm = decay * (r1[1] * r2[1]);
      // d/da log(1 - e^{-2aq} P) = 2 q X / (1 - X), with 2q = u / a.
      return quad::Vec<2>{-u * (u / a) * x_te / (1.0 - x_te), -u * (u / a) * x_tm / (1.0 - x_tm)};
    };
    const auto v = kperp_integral(integrand, xi, a, spec);
    return v[0] + v[1];
  };
  return matsubara_sum(term, a, cfg.temperature, spec, "pressure");
}

ZeroFrequencyTerm zero_frequency_term(const EquilibriumConfig& cfg) {
  cfg.validate();
  const double a = cfg.separation;
  const ImagAxisStack s1(cfg.reflector1, 0.0);
  const ImagAxisStack s2(cfg.reflector2, 0.0);
  auto integrand = [&](double u) {
    const double q = u / (2.0 * a);
    const auto r1 = s1.amplitudes(q);
    const auto r2 = s2.amplitudes(q);
    const double decay = std::exp(-u);
    return quad::Vec<2>{u * std::log1p(-decay * (r1[0] * r2[0])),
                        u * std::log1p(-decay * (r1[1] * r2[1]))};
  };
  const auto v = kperp_integral(integrand, 0.0, a, MatsubaraSpec{});
  const double weight = 0.5 * constants::k_B * cfg.temperature / (2.0 * pi);
  ZeroFrequencyTerm out;
  out.te = weight * v[0];
  out.tm = weight * v[1];
  out.total = out.te + out.tm;
  return out;
}

MatsubaraSum free_energy_difference(const Reflector& common, const Reflector& plate_a,
                                    const Reflector& plate_b, double separation,
                                    double temperature, const MatsubaraSpec& spec) {
  check_geometry(separation, temperature);
  const double a = separation;
  if (plate_a == plate_b) return {0.0, 1};
  auto term = [&](int l) {
    const double xi = matsubara_frequency(temperature, l);
    const ImagAxisStack sc(common, xi);
    const ImagAxisStack sa(plate_a, xi);
    const ImagAxisStack sb(plate_b, xi);
    auto integrand = [&](double u) {
      const double q = u / (2.0 * a);
      const auto rc = sc.amplitudes(q);
      const auto ra = sa.amplitudes(q);
      const auto rb = sb.amplitudes(q);
      const double decay = std::exp(-u);
      // Components 2, 3 carry log(1 - X_b) only to set the tolerance scale.
      quad::Vec<4> out{};
      for (std::size_t j = 0; j < 2; ++j) {
        // log[(1 - X_a) / (1 - X_b)] = log1p[(X_b - X_a) / (1 - X_b)]
        const double xb = decay * rc[j] * rb[j];
        const double delta = decay * rc[j] * (rb[j] - ra[j]);
        out[j] = u * std::log1p(delta / (1.0 - xb));
        out[j + 2] = u * std::log1p(-xb);
      }
      return out;
    };
    const auto v = kperp_integral<4>(integrand, xi, a, spec);
    return v[0] + v[1];
  };
  return matsubara_sum(term, a, temperature, spec, "free energy difference");
}

}  // namespace casimir
