#include "casimir/optics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

constexpr complex I{0.0, 1.0};
constexpr double kC2 = constants::c * constants::c;

template <class T>
T te_coefficient(T kz_a, T kz_b) {
  return (kz_a - kz_b) / (kz_a + kz_b);
}

template <class T>
T tm_coefficient(T eps_a, T kz_a, T eps_b, T kz_b) {
  return (eps_b * kz_a - eps_a * kz_b) / (eps_b * kz_a + eps_a * kz_b);
}

double tm_coefficient_real(double eps_a, double q_a, double eps_b, double q_b) {
  if (std::isinf(eps_b)) return 1.0;
  return tm_coefficient(eps_a, q_a, eps_b, q_b);
}

// 1 - |r|^2 for r = (A - B) / (A + B).
double interface_loss(complex A, complex B) {
  const double den = std::norm(A + B);
  if (den == 0.0) return 0.0;
  return 4.0 * (A * std::conj(B)).real() / den;
}

template <class T>
T two_interface(T r_top, T phase, T r_bottom) {
  return (r_top + phase * r_bottom) / (T(1.0) + phase * r_top * r_bottom);
}

bool is_finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool purely_imaginary(complex omega) { return omega.real() == 0.0 && omega.imag() > 0.0; }

void check_kinematics(const TransverseKinematics& kin) {
  if (!(kin.kperp >= 0.0) || !std::isfinite(kin.kperp)) {
    throw DomainError("kperp must be finite and non-negative");
  }
  if (kin.omega == complex(0.0, 0.0) || !is_finite(kin.omega)) {
    throw DomainError("frequency must be finite and non-zero");
  }
  if (purely_imaginary(kin.omega) == false && kin.omega.real() == 0.0) {
    throw DomainError("imaginary-axis frequency must be i*xi with xi > 0");
  }
}

// Imaginary-axis shift (eps - 1) xi^2 / c^2 entering q_m^2 = q^2 + shift.
double imag_shift(double eps, double xi) { return (eps - 1.0) * xi * xi / kC2; }

// Zero-frequency shift: only a plasma keeps a finite eps xi^2 as xi -> 0.
double static_shift(const StaticLimit& lim) {
  return lim.kind == StaticLimit::Kind::Plasma ? lim.value / kC2 : 0.0;
}

int static_order(StaticLimit::Kind kind) {
  switch (kind) {
    case StaticLimit::Kind::Dielectric: return 0;
    case StaticLimit::Kind::Conductor: return 1;
    case StaticLimit::Kind::Plasma: return 2;
    case StaticLimit::Kind::IdealMirror: return 3;
  }
  return 0;
}

// lim_{xi->0} eps_b(i xi) / eps_a(i xi).
double static_ratio(const StaticLimit& a, const StaticLimit& b) {
  const int oa = static_order(a.kind);
  const int ob = static_order(b.kind);
  if (ob > oa) return std::numeric_limits<double>::infinity();
  if (ob < oa) return 0.0;
  return b.value / a.value;
}

}  // namespace

const char* to_string(Polarization pol) { return pol == Polarization::TE ? "TE" : "TM"; }

// ---------------------------------------------------------------------------
// Reflector

Reflector Reflector::half_space(DielectricModel material) {
  if (material.is_ideal_mirror()) return ideal_mirror();
  return Reflector(Kind::HalfSpace, std::move(material), 0.0, DielectricModel::vacuum());
}

Reflector Reflector::overlayer(DielectricModel layer, double thickness, DielectricModel substrate) {
  if (!(thickness > 0.0) || !std::isfinite(thickness)) {
    throw DomainError("overlayer thickness must be positive");
  }
  if (layer.is_ideal_mirror()) return ideal_mirror();
  if (layer == substrate) return half_space(std::move(layer));
  return Reflector(Kind::Overlayer, std::move(layer), thickness, std::move(substrate));
}

Reflector Reflector::ideal_mirror() {
  return Reflector(Kind::IdealMirror, DielectricModel::ideal_mirror(), 0.0,
                   DielectricModel::vacuum());
}

bool Reflector::has_lossless_metal() const {
  switch (kind_) {
    case Kind::HalfSpace: return layer_.is_lossless_metal();
    case Kind::Overlayer: return layer_.is_lossless_metal() || substrate_.is_lossless_metal();
    case Kind::IdealMirror: return false;
  }
  return false;
}

bool Reflector::has_dissipative_material() const {
  switch (kind_) {
    case Kind::HalfSpace: return layer_.is_dissipative();
    case Kind::Overlayer: return layer_.is_dissipative() || substrate_.is_dissipative();
    case Kind::IdealMirror: return false;
  }
  return false;
}

std::string Reflector::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::HalfSpace: out << "half-space[" << layer_.describe() << "]"; break;
    case Kind::Overlayer:
      out << "overlayer[" << layer_.describe() << ", w=" << thickness_ << " m, on "
          << substrate_.describe() << "]";
      break;
    case Kind::IdealMirror: out << "ideal-mirror"; break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Pointwise operations

complex normal_wavevector(const DielectricModel& material, const TransverseKinematics& kin) {
  check_kinematics(kin);
  const double k2 = kin.kperp * kin.kperp;
  if (purely_imaginary(kin.omega)) {
    const double xi = kin.omega.imag();
    const double q0 = std::sqrt(k2 + xi * xi / kC2);
    if (material.is_ideal_mirror()) return {0.0, std::numeric_limits<double>::infinity()};
    if (material.is_vacuum()) return {0.0, q0};
    return {0.0, std::sqrt(q0 * q0 + imag_shift(material.at_imag(xi), xi))};
  }
  const complex k0_sq = kin.omega * kin.omega / kC2;
  const complex kz0_sq = k0_sq - k2;
  if (material.is_vacuum()) return sqrt_upper(kz0_sq);
  const complex eps = material.at_complex(kin.omega);
  return sqrt_upper(kz0_sq + (eps - 1.0) * k0_sq);
}

complex fresnel(Polarization pol, const DielectricModel& a, const DielectricModel& b,
                const TransverseKinematics& kin, OpticsDiagnostics* diag) {
  check_kinematics(kin);
  if (a == b) return 0.0;
  if (a.is_ideal_mirror()) throw DomainError("Fresnel coefficient from inside an ideal mirror");
  if (b.is_ideal_mirror()) return pol == Polarization::TE ? -1.0 : 1.0;

  auto evaluate = [&](double kperp) -> complex {
    const TransverseKinematics k{kin.omega, kperp};
    if (purely_imaginary(kin.omega)) {
      const double xi = kin.omega.imag();
      const double qa = normal_wavevector(a, k).imag();
      const double qb = normal_wavevector(b, k).imag();
      if (pol == Polarization::TE) return te_coefficient(qa, qb);
      return tm_coefficient_real(a.at_imag(xi), qa, b.at_imag(xi), qb);
    }
    const complex kza = normal_wavevector(a, k);
    const complex kzb = normal_wavevector(b, k);
    if (pol == Polarization::TE) return te_coefficient(kza, kzb);
    return tm_coefficient(a.at_complex(kin.omega), kza, b.at_complex(kin.omega), kzb);
  };

  complex r = evaluate(kin.kperp);
  if (!is_finite(r)) {
    const double nudged = kin.kperp > 0.0 ? kin.kperp * (1.0 + 1e-8)
                                          : 1e-8 * std::abs(kin.omega) / constants::c;
    r = evaluate(nudged);
    if (diag != nullptr) ++diag->regularized_points;
  }
  return r;
}

complex reflection_amplitude(const Reflector& refl, Polarization pol,
                             const TransverseKinematics& kin, OpticsDiagnostics* diag) {
  check_kinematics(kin);
  const auto idx = static_cast<std::size_t>(pol);
  auto evaluate = [&](double kperp) -> complex {
    const double k2 = kperp * kperp;
    if (purely_imaginary(kin.omega)) {
      const double xi = kin.omega.imag();
      return ImagAxisStack(refl, xi).amplitudes(std::sqrt(k2 + xi * xi / kC2))[idx];
    }
    const complex k0_sq = kin.omega * kin.omega / kC2;
    const complex kz0_sq = k0_sq - k2;
    return RealAxisStack(refl, kin.omega).amplitudes(kz0_sq, sqrt_upper(kz0_sq))[idx];
  };
  complex r = evaluate(kin.kperp);
  if (!is_finite(r)) {
    const double nudged = kin.kperp > 0.0 ? kin.kperp * (1.0 + 1e-8)
                                          : 1e-8 * std::abs(kin.omega) / constants::c;
    r = evaluate(nudged);
    if (diag != nullptr) ++diag->regularized_points;
  }
  return r;
}

// ---------------------------------------------------------------------------
// ImagAxisStack

ImagAxisStack::ImagAxisStack(const Reflector& refl, double xi)
    : kind_(refl.kind()), thickness_(refl.thickness()) {
  if (!(xi >= 0.0)) throw DomainError("imaginary frequency must be non-negative");
  if (kind_ == Reflector::Kind::IdealMirror) return;
  ideal_substrate_ = kind_ == Reflector::Kind::Overlayer && refl.substrate().is_ideal_mirror();

  if (xi > 0.0) {
    const double eps_layer = refl.layer().at_imag(xi);
    shift_layer_ = imag_shift(eps_layer, xi);
    rho_top_ = eps_layer;
    if (kind_ == Reflector::Kind::Overlayer && !ideal_substrate_) {
      const double eps_sub = refl.substrate().at_imag(xi);
      shift_sub_ = imag_shift(eps_sub, xi);
      rho_bottom_ = eps_sub / eps_layer;
    }
    return;
  }

  const StaticLimit vac{StaticLimit::Kind::Dielectric, 1.0};
  const StaticLimit layer = refl.layer().static_limit();
  shift_layer_ = static_shift(layer);
  rho_top_ = static_ratio(vac, layer);
  if (kind_ == Reflector::Kind::Overlayer && !ideal_substrate_) {
    const StaticLimit sub = refl.substrate().static_limit();
    shift_sub_ = static_shift(sub);
    rho_bottom_ = static_ratio(layer, sub);
  }
}

std::array<double, 2> ImagAxisStack::amplitudes(double q) const {
  if (kind_ == Reflector::Kind::IdealMirror) return {-1.0, 1.0};
  const double q_layer = std::sqrt(q * q + shift_layer_);
  const double top_te = te_coefficient(q, q_layer);
  const double top_tm = tm_coefficient_real(1.0, q, rho_top_, q_layer);
  if (kind_ == Reflector::Kind::HalfSpace) return {top_te, top_tm};

  double bottom_te = -1.0;
  double bottom_tm = 1.0;
  if (!ideal_substrate_) {
    const double q_sub = std::sqrt(q * q + shift_sub_);
    bottom_te = te_coefficient(q_layer, q_sub);
    bottom_tm = tm_coefficient_real(1.0, q_layer, rho_bottom_, q_sub);
  }
  const double phase = std::exp(-2.0 * thickness_ * q_layer);
  return {two_interface(top_te, phase, bottom_te), two_interface(top_tm, phase, bottom_tm)};
}

// ---------------------------------------------------------------------------
// RealAxisStack

RealAxisStack::RealAxisStack(const Reflector& refl, double omega, double eta_relative)
    : kind_(refl.kind()), thickness_(refl.thickness()) {
  if (!(omega > 0.0)) throw DomainError("real-axis frequency must be positive");
  auto eps_of = [&](const DielectricModel& m) -> complex {
    if (m.is_ideal_mirror() || m.is_vacuum()) return 1.0;
    if (eta_relative > 0.0 && m.is_lossless_metal()) {
      return m.at_complex(complex(omega, eta_relative * omega));
    }
    return m.at_real(omega);
  };
  const complex eps_layer = eps_of(refl.layer());
  const complex eps_sub =
      kind_ == Reflector::Kind::Overlayer ? eps_of(refl.substrate()) : complex(1.0);
  init(refl, eps_layer, eps_sub, omega * omega / kC2);
}

RealAxisStack::RealAxisStack(const Reflector& refl, complex omega)
    : kind_(refl.kind()), thickness_(refl.thickness()) {
  auto eps_of = [&](const DielectricModel& m) -> complex {
    if (m.is_ideal_mirror() || m.is_vacuum()) return 1.0;
    return m.at_complex(omega);
  };
  const complex eps_layer = eps_of(refl.layer());
  const complex eps_sub =
      kind_ == Reflector::Kind::Overlayer ? eps_of(refl.substrate()) : complex(1.0);
  init(refl, eps_layer, eps_sub, omega * omega / kC2);
}

void RealAxisStack::init(const Reflector& refl, complex eps_layer, complex eps_sub,
                         complex k0_sq) {
  if (kind_ == Reflector::Kind::IdealMirror) return;
  ideal_substrate_ = kind_ == Reflector::Kind::Overlayer && refl.substrate().is_ideal_mirror();
  eps_layer_ = eps_layer;
  shift_layer_ = (eps_layer - 1.0) * k0_sq;
  if (kind_ == Reflector::Kind::Overlayer && !ideal_substrate_) {
    eps_sub_ = eps_sub;
    shift_sub_ = (eps_sub - 1.0) * k0_sq;
  }
}

std::array<complex, 2> RealAxisStack::amplitudes(complex kz_vac_sq, complex kz_vac) const {
  if (kind_ == Reflector::Kind::IdealMirror) return {complex(-1.0), complex(1.0)};
  const complex kz_layer = sqrt_upper(kz_vac_sq + shift_layer_);
  const complex top_te = te_coefficient(kz_vac, kz_layer);
  const complex top_tm = tm_coefficient(complex(1.0), kz_vac, eps_layer_, kz_layer);
  if (kind_ == Reflector::Kind::HalfSpace) return {top_te, top_tm};

  complex bottom_te = -1.0;
  complex bottom_tm = 1.0;
  if (!ideal_substrate_) {
    const complex kz_sub = sqrt_upper(kz_vac_sq + shift_sub_);
    bottom_te = te_coefficient(kz_layer, kz_sub);
    bottom_tm = tm_coefficient(eps_layer_, kz_layer, eps_sub_, kz_sub);
  }
  // Im kz_layer >= 0, so |phase| <= 1.
  const complex phase = std::exp(2.0 * I * thickness_ * kz_layer);
  return {two_interface(top_te, phase, bottom_te), two_interface(top_tm, phase, bottom_tm)};
}

std::array<double, 2> RealAxisStack::losses(double kz_vac) const {
  if (kind_ == Reflector::Kind::IdealMirror) return {0.0, 0.0};
  const complex kz0(kz_vac);
  const complex kz_layer = sqrt_upper(kz0 * kz0 + shift_layer_);
  const double top_te = interface_loss(kz0, kz_layer);
  const double top_tm = interface_loss(eps_layer_ * kz0, kz_layer);
  if (kind_ == Reflector::Kind::HalfSpace) return {top_te, top_tm};

  const complex r_top_te = te_coefficient(kz0, kz_layer);
  const complex r_top_tm = tm_coefficient(complex(1.0), kz0, eps_layer_, kz_layer);
  complex r_bot_te = -1.0, r_bot_tm = 1.0;
  double bot_te = 0.0, bot_tm = 0.0;
  if (!ideal_substrate_) {
    const complex kz_sub = sqrt_upper(kz0 * kz0 + shift_sub_);
    r_bot_te = te_coefficient(kz_layer, kz_sub);
    r_bot_tm = tm_coefficient(eps_layer_, kz_layer, eps_sub_, kz_sub);
    bot_te = interface_loss(kz_layer, kz_sub);
    bot_tm = interface_loss(eps_sub_ * kz_layer, eps_layer_ * kz_sub);
  }
  const complex phase = std::exp(2.0 * I * thickness_ * kz_layer);
  const double damping = -std::expm1(-4.0 * thickness_ * kz_layer.imag());  // 1 - |phase|^2
  const double p2 = std::norm(phase);

  // |1 + ab|^2 - |a + b|^2 = (1 - |a|^2)(1 - |b|^2) - 4 Im a Im b, b = phase r_bottom.
  auto stack_loss = [&](double loss_top, complex r_top, double loss_bot, complex r_bot) {
    const complex b = phase * r_bot;
    const double one_minus_b = damping + p2 * loss_bot;
    const double num = loss_top * one_minus_b - 4.0 * r_top.imag() * b.imag();
    return num / std::norm(1.0 + r_top * b);
  };
  return {stack_loss(top_te, r_top_te, bot_te, r_bot_te),
          stack_loss(top_tm, r_top_tm, bot_tm, r_bot_tm)};
}

}  // namespace casimir
