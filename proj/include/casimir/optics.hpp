#pragma once

// Normal wavevectors, Fresnel coefficients and the reflection amplitude of a
// planar reflector (half-space, or a single overlayer on a substrate) on the
// real and imaginary frequency axes.

#include <array>
#include <complex>

#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { TE = 0, TM = 1 };

inline constexpr std::array<Polarization, 2> kPolarizations = {Polarization::TE,
                                                               Polarization::TM};

const char* to_string(Polarization pol);

class Reflector {
 public:
  enum class Kind { HalfSpace, Overlayer, IdealMirror };

  Reflector() : Reflector(Kind::HalfSpace, DielectricModel::vacuum(), 0.0, {}) {}

  static Reflector half_space(DielectricModel material);
  // A layer identical to its substrate collapses to a half-space; an ideal
  // mirror layer collapses to an ideal mirror.
  static Reflector overlayer(DielectricModel layer, double thickness, DielectricModel substrate);
  static Reflector ideal_mirror();

  Kind kind() const { return kind_; }
  // Half-space material, or the overlayer film.
  const DielectricModel& layer() const { return layer_; }
  const DielectricModel& substrate() const { return substrate_; }
  double thickness() const { return thickness_; }

  bool has_lossless_metal() const;
  // True if any material in the stack absorbs (finite-damping Drude or tabulated).
  bool has_dissipative_material() const;
  std::string describe() const;

  bool operator==(const Reflector&) const = default;

 private:
  Reflector(Kind kind, DielectricModel layer, double thickness, DielectricModel substrate)
      : kind_(kind), layer_(std::move(layer)), substrate_(std::move(substrate)),
        thickness_(thickness) {}

  Kind kind_;
  DielectricModel layer_;
  DielectricModel substrate_;
  double thickness_;
};

// omega may be real (real axis), purely imaginary (i xi), or a general complex
// frequency for analytic models.
struct TransverseKinematics {
  complex omega;
  double kperp = 0.0;  // 1/m
};

struct OpticsDiagnostics {
  int regularized_points = 0;  // vanishing denominators evaluated by offset
};

// k_z = sqrt(eps omega^2/c^2 - kperp^2) with Im k_z >= 0. On the imaginary
// axis returns i*q with q = sqrt(eps xi^2/c^2 + kperp^2) > 0.
complex normal_wavevector(const DielectricModel& material, const TransverseKinematics& kin);

complex fresnel(Polarization pol, const DielectricModel& a, const DielectricModel& b,
                const TransverseKinematics& kin, OpticsDiagnostics* diag = nullptr);

complex reflection_amplitude(const Reflector& refl, Polarization pol,
                             const TransverseKinematics& kin, OpticsDiagnostics* diag = nullptr);

// Branch of sqrt with non-negative imaginary part.
inline complex sqrt_upper(complex z) {
  complex r = std::sqrt(z);
  if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
  return r;
}

// Reflector frozen at one imaginary frequency xi (xi == 0 uses the analytic
// static limits of each material). Amplitudes are real.
class ImagAxisStack {
 public:
  ImagAxisStack(const Reflector& refl, double xi);

  // {R_TE, R_TM} as a function of q = sqrt(kperp^2 + xi^2/c^2).
  std::array<double, 2> amplitudes(double q) const;

 private:
  Reflector::Kind kind_;
  double shift_layer_ = 0.0;  // q_m^2 = q^2 + shift_m
  double shift_sub_ = 0.0;
  double rho_top_ = 1.0;      // eps_layer / eps_vacuum
  double rho_bottom_ = 1.0;   // eps_substrate / eps_layer
  double thickness_ = 0.0;
  bool ideal_substrate_ = false;
};

// Reflector frozen at one real frequency. Lossless metals are evaluated at
// omega (1 + i eta_relative) when eta_relative > 0.
class RealAxisStack {
 public:
  RealAxisStack(const Reflector& refl, double omega, double eta_relative = 0.0);
  RealAxisStack(const Reflector& refl, complex omega);

  // {R_TE, R_TM} given the vacuum normal wavevector and its square
  // (passed separately so k_z^2 = omega^2/c^2 - kperp^2 is never cancelled).
  std::array<complex, 2> amplitudes(complex kz_vac_sq, complex kz_vac) const;

  // {1 - |R_TE|^2, 1 - |R_TM|^2} for a propagating wave (real kz_vac >= 0),
  // from flux expressions rather than by subtracting |R|^2 from one.
  std::array<double, 2> losses(double kz_vac) const;

 private:
  void init(const Reflector& refl, complex eps_layer, complex eps_sub, complex k0_sq);

  Reflector::Kind kind_;
  complex eps_layer_ = 1.0;
  complex eps_sub_ = 1.0;
  complex shift_layer_ = 0.0;
  complex shift_sub_ = 0.0;
  double thickness_ = 0.0;
  bool ideal_substrate_ = false;
};

}  // namespace casimir
