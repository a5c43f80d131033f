#pragma once

// Dielectric response of the bodies: Drude and plasma metals, tabulated
// optical data with low/high frequency closures, vacuum, ideal mirrors.

#include <complex>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

using complex = std::complex<double>;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DrudeParams {
  double plasma_frequency = 0.0;  // rad/s
  double relaxation_rate = 0.0;   // rad/s; zero is the plasma model

  void validate() const;
  complex at_real(double omega) const;
  complex at_complex(complex omega) const;
  double at_imag(double xi) const;
  bool operator==(const DrudeParams&) const = default;
};

struct OpticalRow {
  double omega;  // rad/s
  double eps_real;
  double eps_imag;
  bool operator==(const OpticalRow&) const = default;
};

// Tabulated permittivity on the real frequency axis.
//
// Inside the table Im eps is interpolated log-log and Re eps linearly in
// log(omega). Below the first row the Drude form of `low_freq_model` is used,
// shifted by a constant so that Re eps is continuous at the first row. Above
// the last row Im eps falls as omega^-3 and Re eps approaches 1 as omega^-2.
class OpticalTable {
 public:
  OpticalTable(std::vector<OpticalRow> rows, DrudeParams low_freq_model,
               std::string provenance = {});

  const std::vector<OpticalRow>& rows() const { return rows_; }
  const DrudeParams& low_freq_model() const { return low_freq_; }
  const std::string& provenance() const { return provenance_; }

  complex at_real(double omega) const;
  // Kramers-Kronig continuation to the imaginary axis.
  double at_imag(double xi) const;

  bool operator==(const OpticalTable& other) const {
    return rows_ == other.rows_ && low_freq_ == other.low_freq_;
  }

 private:
  std::vector<OpticalRow> rows_;
  DrudeParams low_freq_;
  std::string provenance_;
  double background_ = 0.0;  // constant added to the sub-table Drude tail
};

enum class TableFormat { NK, Eps };

// Reads the optical-data text format:
//   # comment
//   units: eV | rad_s
//   format: nk | eps
//   [provenance: free text]
//   [drude_plasma_eV: <value>]  [drude_gamma_eV: <value>]
//   <frequency> <value1> <value2>
// `format` overrides a missing header; a header that disagrees is an error.
// `low_freq_model` is used unless the file supplies drude_* keys.
OpticalTable ingest_optical_table(std::istream& source,
                                  std::optional<TableFormat> format,
                                  std::optional<DrudeParams> low_freq_model);

OpticalTable load_optical_table(const std::string& path,
                                std::optional<DrudeParams> low_freq_model = {});

// How eps(i xi) behaves as xi -> 0; drives the zero-frequency Matsubara term.
struct StaticLimit {
  enum class Kind { Dielectric, Conductor, Plasma, IdealMirror };
  Kind kind;
  // Dielectric: eps(0). Conductor: lim xi*eps = wp^2/gamma.
  // Plasma: lim xi^2*eps = wp^2.
  double value;
};

class DielectricModel {
 public:
  struct Vacuum {
    bool operator==(const Vacuum&) const = default;
  };
  struct Drude {
    DrudeParams params;
    bool operator==(const Drude&) const = default;
  };
  struct Plasma {
    double plasma_frequency;
    bool operator==(const Plasma&) const = default;
  };
  struct Tabulated {
    std::shared_ptr<const OpticalTable> table;
    bool operator==(const Tabulated& other) const {
      return table == other.table || (table && other.table && *table == *other.table);
    }
  };
  struct IdealMirror {
    bool operator==(const IdealMirror&) const = default;
  };
  using Variant = std::variant<Vacuum, Drude, Plasma, Tabulated, IdealMirror>;

  DielectricModel() : variant_(Vacuum{}) {}

  static DielectricModel vacuum() { return DielectricModel(Vacuum{}); }
  static DielectricModel drude(DrudeParams params);
  static DielectricModel plasma(double plasma_frequency);
  static DielectricModel tabulated(std::shared_ptr<const OpticalTable> table);
  static DielectricModel ideal_mirror() { return DielectricModel(IdealMirror{}); }

  const Variant& variant() const { return variant_; }
  bool is_vacuum() const { return std::holds_alternative<Vacuum>(variant_); }
  bool is_ideal_mirror() const { return std::holds_alternative<IdealMirror>(variant_); }
  // True for models with Im eps identically zero on the real axis (plasma).
  bool is_lossless_metal() const;
  bool is_dissipative() const;

  // eps(omega), omega > 0.
  complex at_real(double omega) const;
  // eps at a complex frequency; analytic models only.
  complex at_complex(complex omega) const;
  // eps(i xi), xi > 0.
  double at_imag(double xi) const;
  StaticLimit static_limit() const;

  std::string describe() const;

  bool operator==(const DielectricModel&) const = default;

 private:
  explicit DielectricModel(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

complex permittivity_real_axis(const DielectricModel& model, double omega);
double permittivity_imag_axis(const DielectricModel& model, double xi);

// Field-amplitude decay length c / (omega Im sqrt(eps)); +inf when lossless.
double penetration_depth(const DielectricModel& model, double omega);

// Gold: omega_p = 8.9 eV, gamma = 0.035 eV.
DrudeParams gold_drude_params();

// Directory holding the shipped optical tables; CASIMIR_NEQ_DATA_DIR overrides.
std::string data_directory();

}  // namespace casimir
