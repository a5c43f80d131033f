#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

constexpr complex I{0.0, 1.0};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

// (1 - atan(x)/x) / x^2, stable for small x.
double tail_kernel(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;
    return 1.0 / 3.0 - x2 / 5.0 + x2 * x2 / 7.0;
  }
  return (1.0 - std::atan(x) / x) / (x * x);
}

}  // namespace

// ---------------------------------------------------------------------------
// DrudeParams

void DrudeParams::validate() const {
  if (!(plasma_frequency > 0.0) || !std::isfinite(plasma_frequency)) {
    throw DomainError("Drude plasma frequency must be positive");
  }
  if (!(relaxation_rate >= 0.0) || !std::isfinite(relaxation_rate)) {
    throw DomainError("Drude relaxation rate must be non-negative");
  }
}

complex DrudeParams::at_real(double omega) const {
  const double wp2 = plasma_frequency * plasma_frequency;
  return 1.0 - wp2 / (omega * complex(omega, relaxation_rate));
}

complex DrudeParams::at_complex(complex omega) const {
  const double wp2 = plasma_frequency * plasma_frequency;
  return 1.0 - wp2 / (omega * (omega + I * relaxation_rate));
}

double DrudeParams::at_imag(double xi) const {
  return 1.0 + plasma_frequency * plasma_frequency / (xi * (xi + relaxation_rate));
}

DrudeParams gold_drude_params() {
  return {constants::gold_plasma_frequency, constants::gold_relaxation_rate};
}

// ---------------------------------------------------------------------------
// OpticalTable

OpticalTable::OpticalTable(std::vector<OpticalRow> rows, DrudeParams low_freq_model,
                           std::string provenance)
    : rows_(std::move(rows)), low_freq_(low_freq_model), provenance_(std::move(provenance)) {
  low_freq_.validate();
  if (rows_.size() < 2) throw DomainError("optical table needs at least 2 rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (!std::isfinite(r.omega) || !std::isfinite(r.eps_real) || !std::isfinite(r.eps_imag)) {
      throw DomainError("optical table row " + std::to_string(i) + " is not finite");
    }
    if (!(r.omega > 0.0)) {
      throw DomainError("optical table row " + std::to_string(i) + " has non-positive frequency");
    }
    if (r.eps_imag < 0.0) {
      throw DomainError("optical table row " + std::to_string(i) + " has Im eps < 0");
    }
    if (i > 0 && !(r.omega > rows_[i - 1].omega)) {
      throw DomainError("optical table frequencies must be strictly increasing");
    }
  }
  background_ = rows_.front().eps_real - low_freq_.at_real(rows_.front().omega).real();
}

complex OpticalTable::at_real(double omega) const {
  if (!(omega > 0.0)) throw DomainError("permittivity requires omega > 0");
  const auto& first = rows_.front();
  const auto& last = rows_.back();
  if (omega < first.omega) {
    return low_freq_.at_real(omega) + background_;
  }
  if (omega > last.omega) {
    const double ratio = last.omega / omega;
    return {1.0 + (last.eps_real - 1.0) * ratio * ratio, last.eps_imag * ratio * ratio * ratio};
  }
  auto hi = std::upper_bound(rows_.begin(), rows_.end(), omega,
                             [](double w, const OpticalRow& r) { return w < r.omega; });
  if (hi == rows_.end()) return {last.eps_real, last.eps_imag};
  auto lo = hi - 1;
  const double s = std::log(omega / lo->omega) / std::log(hi->omega / lo->omega);
  const double re = lo->eps_real + s * (hi->eps_real - lo->eps_real);
  double im;
  if (lo->eps_imag > 0.0 && hi->eps_imag > 0.0) {
    im = lo->eps_imag * std::exp(s * std::log(hi->eps_imag / lo->eps_imag));
  } else {
    im = lo->eps_imag + s * (hi->eps_imag - lo->eps_imag);
  }
  return {re, im};
}

double OpticalTable::at_imag(double xi) const {
  if (!(xi > 0.0)) throw DomainError("imaginary-axis permittivity requires xi > 0");
  const double w0 = rows_.front().omega;
  const double wp2 = low_freq_.plasma_frequency * low_freq_.plasma_frequency;
  const double g = low_freq_.relaxation_rate;

  // Drude tail below the table: wp^2 g * Int_0^w0 dw / ((w^2+g^2)(w^2+xi^2)).
  double below;
  if (std::abs(xi - g) < 1e-6 * xi) {
    const double fprime = -w0 / (xi * (xi * xi + w0 * w0)) - std::atan(w0 / xi) / (xi * xi);
    below = -0.5 * wp2 * g * fprime / xi;
  } else {
    const double first = g > 0.0 ? std::atan(w0 / g) : constants::pi / 2;
    below = wp2 * (first - g * std::atan(w0 / xi) / xi) / (xi * xi - g * g);
  }

  // Table interior, one Gauss-Kronrod panel per interval in log(omega).
  double inside = 0.0;
  const double xi2 = xi * xi;
  auto integrand = [&](double s) {
    const double w = std::exp(s);
    const double w2 = w * w;
    return quad::Vec<1>{w2 * at_real(w).imag() / (w2 + xi2)};
  };
  for (std::size_t i = 0; i + 1 < rows_.size(); ++i) {
    const auto panel = quad::detail::apply_rule<1>(integrand, std::log(rows_[i].omega),
                                                   std::log(rows_[i + 1].omega));
    inside += panel.value[0];
  }

  // omega^-3 closure above the table.
  const auto& last = rows_.back();
  const double above = last.eps_imag * tail_kernel(xi / last.omega);

  return 1.0 + (2.0 / constants::pi) * (below + inside + above);
}

// ---------------------------------------------------------------------------
// Ingestion

OpticalTable ingest_optical_table(std::istream& source, std::optional<TableFormat> format,
                                  std::optional<DrudeParams> low_freq_model) {
  std::optional<double> unit_scale;
  std::optional<TableFormat> header_format;
  std::string provenance;
  std::optional<double> file_wp, file_gamma;
  std::map<double, std::pair<OpticalRow, int>> merged;  // omega -> (sum, count)

  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      const std::string key = lower(trim(text.substr(0, colon)));
      const std::string value = trim(text.substr(colon + 1));
      auto number = [&]() {
        try {
          std::size_t used = 0;
          const double v = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
          return v;
        } catch (const std::exception&) {
          throw DomainError("line " + std::to_string(line_no) + ": bad number for " + key);
        }
      };
      if (key == "units") {
        const std::string v = lower(value);
        if (v == "ev") {
          unit_scale = constants::ev_to_rad_s;
        } else if (v == "rad_s" || v == "rad/s") {
          unit_scale = 1.0;
        } else {
          throw DomainError("line " + std::to_string(line_no) + ": unknown units '" + value + "'");
        }
      } else if (key == "format") {
        const std::string v = lower(value);
        if (v == "nk") {
          header_format = TableFormat::NK;
        } else if (v == "eps") {
          header_format = TableFormat::Eps;
        } else {
          throw DomainError("line " + std::to_string(line_no) + ": unknown format '" + value + "'");
        }
      } else if (key == "provenance") {
        provenance = value;
      } else if (key == "drude_plasma_ev") {
        file_wp = number() * constants::ev_to_rad_s;
      } else if (key == "drude_gamma_ev") {
        file_gamma = number() * constants::ev_to_rad_s;
      } else {
        throw DomainError("line " + std::to_string(line_no) + ": unknown header key '" + key + "'");
      }
      continue;
    }

    if (!unit_scale) {
      throw DomainError("line " + std::to_string(line_no) + ": data before 'units:' header");
    }
    if (format && header_format && *format != *header_format) {
      throw DomainError("table format header disagrees with requested format");
    }
    const auto fmt = header_format ? header_format : format;
    if (!fmt) throw DomainError("line " + std::to_string(line_no) + ": data before 'format:' header");

    std::istringstream row(text);
    double x, v1, v2;
    if (!(row >> x >> v1 >> v2)) {
      throw DomainError("line " + std::to_string(line_no) + ": expected three numbers");
    }
    std::string extra;
    if (row >> extra) {
      throw DomainError("line " + std::to_string(line_no) + ": trailing text '" + extra + "'");
    }
    if (!std::isfinite(x) || !std::isfinite(v1) || !std::isfinite(v2)) {
      throw DomainError("line " + std::to_string(line_no) + ": non-finite value");
    }
    if (!(x > 0.0)) {
      throw DomainError("line " + std::to_string(line_no) + ": frequency must be positive");
    }
    OpticalRow r{x * *unit_scale, v1, v2};
    if (*fmt == TableFormat::NK) {
      if (v2 < 0.0) {
        throw DomainError("line " + std::to_string(line_no) + ": negative extinction coefficient k");
      }
      const complex eps = complex(v1, v2) * complex(v1, v2);
      r.eps_real = eps.real();
      r.eps_imag = 2.0 * v1 * v2;
    }
    if (r.eps_imag < 0.0) {
      throw DomainError("line " + std::to_string(line_no) + ": Im eps < 0 violates passivity");
    }
    auto [it, inserted] = merged.try_emplace(r.omega, r, 1);
    if (!inserted) {
      it->second.first.eps_real += r.eps_real;
      it->second.first.eps_imag += r.eps_imag;
      it->second.second += 1;
    }
  }
  if (!unit_scale) throw DomainError("optical table is missing the 'units:' header");

  std::vector<OpticalRow> rows;
  rows.reserve(merged.size());
  for (const auto& [omega, entry] : merged) {
    const auto& [sum, count] = entry;
    rows.push_back({omega, sum.eps_real / count, sum.eps_imag / count});
  }

  DrudeParams tail;
  if (file_wp) {
    tail = {*file_wp, file_gamma.value_or(0.0)};
  } else if (low_freq_model) {
    tail = *low_freq_model;
  } else {
    throw DomainError("optical table has no low-frequency Drude model");
  }
  return OpticalTable(std::move(rows), tail, provenance);
}

OpticalTable load_optical_table(const std::string& path, std::optional<DrudeParams> low_freq_model) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open optical table '" + path + "'");
  try {
    return ingest_optical_table(in, std::nullopt, low_freq_model);
  } catch (const DomainError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

std::string data_directory() {
  if (const char* env = std::getenv("CASIMIR_NEQ_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
#ifdef CASIMIR_DEFAULT_DATA_DIR
  return CASIMIR_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

// ---------------------------------------------------------------------------
// DielectricModel

DielectricModel DielectricModel::drude(DrudeParams params) {
  params.validate();
  return DielectricModel(Drude{params});
}

DielectricModel DielectricModel::plasma(double plasma_frequency) {
  DrudeParams{plasma_frequency, 0.0}.validate();
  return DielectricModel(Plasma{plasma_frequency});
}

DielectricModel DielectricModel::tabulated(std::shared_ptr<const OpticalTable> table) {
  if (!table) throw DomainError("tabulated model needs a table");
  return DielectricModel(Tabulated{std::move(table)});
}

bool DielectricModel::is_lossless_metal() const {
  if (std::holds_alternative<Plasma>(variant_)) return true;
  if (const auto* d = std::get_if<Drude>(&variant_)) return d->params.relaxation_rate == 0.0;
  return false;
}

bool DielectricModel::is_dissipative() const {
  if (std::holds_alternative<Tabulated>(variant_)) return true;
  if (const auto* d = std::get_if<Drude>(&variant_)) return d->params.relaxation_rate > 0.0;
  return false;
}

complex DielectricModel::at_real(double omega) const {
  if (!(omega > 0.0)) throw DomainError("permittivity requires omega > 0");
  struct Visitor {
    double omega;
    complex operator()(const Vacuum&) const { return 1.0; }
    complex operator()(const Drude& d) const { return d.params.at_real(omega); }
    complex operator()(const Plasma& p) const {
      return 1.0 - p.plasma_frequency * p.plasma_frequency / (omega * omega);
    }
    complex operator()(const Tabulated& t) const { return t.table->at_real(omega); }
    complex operator()(const IdealMirror&) const {
      return {-std::numeric_limits<double>::infinity(), 0.0};
    }
  };
  return std::visit(Visitor{omega}, variant_);
}

complex DielectricModel::at_complex(complex omega) const {
  if (omega.real() == 0.0) return at_imag(omega.imag());
  if (omega.imag() == 0.0) return at_real(omega.real());
  struct Visitor {
    complex omega;
    complex operator()(const Vacuum&) const { return 1.0; }
    complex operator()(const Drude& d) const { return d.params.at_complex(omega); }
    complex operator()(const Plasma& p) const {
      return 1.0 - p.plasma_frequency * p.plasma_frequency / (omega * omega);
    }
    complex operator()(const Tabulated&) const {
      throw DomainError("tabulated permittivity is defined only on the real and imaginary axes");
    }
    complex operator()(const IdealMirror&) const {
      return {std::numeric_limits<double>::infinity(), 0.0};
    }
  };
  return std::visit(Visitor{omega}, variant_);
}

double DielectricModel::at_imag(double xi) const {
  if (!(xi > 0.0)) throw DomainError("imaginary-axis permittivity requires xi > 0");
  struct Visitor {
    double xi;
    double operator()(const Vacuum&) const { return 1.0; }
    double operator()(const Drude& d) const { return d.params.at_imag(xi); }
    double operator()(const Plasma& p) const {
      return 1.0 + p.plasma_frequency * p.plasma_frequency / (xi * xi);
    }
    double operator()(const Tabulated& t) const { return t.table->at_imag(xi); }
    double operator()(const IdealMirror&) const { return std::numeric_limits<double>::infinity(); }
  };
  return std::visit(Visitor{xi}, variant_);
}

StaticLimit DielectricModel::static_limit() const {
  auto from_drude = [](const DrudeParams& p) {
    const double wp2 = p.plasma_frequency * p.plasma_frequency;
    if (p.relaxation_rate == 0.0) return StaticLimit{StaticLimit::Kind::Plasma, wp2};
    return StaticLimit{StaticLimit::Kind::Conductor, wp2 / p.relaxation_rate};
  };
  struct Visitor {
    decltype(from_drude)& drude;
    StaticLimit operator()(const Vacuum&) const { return {StaticLimit::Kind::Dielectric, 1.0}; }
    StaticLimit operator()(const Drude& d) const { return drude(d.params); }
    StaticLimit operator()(const Plasma& p) const {
      return {StaticLimit::Kind::Plasma, p.plasma_frequency * p.plasma_frequency};
    }
    StaticLimit operator()(const Tabulated& t) const { return drude(t.table->low_freq_model()); }
    StaticLimit operator()(const IdealMirror&) const { return {StaticLimit::Kind::IdealMirror, 0.0}; }
  };
  return std::visit(Visitor{from_drude}, variant_);
}

std::string DielectricModel::describe() const {
  std::ostringstream out;
  out << std::setprecision(6);
  struct Visitor {
    std::ostringstream& out;
    void operator()(const Vacuum&) const { out << "vacuum"; }
    void operator()(const Drude& d) const {
      out << "drude(wp=" << d.params.plasma_frequency << " rad/s, gamma="
          << d.params.relaxation_rate << " rad/s)";
    }
    void operator()(const Plasma& p) const { out << "plasma(wp=" << p.plasma_frequency << " rad/s)"; }
    void operator()(const Tabulated& t) const {
      out << "tabulated(" << t.table->rows().size() << " rows";
      if (!t.table->provenance().empty()) out << ", " << t.table->provenance();
      out << ")";
    }
    void operator()(const IdealMirror&) const { out << "ideal-mirror"; }
  };
  std::visit(Visitor{out}, variant_);
  return out.str();
}

complex permittivity_real_axis(const DielectricModel& model, double omega) {
  return model.at_real(omega);
}

double permittivity_imag_axis(const DielectricModel& model, double xi) {
  return model.at_imag(xi);
}

double penetration_depth(const DielectricModel& model, double omega) {
  if (!(omega > 0.0)) throw DomainError("penetration depth requires omega > 0");
  if (model.is_ideal_mirror()) return 0.0;
  const complex n = std::sqrt(model.at_real(omega));
  const double kappa = std::abs(n.imag());
  if (kappa == 0.0) return std::numeric_limits<double>::infinity();
  return constants::c / (omega * kappa);
}

}  // namespace casimir
