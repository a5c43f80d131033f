// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/apparatus.hpp"
#include "casimir/constants.hpp"
#include "casimir/output.hpp"
#include "casimir/run_config.hpp"
#include "casimir/sweep.hpp"
#include "oracles.hpp"

using namespace casimir;
using constants::c;
using constants::hbar;
using constants::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = seconds_since(t0);
  std::printf("%s %2d %-32s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c2 = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c2, d);
  return buf;
}

DielectricModel gold() { return DielectricModel::drude(gold_drude_params()); }
DielectricModel plasma_gold() { return DielectricModel::plasma(gold_drude_params().plasma_frequency); }

std::shared_ptr<const OpticalTable> table(const char* name) {
  return std::make_shared<const OpticalTable>(load_optical_table(data_directory() + "/" + name));
}

DielectricModel silicon() {
  static const auto t = table("si_synthetic.txt");
  return DielectricModel::tabulated(t);
}

// delta_F_fN keyed by (T1, separation).
std::map<std::pair<double, double>, double> delta_f_grid(const SweepResult& r) {
  std::size_t it1 = 0, ia = 0, idf = 0;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (r.columns[i] == "T1_K") it1 = i;
    if (r.columns[i] == "separation_m") ia = i;
    if (r.columns[i] == "delta_F_fN") idf = i;
  }
  std::map<std::pair<double, double>, double> out;
  for (const auto& row : r.rows) {
    if (!row.ok) throw std::runtime_error("grid point failed: " + row.error);
    out[{std::get<double>(row.cells[it1]), std::get<double>(row.cells[ia])}] =
        std::get<double>(row.cells[idf]);
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  std::printf("acceptance: casimir-neq %s\n", CASIMIR_VERSION);

  report(1, "ideal-mirror law", [] {
    const auto m = Reflector::ideal_mirror();
    const double a = 300e-9;
    const auto t0 = Clock::now();
    const double f = free_energy_per_area({m, m, a, 1.0}, {}).value;
    const double p = pressure_per_area({m, m, a, 1.0}, {}).value;
    const double dt = seconds_since(t0);
    const double f_ref = -pi * pi * hbar * c / (720.0 * std::pow(a, 3));
    const double p_ref = -pi * pi * hbar * c / (240.0 * std::pow(a, 4));
    const double ef = std::abs(f / f_ref - 1.0), ep = std::abs(p / p_ref - 1.0);
    return Outcome{ef < 5e-3 && ep < 5e-3 && dt < 1.0,
                   fmt("F rel err %.2e, P rel err %.2e, %.3f s", ef, ep, dt)};
  });

  report(2, "antisymmetry suite", [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> temp(250.0, 400.0), sep(200e-9, 1000e-9), wid(30e-9, 300e-9);
    const std::vector<DielectricModel> metals = {gold(), plasma_gold(), DielectricModel::drude({1.2e16, 1e14}),
                                                 DielectricModel::tabulated(table("au_synthetic.txt"))};
    auto pick = [&](int k) {
      const auto& m = metals[k % metals.size()];
      switch (k % 3) {
        case 0: return Reflector::half_space(m);
        case 1: return Reflector::overlayer(m, wid(rng), silicon());
        default: return Reflector::half_space(silicon());
      }
    };
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Reflector r1 = pick(static_cast<int>(rng() % 12));
      Reflector r2 = pick(static_cast<int>(rng() % 12));
      if (r2 == r1) r2 = Reflector::half_space(gold());
      const ThermalPair t{temp(rng), temp(rng)};
      const double a = sep(rng);
      const double fwd = neq_antisymmetric_potential(r1, r2, a, t).total;
      const double rev = neq_antisymmetric_potential(r1, r2, a, t.swapped()).total;
      const double rel = fwd == 0.0 ? std::abs(rev) : std::abs(fwd + rev) / std::abs(fwd);
      worst = std::max(worst, rel);
    }
    const double dt = seconds_since(t0);
    return Outcome{worst <= 1e-10 && dt < 300.0, fmt("worst |U12 + U21| / |U12| = %.2e", worst)};
  });

  report(3, "identical-material null", [] {
    const auto au = Reflector::half_space(gold());
    double worst = 0.0;
    for (double a : {200e-9, 500e-9, 1000e-9}) {
      const double u = neq_antisymmetric_potential(au, au, a, {350.0, 300.0}).total;
      const double f1 = free_energy_per_area({au, au, a, 350.0}, {}).value;
      const double f2 = free_energy_per_area({au, au, a, 300.0}, {}).value;
      worst = std::max(worst, std::abs(u) / std::abs(f1 - f2));
    }
    return Outcome{worst < 1e-6, fmt("worst |U| / |F(T1) - F(T2)| = %.2e", worst)};
  });

  report(4, "penetration-depth anchors", [] {
    const double d0 = penetration_depth(gold(), 5e14);
    const double dT = penetration_depth(gold(), 2e12);
    const bool ok = d0 >= 15e-9 && d0 <= 30e-9 && dT >= 130e-9 && dT <= 200e-9;
    return Outcome{ok, fmt("delta(5e14) = %.1f nm, delta(2e12) = %.1f nm", d0 * 1e9, dT * 1e9)};
  });

  report(5, "Matsubara anchor", [] {
    const double xi1 = matsubara_frequency(300.0, 1);
    const double lt = thermal_wavelength(300.0);
    const bool ok = std::abs(xi1 / 2.46e14 - 1.0) < 0.01 && lt >= 7e-6 && lt <= 8e-6;
    return Outcome{ok, fmt("xi_1 = %.4e rad/s, lambda_T = %.3f um", xi1, lt * 1e6)};
  });

  // Criteria 6 and 11 share the fig2 sweep.
  SweepResult fig2_serial;
  double fig2_seconds = 0.0;
  {
    const auto t0 = Clock::now();
    fig2_serial = run_sweep(preset_config("fig2"), 1);
    fig2_seconds = seconds_since(t0);
  }

  report(6, "Drude sweep ordering", [&] {
    const auto g = delta_f_grid(fig2_serial);
    int misordered = 0, nonpositive = 0, points = 0;
    for (const auto& [key, v] : g) {
      if (key.first != 350.0) continue;
      ++points;
      const double a = key.second;
      if (!(g.at({350.0, a}) > g.at({325.0, a}) && g.at({325.0, a}) > g.at({300.0, a}))) ++misordered;
      if (!(v > 0.0)) ++nonpositive;
    }
    auto cfg = ApparatusConfig::with_materials(gold(), silicon());
    cfg.separation = 300e-9;
    cfg.temps = {350.0, 350.0};
    const double eq350 = delta_F(cfg).delta_F * 1e15;
    const double eq300 = g.at({300.0, 300e-9});
    const double hot = g.at({350.0, 300e-9});
    const double ratio = std::abs(eq350 - eq300) / std::abs(hot);
    const bool ok = points == 17 && misordered == 0 && nonpositive == 0 && ratio < 0.2 &&
                    fig2_seconds < 1800.0;
    std::string d = std::to_string(points) + " separations, " + std::to_string(misordered) +
                    " misordered, " + std::to_string(nonpositive) + " with dF(350) <= 0; ";
    d += fmt("dF(350,300nm) = %.3f fN, |eq350 - eq300| / dF = %.3f, sweep %.1f s", hot, ratio, fig2_seconds);
    return Outcome{ok, d};
  });

  report(7, "plasma discrimination", [] {
    const auto g = delta_f_grid(run_sweep(preset_config("fig3"), 0));
    const double d300 = g.at({300.0, 300e-9}), d325 = g.at({325.0, 300e-9}), d350 = g.at({350.0, 300e-9});
    int reversed = 0, points = 0;
    for (const auto& [key, v] : g) {
      if (key.first != 300.0) continue;
      ++points;
      const double a = key.second;
      if (g.at({300.0, a}) > g.at({325.0, a}) && g.at({325.0, a}) > g.at({350.0, a})) ++reversed;
    }
    const bool ok = d350 < d300 && d300 > d325 && d325 > d350;
    std::string d = fmt("dF at 300 nm: T1=300 %.3f, 325 %.3f, 350 %.3f fN; ", d300, d325, d350);
    d += std::to_string(reversed) + "/" + std::to_string(points) + " separations in reversed order";
    return Outcome{ok, d};
  });

  report(8, "spectral claim", [] {
    const auto plate = Reflector::overlayer(gold(), 100e-9, silicon());
    const auto sphere = Reflector::half_space(gold());
    const ThermalPair t{350.0, 300.0};
    const double lo = neq_spectral_density(plate, sphere, 300e-9, t, 2e12).evanescent_te;
    const double hi = neq_spectral_density(plate, sphere, 300e-9, t, 2e14).evanescent_te;
    const auto u = neq_antisymmetric_potential(plate, sphere, 300e-9, t);
    const double ratio = std::abs(lo) / std::abs(hi);
    const double share = u.evanescent_te / std::abs(u.total);
    return Outcome{ratio >= 10.0 && share >= 0.5,
                   fmt("density ratio 2e12/2e14 = %.3g, evanescent-TE share = %.4f", ratio, share)};
  });

  report(9, "oracle equivalence", [] {
    const DrudeParams p = gold_drude_params();
    auto au_eps = [p](double w) { return oracle::drude(p.plasma_frequency, p.relaxation_rate, w); };
    auto si_eps = [](double w) { return permittivity_real_axis(silicon(), w); };
    const oracle::RealStack plate{au_eps, si_eps, 100e-9};
    const oracle::RealStack sphere{au_eps, nullptr, 0.0};
    double worst = 0.0, oracle_s = 0.0, adaptive_s = 0.0;
    for (double a : {300e-9, 600e-9}) {
      auto t0 = Clock::now();
      const double ref = oracle::neq_potential(plate, sphere, a, 350.0, 300.0, 2000, 2000).total();
      oracle_s += seconds_since(t0);
      t0 = Clock::now();
      const double u = neq_antisymmetric_potential(Reflector::overlayer(gold(), 100e-9, silicon()),
                                                   Reflector::half_space(gold()), a, {350.0, 300.0})
                           .total;
      adaptive_s = std::max(adaptive_s, seconds_since(t0));
      worst = std::max(worst, std::abs(u / ref - 1.0));
    }
    return Outcome{worst < 5e-3 && oracle_s <= 3600.0 && adaptive_s <= 60.0,
                   fmt("worst rel diff %.2e, oracle %.1f s, adaptive max %.3f s/point", worst, oracle_s,
                       adaptive_s)};
  });

  report(10, "derivative consistency", [] {
    const auto au = Reflector::half_space(gold());
    const double a = 300e-9, h = 0.1e-9;
    const double fp = free_energy_per_area({au, au, a + h, 300.0}, {}).value;
    const double fm = free_energy_per_area({au, au, a - h, 300.0}, {}).value;
    const double p = pressure_per_area({au, au, a, 300.0}, {}).value;
    const double rel = std::abs(p / (-(fp - fm) / (2.0 * h)) - 1.0);
    return Outcome{rel < 1e-3, fmt("rel diff %.2e", rel)};
  });

  report(11, "determinism", [&] {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "casimir_neq_acceptance";
    fs::create_directories(dir);
    const fs::path serial = dir / "fig2_serial.csv", parallel = dir / "fig2_parallel.csv";
    fs::remove(serial);
    fs::remove(parallel);
    const std::string bin = CASIMIR_NEQ_BINARY;
    const int s1 = std::system((bin + " run --preset fig2 --workers 1 --out " + serial.string()).c_str());
    const int s2 = std::system((bin + " run --preset fig2 --workers 8 --out " + parallel.string()).c_str());
    const std::string a = slurp(serial), b = slurp(parallel);
    std::ostringstream in_process;
    write_csv(in_process, preset_config("fig2"), fig2_serial);
    const bool ok = s1 == 0 && s2 == 0 && !a.empty() && a == b && a == in_process.str();
    return Outcome{ok, "serial vs 8 workers: " + std::string(a == b ? "identical" : "DIFFERENT") + ", " +
                           std::to_string(a.size()) + " bytes"};
  });

  std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
