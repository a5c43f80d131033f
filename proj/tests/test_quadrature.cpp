#include <cmath>

#include "casimir/quadrature.hpp"
#include "doctest.h"

using namespace casimir;

TEST_CASE("polynomials up to degree 13 are exact on one panel") {
  quad::Options opts;
  opts.relative_tolerance = 1e-14;
  const auto r = quad::integrate_scalar([](double x) { return std::pow(x, 13) + 3.0 * x * x; },
                                        0.0, 2.0, opts);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(std::pow(2.0, 14) / 14.0 + 8.0).epsilon(1e-14));
  CHECK(r.subdivisions == 0);
}

TEST_CASE("exponential tail and endpoint singularity") {
  quad::Options opts;
  opts.relative_tolerance = 1e-12;
  auto e = quad::integrate_scalar([](double x) { return std::exp(-x); }, 0.0, 40.0, opts);
  CHECK(e.value[0] == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-12));

  opts.min_width_fraction = 1e-30;
  auto s = quad::integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
  CHECK(s.converged);
  CHECK(s.value[0] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("vector components share panels") {
  quad::Options opts;
  opts.relative_tolerance = 1e-12;
  auto r = quad::integrate<2>(
      [](double x) { return quad::Vec<2>{std::sin(x), std::cos(x)}; }, 0.0, M_PI, opts);
  CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(r.value[1]) < 1e-12);
}

TEST_CASE("budget exhaustion is reported with the worst panel") {
  quad::Options opts;
  opts.relative_tolerance = 1e-15;
  opts.max_subdivisions = 3;
  auto r = quad::integrate_scalar([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions == 3);
  CHECK(r.worst_hi > r.worst_lo);
  CHECK(r.worst_error > 0.0);
}

TEST_CASE("repeat evaluation is bit identical") {
  quad::Options opts;
  opts.relative_tolerance = 1e-10;
  opts.initial_panels = 5;
  auto f = [](double x) { return std::log(x) * std::exp(-x * x); };
  auto a = quad::integrate_scalar(f, 1e-6, 5.0, opts);
  auto b = quad::integrate_scalar(f, 1e-6, 5.0, opts);
  CHECK(a.value[0] == b.value[0]);
  CHECK(a.error == b.error);
}
