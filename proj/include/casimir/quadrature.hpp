#pragma once

// Globally adaptive Gauss-Kronrod (G7/K15) integration of vector-valued
// integrands on a finite interval.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace casimir::quad {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Options {
  double relative_tolerance = 1e-8;
  double absolute_tolerance = 0.0;
  int max_subdivisions = 1000;
  int initial_panels = 1;
  // Panels narrower than this fraction of the full interval are never split.
  double min_width_fraction = 1e-6;
};

template <std::size_t N>
struct Result {
  Vec<N> value{};
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = false;
  // Panel carrying the largest error estimate when the loop stopped.
  double worst_lo = 0.0;
  double worst_hi = 0.0;
  double worst_error = 0.0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double lo, hi;
  Vec<N> value;
  double error;
  bool operator<(const Panel& other) const {
    if (error != other.error) return error < other.error;
    return lo > other.lo;  // deterministic tie-break
  }
};

template <std::size_t N, class F>
Panel<N> apply_rule(F& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Vec<N> kronrod{};
  Vec<N> gauss{};

  const Vec<N> fc = f(centre);
  for (std::size_t i = 0; i < N; ++i) {
    kronrod[i] = kronrod_weights[7] * fc[i];
    gauss[i] = gauss_weights[3] * fc[i];
  }
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const Vec<N> f1 = f(centre - dx);
    const Vec<N> f2 = f(centre + dx);
    for (std::size_t i = 0; i < N; ++i) {
      const double sum = f1[i] + f2[i];
      kronrod[i] += kronrod_weights[j] * sum;
      if (j % 2 == 1) gauss[i] += gauss_weights[j / 2] * sum;
    }
  }
  Panel<N> panel{lo, hi, {}, 0.0};
  for (std::size_t i = 0; i < N; ++i) {
    panel.value[i] = kronrod[i] * half;
    panel.error += std::abs((kronrod[i] - gauss[i]) * half);
  }
  return panel;
}

}  // namespace detail

// Integrates f over [lo, hi]. The tolerance test compares the summed error
// estimate against max(absolute_tolerance, relative_tolerance * sum_i |I_i|).
template <std::size_t N, class F>
Result<N> integrate(F&& f, double lo, double hi, const Options& opts) {
  using Panel = detail::Panel<N>;
  Result<N> result;
  std::priority_queue<Panel> queue;
  std::vector<Panel> frozen;

  const int initial = opts.initial_panels < 1 ? 1 : opts.initial_panels;
  const double width = (hi - lo) / initial;
  const double min_width = std::abs(hi - lo) * opts.min_width_fraction;
  for (int p = 0; p < initial; ++p) {
    const double a = lo + p * width;
    const double b = (p + 1 == initial) ? hi : lo + (p + 1) * width;
    queue.push(detail::apply_rule<N>(f, a, b));
    result.evaluations += 15;
  }

  auto totals = [&](Vec<N>& value, double& error) {
    value.fill(0.0);
    error = 0.0;
    // Fixed-order reduction: sort panels by position so the sum does not
    // depend on heap layout.
    std::vector<const Panel*> all;
    auto copy = queue;
    std::vector<Panel> live;
    while (!copy.empty()) {
      live.push_back(copy.top());
      copy.pop();
    }
    for (const auto& p : live) all.push_back(&p);
    for (const auto& p : frozen) all.push_back(&p);
    std::sort(all.begin(), all.end(),
              [](const Panel* x, const Panel* y) { return x->lo < y->lo; });
    for (const Panel* p : all) {
      for (std::size_t i = 0; i < N; ++i) value[i] += p->value[i];
      error += p->error;
    }
  };

  Vec<N> value{};
  double error = 0.0;
  double running_error = 0.0;
  Vec<N> running{};
  {
    auto copy = queue;
    while (!copy.empty()) {
      for (std::size_t i = 0; i < N; ++i) running[i] += copy.top().value[i];
      running_error += copy.top().error;
      copy.pop();
    }
  }

  auto tolerance = [&](const Vec<N>& v) {
    double magnitude = 0.0;
    for (double x : v) magnitude += std::abs(x);
    return std::max(opts.absolute_tolerance, opts.relative_tolerance * magnitude);
  };

  while (true) {
    if (running_error <= tolerance(running)) {
      result.converged = true;
      break;
    }
    if (queue.empty()) break;
    if (result.subdivisions >= opts.max_subdivisions) break;
    Panel worst = queue.top();
    queue.pop();
    if (worst.hi - worst.lo <= min_width) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = detail::apply_rule<N>(f, worst.lo, mid);
    Panel right = detail::apply_rule<N>(f, mid, worst.hi);
    result.evaluations += 30;
    ++result.subdivisions;
    for (std::size_t i = 0; i < N; ++i) {
      running[i] += left.value[i] + right.value[i] - worst.value[i];
    }
    running_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  totals(value, error);
  result.value = value;
  result.error = error;
  if (!result.converged) result.converged = error <= tolerance(value);
  const Panel* worst = nullptr;
  if (!queue.empty()) worst = &queue.top();
  for (const auto& p : frozen) {
    if (worst == nullptr || p.error > worst->error) worst = &p;
  }
  if (worst != nullptr) {
    result.worst_lo = worst->lo;
    result.worst_hi = worst->hi;
    result.worst_error = worst->error;
  }
  return result;
}

// Scalar convenience wrapper.
template <class F>
Result<1> integrate_scalar(F&& f, double lo, double hi, const Options& opts) {
  return integrate<1>([&](double x) { return Vec<1>{f(x)}; }, lo, hi, opts);
}

}  // namespace casimir::quad
