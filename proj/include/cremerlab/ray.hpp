#pragma once

// External ray tracing by dyadic continuation.
//
// Level k of the ray at angle theta sits at external radius R0^(2^-k) with
// external argument 2^k theta: the point z_k solves P^k(z) = R0 e^(2 pi i
// sigma^k theta). The tracer interpolates between levels with a continuous
// parameter s measured in substeps (S per level): at parameter s it solves
//
//   P^j(z) = exp(g_j(s)) e^(2 pi i sigma^j theta),  j = ceil(s / S),
//   g_j(s) = log(R0) * 2^(j - s / S),
//
// by Newton's method seeded at the previous accepted point. The doubling
// orbit sigma^j theta is exact rational arithmetic; float doubling loses the
// argument entirely after ~50 levels.
//
// Two safeguards keep the continuation on its branch:
//  - a step is accepted only when the move stays inside a trust radius of
//    half the distance between the last two completed level points (far
//    apart levels mean the ray is still sweeping inward; nearby levels mean
//    any large jump is a branch hop);
//  - a rejected or non-convergent step is bisected, up to a fixed number of
//    halvings, after which the trace reports divergence at that level and
//    keeps the partial trace.
//
// Tracing stops as soon as consecutive level points agree within the
// landing tolerance. Beyond that point the remaining potentials are below
// double resolution and P^j applied to sub-epsilon perturbations only
// amplifies noise until it overflows.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "cremerlab/angle.hpp"
#include "cremerlab/errors.hpp"
#include "cremerlab/quadratic.hpp"

namespace cremerlab {

enum class ray_status { converged, not_converged, diverged };

inline const char* ray_status_name(ray_status s) {
  switch (s) {
    case ray_status::converged: return "converged";
    case ray_status::not_converged: return "not_converged";
    case ray_status::diverged: return "diverged";
  }
  return "unknown";
}

struct ray_trace {
  angle external_angle;
  std::vector<std::complex<double>> points;  // one per substep, far field first
  std::vector<std::complex<double>> levels;  // completed level points; levels[k] solves depth k
  std::optional<std::complex<double>> landing_estimate;
  unsigned depth_reached = 0;  // deepest completed level
  ray_status status = ray_status::not_converged;
  unsigned failed_level = 0;   // the level being refined when status == diverged
  double final_gap = std::numeric_limits<double>::infinity();  // |levels[k] - levels[k-1]| last seen
};

namespace detail {

struct newton_result {
  std::complex<double> z;
  bool ok = false;
};

// Solve P^j(z) = w near the seed. Relative step tolerance 1e-13, hard
// overflow cap on forward iterates.
inline newton_result newton_pullback(const quadratic_map& map, unsigned j,
                                     std::complex<double> w, std::complex<double> seed) {
  std::complex<double> z = seed;
  for (int it = 0; it < 60; ++it) {
    std::complex<double> v = z, d{1.0, 0.0};
    bool blown = false;
    for (unsigned i = 0; i < j; ++i) {
      d = map.derivative(v) * d;
      v = map.evaluate(v);
      if (std::abs(v) > 1e150 || std::abs(d) > 1e290) { blown = true; break; }
    }
    if (blown || !std::isfinite(v.real()) || !std::isfinite(v.imag())) return {z, false};
    std::complex<double> num = v - w;
    if (d == std::complex<double>{0.0, 0.0}) return {z, false};
    std::complex<double> step = num / d;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return {z, false};
    if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(z))) return {z, true};
  }
  return {z, false};
}

}  // namespace detail

inline ray_trace trace_ray(const quadratic_map& map, const angle& theta, unsigned depth,
                           unsigned steps_per_level = 4, double start_radius = 1e6,
                           double landing_tol = 1e-9) {
  if (depth == 0) fail(errc::invalid_argument, "ray depth must be >= 1");
  if (steps_per_level == 0) fail(errc::invalid_argument, "steps_per_level must be >= 1");
  if (start_radius < 10.0) fail(errc::invalid_argument, "start radius must be >= 10");

  const double s_per_level = static_cast<double>(steps_per_level);
  const double log_r0 = std::log(start_radius);

  // sigma^j theta as unit vectors, exact doubling underneath.
  std::vector<std::complex<double>> arg_dir(depth + 1);
  {
    angle t = theta;
    for (unsigned j = 0; j <= depth; ++j) {
      arg_dir[j] = std::polar(1.0, 2.0 * std::numbers::pi * t.to_double());
      t = t.doubled();
    }
  }

  auto target_at = [&](double s) -> std::pair<unsigned, std::complex<double>> {
    auto j = static_cast<unsigned>(std::ceil(s / s_per_level - 1e-12));
    if (j > depth) j = depth;
    double g = log_r0 * std::exp2(static_cast<double>(j) - s / s_per_level);
    return {j, std::exp(g) * arg_dir[j]};
  };

  ray_trace trace;
  trace.external_angle = theta;
  std::complex<double> z = start_radius * arg_dir[0];
  trace.points.push_back(z);
  trace.levels.push_back(z);

  double trust = std::numeric_limits<double>::infinity();
  for (unsigned sub = 1; sub <= depth * steps_per_level; ++sub) {
    const double s_lo = static_cast<double>(sub - 1);
    const double s_hi = static_cast<double>(sub);
    double s = s_lo;
    std::complex<double> cur = z;
    double step = 1.0;
    int bisections = 0;
    bool stuck = false;

    while (s < s_hi && !stuck) {
      double s_next = std::min(s + step, s_hi);
      auto [j, w] = target_at(s_next);
      auto r = detail::newton_pullback(map, j, w, cur);
      bool within_trust = r.ok && std::abs(r.z - cur) <= trust;
      if (within_trust) {
        s = s_next;
        cur = r.z;
        step = std::min(step * 2.0, 1.0);
      } else {
        step *= 0.5;
        if (++bisections > 40) stuck = true;
      }
    }

    if (stuck) {
      trace.status = ray_status::diverged;
      trace.failed_level = (sub + steps_per_level - 1) / steps_per_level;
      return trace;
    }

    z = cur;
    trace.points.push_back(z);
    if (sub % steps_per_level == 0) {
      trace.levels.push_back(z);
      unsigned k = sub / steps_per_level;
      trace.depth_reached = k;
      double gap = std::abs(trace.levels[k] - trace.levels[k - 1]);
      trace.final_gap = gap;
      trust = std::max(0.5 * gap, 1e-11 * std::max(1.0, std::abs(z)));
      if (gap < landing_tol) {
        trace.status = ray_status::converged;
        trace.landing_estimate = z;
        return trace;
      }
    }
  }

  trace.status = ray_status::not_converged;
  return trace;
}

}  // namespace cremerlab
