#pragma once

// Periodic points by multi-start Newton on P^n(z) - z.
//
// Expanding P^n symbolically is hopeless (degree 2^n with fast-growing
// coefficients), so roots are found by Newton iteration from a uniform grid
// of seeds, verified by residual, and deduplicated by a sort-then-merge pass
// whose result does not depend on seed order. Seed rows interleave across
// workers into per-worker buffers; the final sort makes the output identical
// for every worker count. Missing roots are reported, never papered over:
// the result carries the expected count 2^n and the found count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

#include "cremerlab/errors.hpp"
#include "cremerlab/quadratic.hpp"

namespace cremerlab {

struct periodic_point {
  std::complex<double> z;
  std::complex<double> multiplier;  // derivative of P^n at z
  double residual = 0.0;            // |P^n(z) - z|
};

struct periodic_point_set {
  unsigned period = 0;
  std::vector<periodic_point> points;  // sorted by (re, im)
  std::size_t expected = 0;            // 2^period
  bool complete = false;               // points.size() == expected
};

inline constexpr unsigned max_periodic_order = 12;

inline periodic_point_set periodic_points(const quadratic_map& map, unsigned n,
                                          unsigned grid_size = 0, double box_radius = 2.0,
                                          unsigned workers = 1) {
  if (n == 0 || n > max_periodic_order)
    fail(errc::invalid_argument,
         "period must be in [1, " + std::to_string(max_periodic_order) + "]");
  if (grid_size == 0) {
    // enough seeds to give every root a fair basin: ~8 per expected root
    std::size_t want = (std::size_t{8} << n);
    grid_size = 16;
    while (static_cast<std::size_t>(grid_size) * grid_size < want && grid_size < 256)
      grid_size *= 2;
  }
  if (workers == 0) workers = 1;
  if (workers > grid_size) workers = grid_size;

  const double residual_tol = 1e-9;
  const double dedup_tol = 1e-9;

  auto hunt_rows = [&map, n, grid_size, box_radius, residual_tol](
                       unsigned first_row, unsigned stride,
                       std::vector<std::complex<double>>& found) {
    for (unsigned gy = first_row; gy < grid_size; gy += stride) {
      for (unsigned gx = 0; gx < grid_size; ++gx) {
        double x = -box_radius + 2.0 * box_radius * (gx + 0.5) / grid_size;
        double y = -box_radius + 2.0 * box_radius * (gy + 0.5) / grid_size;
        std::complex<double> z{x, y};
        bool ok = false;
        for (int it = 0; it < 80; ++it) {
          auto [v, d] = map.iterate_with_derivative(z, n);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1e12) break;
          std::complex<double> f = v - z;
          std::complex<double> fp = d - 1.0;
          if (fp == std::complex<double>{0.0, 0.0}) break;
          std::complex<double> step = f / fp;
          z -= step;
          if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) { ok = true; break; }
        }
        if (!ok) continue;
        auto [v, d] = map.iterate_with_derivative(z, n);
        (void)d;
        if (std::abs(v - z) < residual_tol) found.push_back(z);
      }
    }
  };

  std::vector<std::vector<std::complex<double>>> buckets(workers);
  if (workers == 1) {
    hunt_rows(0, 1, buckets[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back(hunt_rows, t, workers, std::ref(buckets[t]));
    for (auto& th : pool) th.join();
  }

  std::vector<std::complex<double>> roots;
  for (const auto& bucket : buckets) roots.insert(roots.end(), bucket.begin(), bucket.end());
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<std::complex<double>> unique;
  for (auto z : roots) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
      if (z.real() - it->real() > dedup_tol) break;  // sorted by real part
      if (std::abs(z - *it) < dedup_tol) { dup = true; break; }
    }
    if (!dup) unique.push_back(z);
  }

  periodic_point_set out;
  out.period = n;
  out.expected = std::size_t{1} << n;
  out.points.reserve(unique.size());
  for (auto z : unique) {
    auto [v, d] = map.iterate_with_derivative(z, n);
    out.points.push_back(periodic_point{z, d, std::abs(v - z)});
  }
  out.complete = out.points.size() == out.expected;
  return out;
}

}  // namespace cremerlab
