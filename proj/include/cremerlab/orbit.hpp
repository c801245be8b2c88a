#pragma once

// Finite orbit segments and the one-sided Hausdorff semidistance on point
// samples.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "cremerlab/errors.hpp"
#include "cremerlab/quadratic.hpp"

namespace cremerlab {

struct orbit_cloud {
  std::vector<std::complex<double>> points;
  std::string origin;  // "critical orbit" or "preimage cloud"
};

// The first `count` forward images of the critical point. For rotation
// parameters with a Siegel disk the segment samples the disk boundary; an
// orbit leaving the escape radius signals other parameters or float blowup.
inline orbit_cloud critical_orbit(const quadratic_map& map, std::size_t count,
                                  double escape_radius = default_escape_radius) {
  if (count == 0) fail(errc::invalid_argument, "orbit length must be >= 1");
  orbit_cloud cloud{{}, "critical orbit"};
  cloud.points.reserve(count);
  std::complex<double> z = map.critical_point();
  for (std::size_t i = 0; i < count; ++i) {
    z = map.evaluate(z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > escape_radius)
      fail(errc::overflow_escape,
           "critical orbit left |z| <= " + std::to_string(escape_radius) + " at step " +
               std::to_string(i + 1));
    cloud.points.push_back(z);
  }
  return cloud;
}

// Pointwise image under the involution -lambda - z.
inline orbit_cloud involution_cloud(const quadratic_map& map, const orbit_cloud& cloud) {
  orbit_cloud out{{}, "preimage cloud"};
  out.points.reserve(cloud.points.size());
  for (auto z : cloud.points) out.points.push_back(map.involution(z));
  return out;
}

// sup over a in A of dist(a, B). Asymmetric: a zero value means A lies in
// the closed 0-neighborhood of B, not the converse.
inline double semidistance(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b) {
  if (a.empty() || b.empty()) fail(errc::empty_set, "semidistance needs two nonempty samples");

  std::vector<std::complex<double>> sorted_b(b);
  std::sort(sorted_b.begin(), sorted_b.end(), [](auto l, auto r) {
    return l.real() < r.real() || (l.real() == r.real() && l.imag() < r.imag());
  });

  double worst_sq = 0.0;
  for (auto p : a) {
    // Nearest neighbour among points whose real part is within the current
    // best distance; the window grows outward from the insertion point.
    auto it = std::lower_bound(sorted_b.begin(), sorted_b.end(), p.real(),
                               [](auto l, double x) { return l.real() < x; });
    double best_sq = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::complex<double>& q) {
      double d = std::norm(p - q);
      if (d < best_sq) best_sq = d;
    };
    std::size_t i = it - sorted_b.begin();
    std::size_t lo = i, hi = i;
    bool more = true;
    while (more) {
      more = false;
      if (hi < sorted_b.size()) {
        double dre = sorted_b[hi].real() - p.real();
        if (dre * dre <= best_sq) {
          consider(sorted_b[hi]);
          ++hi;
          more = true;
        }
      }
      if (lo > 0) {
        double dre = p.real() - sorted_b[lo - 1].real();
        if (dre * dre <= best_sq) {
          consider(sorted_b[lo - 1]);
          --lo;
          more = true;
        }
      }
    }
    if (best_sq > worst_sq) worst_sq = best_sq;
  }
  return std::sqrt(worst_sq);
}

inline double semidistance(const orbit_cloud& a, const orbit_cloud& b) {
  return semidistance(a.points, b.points);
}

}  // namespace cremerlab
