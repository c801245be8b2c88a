#pragma once

// Escape-time rendering and PGM output.
//
// Pixels are classified independently, so the image is identical for any
// worker count; rows are only a scheduling unit. Escape shading uses pure
// integer arithmetic on the escape time to keep the bytes reproducible
// across platforms. Interior pixels (no escape within the budget) are 0,
// escaped pixels shade from 255 (immediate) down toward 55 (late escape).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cremerlab/errors.hpp"
#include "cremerlab/quadratic.hpp"

namespace cremerlab {

struct viewport {
  std::complex<double> center{0.0, 0.0};
  double plane_width = 4.0;  // plane units spanned by the image width
};

struct image {
  unsigned width = 0;
  unsigned height = 0;
  std::vector<std::uint8_t> pixels;  // row-major from the top-left corner

  bool empty() const { return pixels.empty(); }
  std::uint8_t& at(unsigned x, unsigned y) { return pixels[std::size_t{y} * width + x]; }
  std::uint8_t at(unsigned x, unsigned y) const { return pixels[std::size_t{y} * width + x]; }
};

// Plane coordinate of a pixel center; y grows downward in the image.
inline std::complex<double> pixel_to_plane(const viewport& view, unsigned width, unsigned height,
                                           double px, double py) {
  double step = view.plane_width / width;
  return view.center + std::complex<double>((px + 0.5 - width / 2.0) * step,
                                            -(py + 0.5 - height / 2.0) * step);
}

inline std::pair<double, double> plane_to_pixel(const viewport& view, unsigned width,
                                                unsigned height, std::complex<double> z) {
  double step = view.plane_width / width;
  std::complex<double> rel = z - view.center;
  return {rel.real() / step - 0.5 + width / 2.0, -rel.imag() / step - 0.5 + height / 2.0};
}

inline image render_julia(const quadratic_map& map, unsigned width, unsigned height,
                          const viewport& view, unsigned max_iter,
                          double escape_radius = default_escape_radius,
                          unsigned workers = 0) {
  if (escape_radius < 3.0)
    fail(errc::invalid_argument, "escape radius must be >= 3 for a sound escape test");

  image img;
  img.width = width;
  img.height = height;
  if (width == 0 || height == 0 || !(view.plane_width > 0.0) ||
      !std::isfinite(view.plane_width))
    return img;  // degenerate viewport: empty image, caller warns
  img.pixels.assign(std::size_t{width} * height, 0);

  const double esc_sq = escape_radius * escape_radius;
  auto shade_row = [&](unsigned y) {
    for (unsigned x = 0; x < width; ++x) {
      std::complex<double> z = pixel_to_plane(view, width, height, x, y);
      unsigned t = 0;
      while (t < max_iter && std::norm(z) <= esc_sq) {
        z = map.evaluate(z);
        ++t;
      }
      if (t >= max_iter && std::norm(z) <= esc_sq) {
        img.at(x, y) = 0;  // treated as interior at this budget
      } else {
        img.at(x, y) = static_cast<std::uint8_t>(55 + (200ull * (max_iter - t)) / max_iter);
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, height);
  if (workers <= 1) {
    for (unsigned y = 0; y < height; ++y) shade_row(y);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (unsigned y = w; y < height; y += workers) shade_row(y);
      });
    for (auto& th : pool) th.join();
  }
  return img;
}

// Binary PGM, maximum value 255.
inline void write_pgm(const image& img, std::ostream& os) {
  os << "P5\n" << img.width << " " << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
}

namespace detail {

// Liang-Barsky clip of the segment (x0,y0)-(x1,y1) to [0,w-1]x[0,h-1].
inline bool clip_segment(double& x0, double& y0, double& x1, double& y1, double w, double h) {
  double t0 = 0.0, t1 = 1.0;
  double dx = x1 - x0, dy = y1 - y0;
  auto pass = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    double r = q / p;
    if (p < 0.0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  if (!pass(-dx, x0) || !pass(dx, w - 1.0 - x0) || !pass(-dy, y0) || !pass(dy, h - 1.0 - y0))
    return false;
  double nx0 = x0 + t0 * dx, ny0 = y0 + t0 * dy;
  double nx1 = x0 + t1 * dx, ny1 = y0 + t1 * dy;
  x0 = nx0; y0 = ny0; x1 = nx1; y1 = ny1;
  return true;
}

inline void draw_segment(image& img, double x0, double y0, double x1, double y1,
                         std::uint8_t value) {
  if (img.empty()) return;
  if (!clip_segment(x0, y0, x1, y1, img.width, img.height)) return;
  int ix0 = static_cast<int>(std::lround(x0)), iy0 = static_cast<int>(std::lround(y0));
  int ix1 = static_cast<int>(std::lround(x1)), iy1 = static_cast<int>(std::lround(y1));
  int dx = std::abs(ix1 - ix0), dy = -std::abs(iy1 - iy0);
  int sx = ix0 < ix1 ? 1 : -1, sy = iy0 < iy1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    if (ix0 >= 0 && iy0 >= 0 && ix0 < static_cast<int>(img.width) &&
        iy0 < static_cast<int>(img.height))
      img.at(static_cast<unsigned>(ix0), static_cast<unsigned>(iy0)) = value;
    if (ix0 == ix1 && iy0 == iy1) break;
    int e2 = 2 * err;
    if (e2 >= dy) { err += dy; ix0 += sx; }
    if (e2 <= dx) { err += dx; iy0 += sy; }
  }
}

}  // namespace detail

inline void draw_polyline(image& img, const viewport& view,
                          const std::vector<std::complex<double>>& points,
                          std::uint8_t value = 255) {
  if (img.empty() || points.size() < 2) return;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    auto [x0, y0] = plane_to_pixel(view, img.width, img.height, points[i]);
    auto [x1, y1] = plane_to_pixel(view, img.width, img.height, points[i + 1]);
    if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(x1) || !std::isfinite(y1))
      continue;
    detail::draw_segment(img, x0, y0, x1, y1, value);
  }
}

}  // namespace cremerlab
