#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "cremerlab/orbit.hpp"
#include "cremerlab/periodic.hpp"
#include "cremerlab/quadratic.hpp"
#include "cremerlab/render.hpp"

using namespace cremerlab;
using cplx = std::complex<double>;

namespace {

constexpr double golden = 0.61803398874989484820;

// mirrors the library's arithmetic (squared distances, one final sqrt) so
// results can be compared for exact equality
double naive_semidistance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (const auto& pa : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pb : b) best = std::min(best, std::norm(pa - pb));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

std::vector<cplx> random_cloud(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::vector<cplx> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
  return pts;
}

}  // namespace

TEST_CASE("map coefficients and special points") {
  auto m0 = quadratic_map::from_alpha(0.0);
  CHECK(m0.lambda == cplx(1.0, 0.0));
  CHECK(m0.critical_point() == cplx(-0.5, 0.0));
  CHECK(m0.evaluate(m0.critical_point()) == cplx(-0.25, 0.0));

  auto m = quadratic_map::from_alpha(golden);
  CHECK(std::abs(m.lambda.real() - (-0.7373688780783199)) < 1e-12);
  CHECK(std::abs(m.lambda.imag() - (-0.6754902942615236)) < 1e-12);
  CHECK(std::abs(std::abs(m.lambda) - 1.0) < 1e-15);

  // z -> -lambda - z swaps the two preimages of every value
  cplx c = m.critical_point();
  CHECK(std::abs(m.involution(c) - c) < 1e-15);

  auto fixed = m.fixed_points();
  CHECK(std::abs(fixed[0]) < 1e-15);
  CHECK(std::abs(m.evaluate(fixed[1]) - fixed[1]) < 1e-14);
  CHECK(std::abs(fixed[1] - (cplx(1.0, 0.0) - m.lambda)) < 1e-14);

  auto mg = quadratic_map::from_cf(continued_fraction::repeating({1}));
  CHECK(std::abs(mg.alpha - golden) < 1e-15);
}

TEST_CASE("derivative matches difference quotient") {
  auto m = quadratic_map::from_alpha(golden);
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    cplx z(coord(rng), coord(rng));
    cplx h(1e-7, -1e-7);
    cplx quotient = (m.evaluate(z + h) - m.evaluate(z)) / h;
    CHECK(std::abs(quotient - m.derivative(z)) < 1e-5);
  }
  auto [val, der] = m.iterate_with_derivative(cplx(0.1, 0.2), 3);
  cplx z = cplx(0.1, 0.2), chain = 1.0;
  for (int i = 0; i < 3; ++i) {
    chain *= m.derivative(z);
    z = m.evaluate(z);
  }
  CHECK(std::abs(val - z) < 1e-15);
  CHECK(std::abs(der - chain) < 1e-15);
}

TEST_CASE("involution swaps preimages across the plane") {
  auto m = quadratic_map::from_alpha(golden);
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  for (int i = 0; i < 1000000; ++i) {
    cplx z(coord(rng), coord(rng));
    cplx w = m.involution(z);
    cplx a = m.evaluate(z), b = m.evaluate(w);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("critical orbit stays bounded for the golden rotation number") {
  auto m = quadratic_map::from_alpha(golden);
  auto cloud = critical_orbit(m, 100000);
  REQUIRE(cloud.points.size() == 100000);
  CHECK(cloud.origin == "critical orbit");

  cplx first = cloud.points.front();
  CHECK(std::abs(first.real() - (-0.02185643117924009)) < 1e-15);
  CHECK(std::abs(first.imag() - (-0.24904276021620692)) < 1e-15);
  CHECK(first == m.evaluate(m.critical_point()));

  double radius = 0.0;
  for (const auto& z : cloud.points) radius = std::max(radius, std::abs(z));
  CHECK(radius < 2.0);

  for (std::size_t i = 0; i + 1 < 2000; ++i)
    CHECK(cloud.points[i + 1] == m.evaluate(cloud.points[i]));
}

TEST_CASE("critical orbit error cases") {
  auto m = quadratic_map::from_alpha(golden);
  CHECK_THROWS_AS(critical_orbit(m, 0), error);

  // a radius below the orbit's reach reports escape with the right code
  bool escape_code = false;
  try {
    critical_orbit(m, 1000, 0.3);
  } catch (const error& e) {
    escape_code = e.code() == errc::overflow_escape;
  }
  CHECK(escape_code);

  // alpha = 0 keeps the orbit on [-1/2, 0]: no false positives
  CHECK_NOTHROW(critical_orbit(quadratic_map::from_alpha(0.0), 1000, 3.0));
}

TEST_CASE("involution cloud is the pointwise involution") {
  auto m = quadratic_map::from_alpha(golden);
  auto cloud = critical_orbit(m, 500);
  auto mirrored = involution_cloud(m, cloud);
  REQUIRE(mirrored.points.size() == cloud.points.size());
  CHECK(mirrored.origin == "preimage cloud");
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    CHECK(mirrored.points[i] == m.involution(cloud.points[i]));
}

TEST_CASE("semidistance basics") {
  std::vector<cplx> a{{0.0, 0.0}};
  std::vector<cplx> b{{3.0, 0.0}, {4.0, 0.0}};
  CHECK(semidistance(a, a) == 0.0);
  CHECK(semidistance(a, b) == 3.0);
  CHECK(semidistance(b, a) == 4.0);

  std::vector<cplx> super{{0.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}};
  CHECK(semidistance(b, super) == 0.0);  // subset sits at distance zero

  std::vector<cplx> none;
  CHECK_THROWS_AS(semidistance(a, none), error);
  CHECK_THROWS_AS(semidistance(none, a), error);
}

TEST_CASE("semidistance equals the quadratic reference") {
  std::mt19937_64 rng(909090);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_cloud(rng, 120);
    auto b = random_cloud(rng, 150);
    CHECK(semidistance(a, b) == naive_semidistance(a, b));
    CHECK(semidistance(b, a) == naive_semidistance(b, a));
  }
}

TEST_CASE("longer orbits refine the invariant set approximation") {
  auto m = quadratic_map::from_alpha(golden);
  auto big = critical_orbit(m, 100000);
  auto mid = critical_orbit(m, 10000);
  auto small = critical_orbit(m, 1000);

  // prefixes sit inside longer orbits, so one direction is exactly zero
  CHECK(semidistance(small, big) == 0.0);
  CHECK(semidistance(mid, big) == 0.0);

  double coarse = semidistance(big, small);
  double fine = semidistance(big, mid);
  CHECK(fine < coarse);
  CHECK(fine > 0.0);
  CHECK(semidistance(big.points, big.points) == 0.0);
}

TEST_CASE("periodic points of low period") {
  auto m = quadratic_map::from_alpha(golden);

  auto p1 = periodic_points(m, 1);
  REQUIRE(p1.points.size() == 2);
  CHECK(p1.complete);
  CHECK(p1.expected == 2);
  // fixed points are 0 and 1 - lambda with multipliers lambda and 2 - lambda
  std::vector<cplx> fixed{p1.points[0].z, p1.points[1].z};
  std::sort(fixed.begin(), fixed.end(),
            [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
  CHECK(std::abs(fixed[0]) < 1e-9);
  CHECK(std::abs(fixed[1] - (cplx(1.0, 0.0) - m.lambda)) < 1e-9);
  for (const auto& p : p1.points) {
    CHECK(p.residual < 1e-9);
    bool is_origin = std::abs(p.z) < 1e-6;
    cplx want = is_origin ? m.lambda : cplx(2.0, 0.0) - m.lambda;
    CHECK(std::abs(p.multiplier - want) < 1e-8);
  }

  auto p2 = periodic_points(m, 2);
  REQUIRE(p2.points.size() == 4);
  CHECK(p2.complete);
  // the genuine 2-cycle solves z^2 + (lambda + 1) z + (lambda + 1) = 0
  std::vector<cplx> genuine;
  for (const auto& p : p2.points)
    if (std::abs(p.z) > 1e-6 && std::abs(p.z - (cplx(1.0, 0.0) - m.lambda)) > 1e-6)
      genuine.push_back(p.z);
  REQUIRE(genuine.size() == 2);
  cplx sum = genuine[0] + genuine[1], product = genuine[0] * genuine[1];
  CHECK(std::abs(sum + (m.lambda + cplx(1.0, 0.0))) < 1e-9);
  CHECK(std::abs(product - (m.lambda + cplx(1.0, 0.0))) < 1e-9);

  auto p3 = periodic_points(m, 3);
  CHECK(p3.expected == 8);
  CHECK(p3.complete);
  for (const auto& p : p3.points) CHECK(p.residual < 1e-9);

  CHECK_THROWS_AS(periodic_points(m, 0), error);
  CHECK_THROWS_AS(periodic_points(m, 13), error);
}

TEST_CASE("periodic point search is worker-count independent") {
  auto m = quadratic_map::from_alpha(golden);
  for (unsigned n : {2u, 4u}) {
    auto solo = periodic_points(m, n, 0, 2.0, 1);
    auto pooled = periodic_points(m, n, 0, 2.0, 4);
    REQUIRE(solo.points.size() == pooled.points.size());
    for (std::size_t i = 0; i < solo.points.size(); ++i) {
      CHECK(solo.points[i].z == pooled.points[i].z);
      CHECK(solo.points[i].multiplier == pooled.points[i].multiplier);
    }
  }
}

TEST_CASE("periodic point sets are sorted and deduplicated") {
  auto m = quadratic_map::from_alpha(golden);
  for (unsigned n : {1u, 2u, 3u, 4u}) {
    auto set = periodic_points(m, n);
    for (std::size_t i = 0; i + 1 < set.points.size(); ++i) {
      const cplx &a = set.points[i].z, &b = set.points[i + 1].z;
      bool ordered = a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
      CHECK(ordered);
      CHECK(std::abs(a - b) > 1e-9);
    }
    for (const auto& p : set.points) {
      auto [val, der] = m.iterate_with_derivative(p.z, n);
      CHECK(std::abs(val - p.z) < 1e-8);
      CHECK(std::abs(der - p.multiplier) < 1e-8);
    }
  }
}

TEST_CASE("render rejects unsound escape radii") {
  auto m = quadratic_map::from_alpha(golden);
  viewport view{cplx(0.0, 0.0), 4.0};
  CHECK_THROWS_AS(render_julia(m, 64, 64, view, 50, 2.5), error);
  CHECK(render_julia(m, 0, 64, view, 50).empty());
  CHECK(render_julia(m, 64, 0, view, 50).empty());
}

TEST_CASE("far viewport escapes immediately") {
  auto m = quadratic_map::from_alpha(golden);
  viewport far{cplx(100.0, 100.0), 1.0};
  auto img = render_julia(m, 32, 32, far, 64);
  REQUIRE(img.width == 32);
  REQUIRE(img.height == 32);
  for (unsigned y = 0; y < img.height; ++y)
    for (unsigned x = 0; x < img.width; ++x) CHECK(img.at(x, y) >= 55);
}

TEST_CASE("julia image is symmetric about the critical point") {
  // the involution fixes the critical point and preserves escape times, so a
  // frame centered there is symmetric under a half turn; float rounding may
  // flip a handful of knife-edge pixels, hence a small mismatch budget
  auto m = quadratic_map::from_alpha(golden);
  viewport view{m.critical_point(), 2.5};
  auto img = render_julia(m, 101, 101, view, 200);
  unsigned mismatches = 0;
  for (unsigned y = 0; y < img.height; ++y)
    for (unsigned x = 0; x < img.width; ++x)
      if (img.at(x, y) != img.at(img.width - 1 - x, img.height - 1 - y)) ++mismatches;
  CHECK(mismatches <= img.width * img.height / 100);
}

TEST_CASE("interior shrinks as the iteration budget grows") {
  auto m = quadratic_map::from_alpha(golden);
  viewport view{cplx(-0.3, 0.3), 3.0};
  auto coarse = render_julia(m, 96, 96, view, 200);
  auto fine = render_julia(m, 96, 96, view, 400);
  for (unsigned y = 0; y < 96; ++y)
    for (unsigned x = 0; x < 96; ++x)
      if (fine.at(x, y) == 0) CHECK(coarse.at(x, y) == 0);
}

TEST_CASE("render is independent of the worker count") {
  auto m = quadratic_map::from_alpha(golden);
  viewport view{cplx(0.0, 0.0), 3.5};
  auto one = render_julia(m, 80, 60, view, 150, default_escape_radius, 1);
  auto four = render_julia(m, 80, 60, view, 150, default_escape_radius, 4);
  REQUIRE(one.pixels.size() == four.pixels.size());
  CHECK(one.pixels == four.pixels);
}

TEST_CASE("pgm serialization") {
  image img;
  img.width = 3;
  img.height = 2;
  img.pixels = {0, 10, 20, 30, 40, 255};
  std::ostringstream os;
  write_pgm(img, os);
  std::string pgm = os.str();
  CHECK(pgm.substr(0, 3) == "P5\n");
  CHECK(pgm.find("3 2\n255\n") != std::string::npos);
  CHECK(pgm.size() == std::string("P5\n3 2\n255\n").size() + 6);
  CHECK(static_cast<unsigned char>(pgm.back()) == 255);
}

TEST_CASE("polyline drawing clips to the viewport") {
  image img;
  img.width = 64;
  img.height = 64;
  img.pixels.assign(64 * 64, 0);
  viewport view{cplx(0.0, 0.0), 4.0};
  std::vector<cplx> path{{-10.0, 0.0}, {10.0, 0.0}};
  draw_polyline(img, view, path, 200);
  unsigned lit = 0;
  for (auto p : img.pixels)
    if (p == 200) ++lit;
  CHECK(lit == 64);  // the horizontal midline, clipped to the frame

  image tiny;
  tiny.width = 8;
  tiny.height = 8;
  tiny.pixels.assign(64, 7);
  std::vector<cplx> outside{{50.0, 50.0}, {60.0, 60.0}};
  draw_polyline(tiny, view, outside, 250);
  for (auto p : tiny.pixels) CHECK(p == 7);
}
