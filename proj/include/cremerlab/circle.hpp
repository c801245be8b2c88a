#pragma once

// Rotational combinatorics of the angle-doubling map.
//
// Key design decisions:
//  - Rotational cycles are found by brute force over all period-q orbits of
//    doubling on the angles k/(2^q - 1); no closed-form digit formula is
//    used anywhere. Existence and uniqueness are therefore checkable facts,
//    not assumptions. The search space is capped by an explicit budget.
//  - A "critical leaf" here may be a rational candidate: its endpoints come
//    from the major gap of an approximating cycle, so beta - alpha < 1/2 and
//    only the limit leaf is an exact diameter. Invariants kept: alpha in
//    (0, 1/2), alpha < beta < 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremerlab/angle.hpp"
#include "cremerlab/continued_fraction.hpp"
#include "cremerlab/errors.hpp"

namespace cremerlab {

// Counterclockwise arc from start to end.
struct arc {
  angle start;
  angle end;

  rational length() const {
    rational r = end.value() - start.value();
    if (r < rational(0)) r = r + rational(1);
    return r;
  }
};

struct critical_leaf {
  angle alpha;  // in (0, 1/2)
  angle beta;   // in (alpha, 1)

  critical_leaf(angle a, angle b) : alpha(std::move(a)), beta(std::move(b)) {
    if (!(rational(0) < alpha.value()) || !(alpha.value() < rational(1, 2)))
      fail(errc::invalid_argument, "leaf alpha must lie in (0, 1/2), got " + alpha.to_string());
    if (!(alpha < beta))
      fail(errc::invalid_argument, "leaf beta must exceed alpha, got " + beta.to_string());
  }

  // The exact diameter leaf (beta = alpha + 1/2).
  static critical_leaf diameter(angle a) {
    angle b = a.antipode();
    return critical_leaf(std::move(a), std::move(b));
  }

  rational chord_diameter() const { return beta.value() - alpha.value(); }
  bool is_diameter() const { return chord_diameter() == rational(1, 2); }
};

struct rotation_set {
  unsigned p = 0;
  unsigned q = 0;
  std::vector<angle> orbit;  // sorted ascending; doubling advances order by p
  arc major_gap;             // the longest complementary arc
  critical_leaf leaf_estimate;
};

inline constexpr std::uint64_t default_cycle_budget = std::uint64_t{1} << 22;

namespace detail {

// alpha = whichever major-gap endpoint lies in (0, 1/2); beta is the other.
inline critical_leaf leaf_from_gap(const arc& gap) {
  auto in_lower_half = [](const angle& a) {
    return rational(0) < a.value() && a.value() < rational(1, 2);
  };
  if (in_lower_half(gap.end)) return critical_leaf(gap.end, gap.start);
  if (in_lower_half(gap.start)) return critical_leaf(gap.start, gap.end);
  fail(errc::invalid_argument, "major gap has no endpoint in (0, 1/2)");
}

}  // namespace detail

// The unique sigma-periodic orbit of period q among the angles k/(2^q - 1)
// whose circular order advances by p positions under doubling.
inline rotation_set rotational_cycle(unsigned p, unsigned q,
                                     std::uint64_t budget = default_cycle_budget) {
  if (!(0 < p && p < q))
    fail(errc::invalid_argument, "rotation number requires 0 < p < q");
  {
    std::uint64_t a = p, b = q;
    while (b != 0) { std::uint64_t t = a % b; a = b; b = t; }
    if (a != 1) fail(errc::invalid_argument, "rotation number p/q must be in lowest terms");
  }
  if (q > 62 || ((std::uint64_t{1} << q) - 1) > budget)
    fail(errc::depth_too_large, "2^" + std::to_string(q) +
                                    " - 1 candidate angles exceed the brute-force budget " +
                                    std::to_string(budget));

  const std::uint64_t m = (std::uint64_t{1} << q) - 1;
  std::vector<std::uint64_t> vals(q), sorted(q);
  std::vector<std::uint64_t> found;  // orbit minima of rotational cycles

  for (std::uint64_t k = 1; k < m; ++k) {
    // Walk the doubling orbit; k must be its minimum and its exact period q.
    std::uint64_t x = k;
    bool is_min_period_q = true;
    for (unsigned i = 1; i < q; ++i) {
      x <<= 1;
      if (x >= m) x -= m;
      if (x <= k) { is_min_period_q = false; break; }  // smaller or repeated
      vals[i] = x;
    }
    if (!is_min_period_q) continue;
    x <<= 1;
    if (x >= m) x -= m;
    if (x != k) continue;  // guard; cannot happen when k survived the walk
    vals[0] = k;

    // Circular-order check: doubling must advance the sorted position by p.
    sorted.assign(vals.begin(), vals.end());
    std::sort(sorted.begin(), sorted.end());
    bool rotational = true;
    for (unsigned i = 0; i < q && rotational; ++i) {
      std::uint64_t img = sorted[i] << 1;
      if (img >= m) img -= m;
      std::uint64_t expect = sorted[(i + p) % q];
      if (img != expect) rotational = false;
    }
    if (rotational) found.push_back(k);
  }

  if (found.size() != 1)
    fail(errc::invalid_argument, "expected exactly one rotational cycle for " +
                                     std::to_string(p) + "/" + std::to_string(q) + ", found " +
                                     std::to_string(found.size()));

  std::uint64_t x = found[0];
  std::vector<std::uint64_t> orbit_vals;
  orbit_vals.reserve(q);
  for (unsigned i = 0; i < q; ++i) {
    orbit_vals.push_back(x);
    x <<= 1;
    if (x >= m) x -= m;
  }
  std::sort(orbit_vals.begin(), orbit_vals.end());

  // Longest complementary arc between circularly consecutive orbit points.
  std::uint64_t best_gap = 0;
  unsigned best_i = 0;
  for (unsigned i = 0; i < q; ++i) {
    std::uint64_t a = orbit_vals[i];
    std::uint64_t b = i + 1 < q ? orbit_vals[i + 1] : orbit_vals[0] + m;
    if (b - a > best_gap) { best_gap = b - a; best_i = i; }
  }

  rotation_set rs{p, q, {}, arc{angle(orbit_vals[best_i], m),
                                angle(orbit_vals[(best_i + 1) % q], m)},
                  detail::leaf_from_gap(arc{angle(orbit_vals[best_i], m),
                                            angle(orbit_vals[(best_i + 1) % q], m)})};
  rs.orbit.reserve(q);
  for (auto v : orbit_vals) rs.orbit.emplace_back(v, m);
  return rs;
}

struct cantor_leaf_result {
  critical_leaf leaf;
  rational error_bound;  // endpoint movement between the last two convergents
  unsigned p = 0;        // convergent used
  unsigned q = 0;
};

// Candidate critical leaf for the irrational rotation number encoded by
// rho_cf, from the depth-th continued-fraction convergent.
inline cantor_leaf_result cantor_leaf(const continued_fraction& rho_cf, std::size_t depth,
                                      std::uint64_t budget = default_cycle_budget) {
  if (depth == 0) fail(errc::invalid_argument, "cantor_leaf depth must be >= 1");
  auto conv = cf_convergents(rho_cf, depth);
  auto as_pq = [](const rational& r) {
    if (r.den > 62)
      fail(errc::depth_too_large, "convergent denominator " + r.den.str() + " exceeds 62 bits");
    return std::pair<unsigned, unsigned>{r.num.convert_to<unsigned>(),
                                         r.den.convert_to<unsigned>()};
  };
  auto [p, q] = as_pq(conv[depth - 1]);
  if (q < 2)
    fail(errc::invalid_argument,
         "convergent " + std::to_string(p) + "/" + std::to_string(q) +
             " has no rotational cycle; use a larger depth");
  rotation_set rs = rotational_cycle(p, q, budget);

  rational err(1, 2);  // maximal arc distance when no previous estimate exists
  if (depth >= 2) {
    auto [pp, qp] = as_pq(conv[depth - 2]);
    if (qp >= 2) {
      rotation_set prev = rotational_cycle(pp, qp, budget);
      err = arc_distance(prev.leaf_estimate.alpha, rs.leaf_estimate.alpha);
    }
  }
  return cantor_leaf_result{rs.leaf_estimate, err, p, q};
}

// Least m <= cap with sigma^m(theta) and sigma^m(theta') strictly on opposite
// sides of the leaf chord; nullopt if no such m exists within the cap.
inline std::optional<unsigned> separation_time(const angle& theta, const angle& theta_prime,
                                               const critical_leaf& leaf, unsigned cap = 256) {
  if (theta == theta_prime)
    fail(errc::invalid_argument, "separation_time requires distinct angles");
  auto side = [&](const angle& x, unsigned m) -> int {
    if (x == leaf.alpha || x == leaf.beta)
      fail(errc::exact_hit, "image at step " + std::to_string(m) + " equals a leaf endpoint");
    return x.in_open_arc(leaf.alpha, leaf.beta) ? 1 : 0;
  };
  angle x = theta, y = theta_prime;
  for (unsigned m = 0; m <= cap; ++m) {
    if (side(x, m) != side(y, m)) return m;
    x = x.doubled();
    y = y.doubled();
  }
  return std::nullopt;
}

// The preimage of theta under doubling lying in the closed half-circle
// [alpha, alpha + 1/2]; ties on the boundary resolve to alpha.
inline angle pullback_in_siegel_arc(const angle& theta, const critical_leaf& leaf) {
  angle half(theta.num(), 2 * theta.den());  // theta/2, in [0, 1/2)
  if (!(half < leaf.alpha)) return half;
  return half.antipode();
}

// Symbol sequence of an angle's doubling orbit relative to a leaf:
// '1' for the open arc (alpha, beta), '0' for the complementary open arc.
inline std::string angle_itinerary(const angle& theta, const critical_leaf& leaf,
                                   std::size_t length) {
  std::string out;
  out.reserve(length);
  angle x = theta;
  for (std::size_t i = 0; i < length; ++i) {
    if (x == leaf.alpha || x == leaf.beta)
      fail(errc::exact_hit, "orbit hits a leaf endpoint at step " + std::to_string(i));
    out.push_back(x.in_open_arc(leaf.alpha, leaf.beta) ? '1' : '0');
    x = x.doubled();
  }
  return out;
}

// First angle k/(2^n - 1), k ascending, whose itinerary equals the given
// n-symbol word. Used to aim rays at periodic points with known itineraries.
inline angle find_periodic_angle(const std::string& word, const critical_leaf& leaf) {
  if (word.empty() || word.size() > 62)
    fail(errc::invalid_argument, "word length must be in [1, 62]");
  const std::uint64_t m = (std::uint64_t{1} << word.size()) - 1;
  for (std::uint64_t k = 0; k < m; ++k) {
    angle cand(k, m);
    bool hit = false;
    std::string it;
    try {
      it = angle_itinerary(cand, leaf, word.size());
    } catch (const error&) {
      hit = true;  // endpoint collision: skip candidate
    }
    if (!hit && it == word) return cand;
  }
  fail(errc::invalid_argument, "no angle k/" + std::to_string(m) + " has itinerary " + word);
}

}  // namespace cremerlab
