#pragma once

// Continued fractions [a1, a2, ...] for rotation numbers in (0, 1).
// Only a finite prefix is ever stored; classification verdicts are relative
// to that prefix.

#include <cstdint>
#include <vector>

#include "cremerlab/angle.hpp"
#include "cremerlab/errors.hpp"

namespace cremerlab {

struct continued_fraction {
  std::vector<std::uint64_t> quotients;  // a_1, a_2, ...; all >= 1

  continued_fraction() = default;
  explicit continued_fraction(std::vector<std::uint64_t> a) : quotients(std::move(a)) {
    for (auto q : quotients)
      if (q == 0) fail(errc::invalid_argument, "partial quotients must be positive");
  }

  // The infinite periodic CF with the given repeating block, materialized to
  // `length` stored quotients. repeating({1}) is the golden mean.
  static continued_fraction repeating(const std::vector<std::uint64_t>& block,
                                      std::size_t length = 64) {
    if (block.empty()) fail(errc::invalid_argument, "empty repeating block");
    std::vector<std::uint64_t> a;
    a.reserve(length);
    for (std::size_t i = 0; i < length; ++i) a.push_back(block[i % block.size()]);
    return continued_fraction(std::move(a));
  }

  std::size_t size() const { return quotients.size(); }
};

// Standard convergents p_n/q_n of [0; a1, a2, ...], 1-based: the first
// convergent is 1/a1. Exact rationals.
inline std::vector<rational> cf_convergents(const continued_fraction& cf, std::size_t depth) {
  if (depth > cf.size())
    fail(errc::depth_too_large,
         "requested " + std::to_string(depth) + " convergents, stored " +
             std::to_string(cf.size()) + " quotients");
  std::vector<rational> out;
  out.reserve(depth);
  bigint p_prev = 1, q_prev = 0;  // p_0/q_0 seeds for the [0; ...] recurrence
  bigint p = 0, q = 1;
  for (std::size_t n = 0; n < depth; ++n) {
    bigint a = cf.quotients[n];
    bigint p_next = a * p + p_prev;
    bigint q_next = a * q + q_prev;
    p_prev = p; q_prev = q;
    p = p_next; q = q_next;
    out.emplace_back(p, q);
  }
  return out;
}

struct cf_class {
  bool bounded_type = false;  // all stored a_i < K
  bool in_s_tilde = false;    // all stored a_i >= N
};

inline cf_class classify(const continued_fraction& cf, std::uint64_t n_lower,
                         std::uint64_t k_upper) {
  cf_class c{true, true};
  for (auto a : cf.quotients) {
    if (a >= k_upper) c.bounded_type = false;
    if (a < n_lower) c.in_s_tilde = false;
  }
  return c;
}

// Float shadow of the CF's value, from the deepest stored convergent.
inline double cf_value(const continued_fraction& cf) {
  if (cf.size() == 0) fail(errc::invalid_argument, "empty continued fraction");
  return cf_convergents(cf, cf.size()).back().to_double();
}

}  // namespace cremerlab
