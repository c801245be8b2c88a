#pragma once

// Strings of pullbacks connecting the invariant set to a dust point, and the
// planner that sets up the order for the two-string construction.
//
// Element j of the string of a source itinerary keeps every symbol up to and
// including the j-th zero and replaces the rest by ones. Consecutive
// elements therefore differ by exactly one zero, which is the parent
// relation of itinerary.hpp: a string is a chain in every order-n tree that
// contains it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cremerlab/errors.hpp"
#include "cremerlab/itinerary.hpp"

namespace cremerlab {

struct pullback_string {
  itinerary source;
  std::vector<pullback_id> elements;  // element j at index j - 1
};

// The transform at the j-th zero of the source.
inline pullback_id string_element(const itinerary& source, std::size_t j) {
  auto pos = source.position_of_zero(j);
  if (!pos)
    fail(errc::not_enough_zeros,
         "source " + source.to_string() + " has fewer than " + std::to_string(j) + " zeros");
  return pullback_id::from_head(source.prefix(*pos + 1));
}

inline pullback_string string_of(const itinerary& source, std::size_t count) {
  pullback_string s{source, {}};
  s.elements.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) s.elements.push_back(string_element(source, j));
  return s;
}

// Zeros per minimal period. Non-primitive input words are reduced first.
inline std::size_t basic_length(const std::string& word) {
  detail::require_binary_word(word, "periodic word");
  if (word.empty()) fail(errc::invalid_argument, "periodic word must be nonempty");
  std::string root = detail::primitive_root(word);
  std::size_t zeros = 0;
  for (char c : root)
    if (c == '0') ++zeros;
  if (zeros == 0)
    fail(errc::no_zeros, "word " + word + " has no zeros; its string is empty");
  return zeros;
}

inline std::vector<std::vector<pullback_id>> fragments(const pullback_string& s, std::size_t l,
                                                       std::size_t count) {
  if (l == 0) fail(errc::invalid_argument, "fragment length must be positive");
  if (s.elements.size() < l * count)
    fail(errc::not_enough_elements, "string holds " + std::to_string(s.elements.size()) +
                                        " elements, need " + std::to_string(l * count));
  std::vector<std::vector<pullback_id>> out;
  out.reserve(count);
  for (std::size_t f = 0; f < count; ++f)
    out.emplace_back(s.elements.begin() + f * l, s.elements.begin() + (f + 1) * l);
  return out;
}

// Shifting by the word length moves the string one fragment toward the root:
// the first fragment collapses onto the root and element j + l becomes
// element j.
inline bool verify_shift_down(const std::string& word, std::size_t depth) {
  std::string root_word = detail::primitive_root(word);
  const std::size_t k = root_word.size();
  const std::size_t l = basic_length(root_word);
  itinerary source = itinerary::periodic({}, root_word);
  pullback_string s = string_of(source, depth + l);

  const pullback_id root = pullback_id::from_head({});
  for (std::size_t j = 1; j <= l; ++j)
    if (s.elements[j - 1].shift(k) != root) return false;
  for (std::size_t j = 1; j <= depth; ++j)
    if (s.elements[j + l - 1].shift(k) != s.elements[j - 1]) return false;
  return true;
}

struct common_prefix_result {
  std::vector<pullback_id> f;       // the shared initial elements
  std::optional<pullback_id> last;  // f.back() when m >= 1
  std::size_t m = 0;
};

// Maximal shared initial run of the two strings. Elements agree exactly as
// long as their zeros lie before the first symbol where the sources differ,
// so the run is computed from that position directly; past it the strings
// are elementwise distinct.
inline common_prefix_result common_prefix(const itinerary& u, const itinerary& v) {
  if (u == v) fail(errc::identical_sources, "both strings come from " + u.to_string());
  if (!u.position_of_zero(1) || !v.position_of_zero(1))
    fail(errc::not_enough_zeros, "a source without zeros yields an empty string");

  // Canonical forms differ, so the sequences differ at some index below the
  // horizon max(head) + lcm(periods) <= this bound.
  std::size_t hu = u.head().size(), hv = v.head().size();
  std::size_t pu = u.period().empty() ? 1 : u.period().size();
  std::size_t pv = v.period().empty() ? 1 : v.period().size();
  std::size_t horizon = std::max(hu, hv) + pu * pv + 1;
  std::size_t d = horizon;
  for (std::size_t i = 0; i < horizon; ++i)
    if (u.symbol_at(i) != v.symbol_at(i)) {
      d = i;
      break;
    }
  if (d == horizon)
    fail(errc::invalid_argument, "distinct canonical itineraries agree beyond the horizon");

  common_prefix_result r;
  for (std::size_t i = 0; i < d; ++i)
    if (u.symbol_at(i) == '0') ++r.m;
  for (std::size_t j = 1; j <= r.m; ++j) r.f.push_back(string_element(u, j));
  if (r.m >= 1) r.last = r.f.back();
  return r;
}

struct construction_plan {
  std::string u_word, v_word;       // minimal periods of the two sources
  std::size_t k = 0, l = 0;         // word lengths
  std::size_t w = 0, q = 0;         // basic lengths (zeros per word)
  std::size_t m = 0;                // shared pullbacks
  std::vector<pullback_id> f;       // the shared prefix
  pullback_id last;                 // last shared pullback
  std::vector<pullback_id> hat_f_u; // w elements of the u-string after f
  std::vector<pullback_id> f_u;     // the next w
  std::vector<pullback_id> hat_f_v; // q elements of the v-string after f
  std::vector<pullback_id> f_v;     // the next q
  std::size_t n = 0;                // order m + 3k + 3l
  bool assumption_flag = false;     // m < min(w, q)

  construction_plan() : last(pullback_id::from_head({})) {}
};

inline construction_plan plan_construction(const std::string& u_word_in,
                                           const std::string& v_word_in) {
  std::string u_word = detail::primitive_root(u_word_in);
  std::string v_word = detail::primitive_root(v_word_in);
  const std::size_t w = basic_length(u_word);
  const std::size_t q = basic_length(v_word);

  itinerary u = itinerary::periodic({}, u_word);
  itinerary v = itinerary::periodic({}, v_word);
  common_prefix_result cp = common_prefix(u, v);
  if (cp.m < 2)
    fail(errc::prefix_too_short, "the two strings share " + std::to_string(cp.m) +
                                     " pullbacks; the construction needs at least 2");

  construction_plan plan;
  plan.u_word = u_word;
  plan.v_word = v_word;
  plan.k = u_word.size();
  plan.l = v_word.size();
  plan.w = w;
  plan.q = q;
  plan.m = cp.m;
  plan.f = cp.f;
  plan.last = *cp.last;
  for (std::size_t j = cp.m + 1; j <= cp.m + w; ++j) plan.hat_f_u.push_back(string_element(u, j));
  for (std::size_t j = cp.m + w + 1; j <= cp.m + 2 * w; ++j)
    plan.f_u.push_back(string_element(u, j));
  for (std::size_t j = cp.m + 1; j <= cp.m + q; ++j) plan.hat_f_v.push_back(string_element(v, j));
  for (std::size_t j = cp.m + q + 1; j <= cp.m + 2 * q; ++j)
    plan.f_v.push_back(string_element(v, j));
  plan.n = plan.m + 3 * plan.k + 3 * plan.l;
  plan.assumption_flag = plan.m < std::min(w, q);
  return plan;
}

}  // namespace cremerlab
