#pragma once

// Eventually periodic binary itineraries with a decidable structural equality.
//
// An itinerary is a finite head followed by an infinite tail, where the tail
// is either all ones or the infinite repetition of a nonempty word that is
// not all ones. Values are kept in a canonical form so that structural
// equality coincides with symbol-by-symbol equality of the sequences:
//  - the period word is primitive (not a power of a shorter word);
//  - an all-ones period is folded into the all-ones tail kind;
//  - with an all-ones tail, the head carries no trailing ones;
//  - with a periodic tail, the head is shortened (rotating the period in
//    step) until its last symbol differs from the period's last symbol.
// The last rule makes the head the minimal preperiod and fixes the rotation
// of the period word, which is what uniqueness of the form needs. Absorbing
// only whole period copies is weaker and admits distinct spellings of one
// sequence, e.g. head "01" with period "101" versus head "0" with period
// "110".

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "cremerlab/errors.hpp"

namespace cremerlab {

enum class tail_kind { all_ones, periodic };

namespace detail {

inline void require_binary_word(const std::string& w, const char* what) {
  for (char c : w)
    if (c != '0' && c != '1')
      fail(errc::invalid_argument, std::string(what) + " may contain only '0' and '1'");
}

inline bool all_ones_word(const std::string& w) {
  return w.find('0') == std::string::npos;
}

// Shortest word whose repetition gives w.
inline std::string primitive_root(const std::string& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i)
      if (w[i] != w[i - d]) ok = false;
    if (ok) return w.substr(0, d);
  }
  return w;
}

}  // namespace detail

class itinerary {
 public:
  static itinerary all_ones(std::string head = {}) {
    return itinerary(std::move(head), tail_kind::all_ones, {});
  }

  static itinerary periodic(std::string head, std::string word) {
    if (word.empty()) fail(errc::invalid_argument, "periodic tail word must be nonempty");
    return itinerary(std::move(head), tail_kind::periodic, std::move(word));
  }

  // Grammar: "<head>1*" for an all-ones tail, "<head>(<word>)^" for a
  // periodic tail. "1*" alone is the constant-one sequence.
  static itinerary parse(const std::string& text) {
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "1*") == 0) {
      std::string head = text.substr(0, text.size() - 2);
      detail::require_binary_word(head, "itinerary head");
      return all_ones(std::move(head));
    }
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, ")^") == 0) {
      auto open = text.find('(');
      if (open == std::string::npos)
        fail(errc::invalid_argument, "periodic itinerary lacks '(': " + text);
      std::string head = text.substr(0, open);
      std::string word = text.substr(open + 1, text.size() - 2 - (open + 1));
      detail::require_binary_word(head, "itinerary head");
      detail::require_binary_word(word, "itinerary period");
      return periodic(std::move(head), std::move(word));
    }
    fail(errc::invalid_argument, "itinerary must end in \"1*\" or \")^\": " + text);
  }

  std::string to_string() const {
    if (tail_ == tail_kind::all_ones) return head_ + "1*";
    return head_ + "(" + period_ + ")^";
  }

  const std::string& head() const { return head_; }
  tail_kind tail() const { return tail_; }
  const std::string& period() const { return period_; }
  bool eventually_all_ones() const { return tail_ == tail_kind::all_ones; }

  char symbol_at(std::size_t i) const {
    if (i < head_.size()) return head_[i];
    if (tail_ == tail_kind::all_ones) return '1';
    return period_[(i - head_.size()) % period_.size()];
  }

  // First `length` symbols as a word.
  std::string prefix(std::size_t length) const {
    std::string out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out.push_back(symbol_at(i));
    return out;
  }

  // 0-based position of the j-th zero (j is 1-based); nullopt when the
  // sequence has fewer than j zeros.
  std::optional<std::size_t> position_of_zero(std::size_t j) const {
    if (j == 0) return std::nullopt;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < head_.size(); ++i)
      if (head_[i] == '0' && ++seen == j) return i;
    if (tail_ == tail_kind::all_ones) return std::nullopt;
    std::size_t per_cycle = 0;
    for (char c : period_)
      if (c == '0') ++per_cycle;
    // canonical periodic words contain a zero
    std::size_t remaining = j - seen;
    std::size_t cycles = (remaining - 1) / per_cycle;
    std::size_t index = (remaining - 1) % per_cycle;
    std::size_t seen_in_word = 0;
    for (std::size_t i = 0; i < period_.size(); ++i)
      if (period_[i] == '0' && seen_in_word++ == index)
        return head_.size() + cycles * period_.size() + i;
    return std::nullopt;  // unreachable
  }

  std::size_t zero_count_in_head() const {
    std::size_t n = 0;
    for (char c : head_)
      if (c == '0') ++n;
    return n;
  }

  itinerary shift(std::size_t steps) const {
    if (steps <= head_.size())
      return itinerary(head_.substr(steps), tail_, period_);
    if (tail_ == tail_kind::all_ones) return all_ones();
    std::size_t r = (steps - head_.size()) % period_.size();
    std::string rotated = period_.substr(r) + period_.substr(0, r);
    return itinerary({}, tail_kind::periodic, std::move(rotated));
  }

  friend bool operator==(const itinerary& a, const itinerary& b) {
    return a.tail_ == b.tail_ && a.head_ == b.head_ && a.period_ == b.period_;
  }
  friend bool operator!=(const itinerary& a, const itinerary& b) { return !(a == b); }

 private:
  itinerary(std::string head, tail_kind tail, std::string period)
      : head_(std::move(head)), tail_(tail), period_(std::move(period)) {
    detail::require_binary_word(head_, "itinerary head");
    detail::require_binary_word(period_, "itinerary period");
    canonicalize();
  }

  void canonicalize() {
    if (tail_ == tail_kind::periodic) {
      period_ = detail::primitive_root(period_);
      if (detail::all_ones_word(period_)) {
        tail_ = tail_kind::all_ones;
        period_.clear();
      }
    }
    if (tail_ == tail_kind::all_ones) {
      while (!head_.empty() && head_.back() == '1') head_.pop_back();
      return;
    }
    // Shrink the head one symbol at a time, rotating the period so the
    // represented sequence is unchanged; stops at the minimal preperiod.
    while (!head_.empty() && head_.back() == period_.back()) {
      head_.pop_back();
      period_ = period_.back() + period_.substr(0, period_.size() - 1);
    }
  }

  std::string head_;
  tail_kind tail_;
  std::string period_;
};

// Itinerary with an all-ones tail; these label the pullbacks connecting a
// dust point to the invariant set, and are the vertices of the order-n trees.
class pullback_id {
 public:
  explicit pullback_id(itinerary it) : it_(std::move(it)) {
    if (!it_.eventually_all_ones())
      fail(errc::invalid_argument,
           "pullback itinerary must end in all ones, got " + it_.to_string());
  }

  static pullback_id from_head(std::string head) {
    return pullback_id(itinerary::all_ones(std::move(head)));
  }

  static pullback_id parse(const std::string& text) { return pullback_id(itinerary::parse(text)); }

  const itinerary& id() const { return it_; }
  const std::string& head() const { return it_.head(); }
  std::string to_string() const { return it_.to_string(); }
  pullback_id shift(std::size_t steps) const { return pullback_id(it_.shift(steps)); }

  // Depth of the node in the pullback order: symbols before the tail.
  std::size_t order() const { return it_.head().size(); }

  friend bool operator==(const pullback_id& a, const pullback_id& b) { return a.it_ == b.it_; }
  friend bool operator!=(const pullback_id& a, const pullback_id& b) { return !(a == b); }
  friend bool operator<(const pullback_id& a, const pullback_id& b) {
    return a.to_string() < b.to_string();
  }

 private:
  itinerary it_;
};

// Strip the last symbol of a canonical head (always '0') and any ones before
// it: the label one step closer to the root "1*".
inline pullback_id parent_of(const pullback_id& node) {
  std::string h = node.head();
  if (h.empty()) fail(errc::invalid_argument, "the root pullback has no parent");
  h.pop_back();  // canonical nonempty heads end in '0'
  while (!h.empty() && h.back() == '1') h.pop_back();
  return pullback_id::from_head(std::move(h));
}

// Two distinct pullbacks share a point exactly when the sequences agree up
// to some position k, one has symbol 1 and the other 0 there, and both are
// constantly 1 afterwards. In canonical form that says: one label is the
// other's parent.
inline bool intersects(const pullback_id& a, const pullback_id& b) {
  if (a == b) return false;
  if (!a.head().empty() && parent_of(a) == b) return true;
  if (!b.head().empty() && parent_of(b) == a) return true;
  return false;
}

}  // namespace cremerlab
