#pragma once

// Error vocabulary shared by all modules.
//
// Conditions that abort an operation throw cremerlab::error carrying a stable
// machine-readable name (the CLI maps it into a JSON error object and exit
// code 2).  Conditions that are ordinary outcomes of an operation (a
// separation search hitting its cap, a ray trace that has not converged, an
// incomplete periodic-point sweep) are encoded in result types instead and
// never throw.

#include <stdexcept>
#include <string>

namespace cremerlab {

enum class errc {
  exact_hit,           // a doubling image hit a leaf endpoint exactly
  depth_too_large,     // brute-force search space exceeds the configured budget
  budget_exceeded,     // tree order exceeds the memory budget
  not_enough_zeros,    // source itinerary has fewer zeros than requested
  no_zeros,            // word is all ones
  not_enough_elements, // string too short for the requested grouping
  identical_sources,   // two-string operation fed the same source itinerary
  prefix_too_short,    // construction plan requires >= 2 common pullbacks
  order_mismatch,      // trees built for different n
  empty_set,           // semidistance over an empty point set
  overflow_escape,     // an orbit left the escape radius
  invalid_argument,    // malformed input (parse failures, domain violations)
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::exact_hit: return "ExactHit";
    case errc::depth_too_large: return "DepthTooLarge";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_enough_zeros: return "NotEnoughZeros";
    case errc::no_zeros: return "NoZeros";
    case errc::not_enough_elements: return "NotEnoughElements";
    case errc::identical_sources: return "IdenticalSources";
    case errc::prefix_too_short: return "PrefixTooShort";
    case errc::order_mismatch: return "OrderMismatch";
    case errc::empty_set: return "EmptySet";
    case errc::overflow_escape: return "OverflowEscape";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& detail) {
  throw error(code, detail);
}

}  // namespace cremerlab
