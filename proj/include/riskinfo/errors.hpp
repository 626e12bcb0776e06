#pragma once

#include <stdexcept>
#include <string>

namespace riskinfo {

// Every domain failure maps to one code so callers (and the CLI exit-code
// mapping) can branch without string matching.
enum class errc {
  all_zero_weights,
  negative_weight,
  length_mismatch,
  not_normalized,
  invalid_alphabet,
  alphabet_mismatch,
  support_violation,
  empty_sample,
  non_convergence,
  partition_overlap,
  partition_uncovered,
  partition_unknown_label,
  base_mismatch,
  grid_too_large,
  empty_range,
  invalid_scenario,
  no_candidates,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void throw_error(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace riskinfo
