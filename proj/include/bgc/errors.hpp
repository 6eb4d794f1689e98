#pragma once

#include <stdexcept>
#include <string>

namespace bgc {

enum class ErrorCode {
  bad_argument,
  non_hermitian_input,
  not_psd,
  dimension_mismatch,
  domain_error,
  invalid_state,
  invalid_channel,
  bad_order,
  gain_too_high,
  gain_too_low,
  mode_mismatch,
  mixed_variant,
  not_extremal,
  unsupported_branch,
  non_commuting,
  cutoff_too_small,
  invalid_factor,
  quadrature_not_converged,
  parse_error,
};

const char* error_code_name(ErrorCode code);

/// Domain error carrying a stable code for the C ABI boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bgc
