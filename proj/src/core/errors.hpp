#ifndef HEGRAD_CORE_ERRORS_HPP
#define HEGRAD_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hegrad {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  precision_exceeded,
  out_of_range,
  even_modulus,
  bound_violated,
  plaintext_too_large,
  plaintext_out_of_range,
  invalid_randomizer,
  prime_generation_failure,
  missing_variable,
  degree_mismatch,
  key_mismatch,
  not_affine,
  dimension_mismatch,
  unowned_coefficient,
  key_bound_violated,
  audit_violation,
  shape_mismatch,
  invalid_delta,
  malformed_observations,
  config_invalid,
  size_too_small,
  internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::precision_exceeded: return "precision_exceeded";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::even_modulus: return "even_modulus";
    case ErrorCode::bound_violated: return "bound_violated";
    case ErrorCode::plaintext_too_large: return "plaintext_too_large";
    case ErrorCode::plaintext_out_of_range: return "plaintext_out_of_range";
    case ErrorCode::invalid_randomizer: return "invalid_randomizer";
    case ErrorCode::prime_generation_failure: return "prime_generation_failure";
    case ErrorCode::missing_variable: return "missing_variable";
    case ErrorCode::degree_mismatch: return "degree_mismatch";
    case ErrorCode::key_mismatch: return "key_mismatch";
    case ErrorCode::not_affine: return "not_affine";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::unowned_coefficient: return "unowned_coefficient";
    case ErrorCode::key_bound_violated: return "key_bound_violated";
    case ErrorCode::audit_violation: return "audit_violation";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::invalid_delta: return "invalid_delta";
    case ErrorCode::malformed_observations: return "malformed_observations";
    case ErrorCode::config_invalid: return "config_invalid";
    case ErrorCode::size_too_small: return "size_too_small";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace hegrad

#endif
