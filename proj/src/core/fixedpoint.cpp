#include "core/fixedpoint.hpp"

#include "core/errors.hpp"

namespace hegrad {
namespace fixedpoint {

mpz_class encode(const ScaledDecimal& value, unsigned sigma) {
  if (value.scale() > sigma) {
    throw Error(ErrorCode::precision_exceeded,
                value.str() + " has more than " + std::to_string(sigma) +
                    " fraction digits");
  }
  return value.mantissa() * pow10(sigma - value.scale());
}

ScaledDecimal decode_residue(const mpz_class& z, unsigned scale, const mpz_class& m) {
  if (m <= 0 || mpz_even_p(m.get_mpz_t())) {
    throw Error(ErrorCode::even_modulus, "modulus must be odd and positive");
  }
  if (z < 0 || z >= m) {
    throw Error(ErrorCode::out_of_range, "residue not in [0, m)");
  }
  mpz_class half = (m - 1) / 2;
  if (z <= half) return ScaledDecimal(z, scale);
  return ScaledDecimal(z - m, scale);
}

ScaledDecimal roundtrip(const ScaledDecimal& value, unsigned scale, const mpz_class& m) {
  if (m <= 0 || mpz_even_p(m.get_mpz_t())) {
    throw Error(ErrorCode::even_modulus, "modulus must be odd and positive");
  }
  mpz_class scaled = encode(value, scale);
  mpz_class half = (m - 1) / 2;
  if (::abs(scaled) > half) {
    throw Error(ErrorCode::bound_violated,
                "|10^" + std::to_string(scale) + " * " + value.str() +
                    "| exceeds (m-1)/2");
  }
  mpz_class residue;
  mpz_mod(residue.get_mpz_t(), scaled.get_mpz_t(), m.get_mpz_t());
  return decode_residue(residue, scale, m);
}

}  // namespace fixedpoint
}  // namespace hegrad
