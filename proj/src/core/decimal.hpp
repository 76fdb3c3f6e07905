#ifndef HEGRAD_CORE_DECIMAL_HPP
#define HEGRAD_CORE_DECIMAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hegrad {

mpz_class pow10(unsigned exponent);

// Exact signed decimal: mantissa / 10^scale. The numeric backbone of the
// whole library; there is deliberately no floating point anywhere near it.
// Values are kept normalized (no trailing zero digits, zero has scale 0),
// so two equal numbers always have identical (mantissa, scale) pairs.
class ScaledDecimal {
 public:
  ScaledDecimal() : mantissa_(0), scale_(0) {}
  ScaledDecimal(mpz_class mantissa, unsigned scale);
  explicit ScaledDecimal(long value) : mantissa_(value), scale_(0) {}

  // Parses "-12.665213", "3", "+0.50" (normalized to 0.5). Throws parse_error.
  static ScaledDecimal parse(std::string_view text);

  const mpz_class& mantissa() const { return mantissa_; }
  unsigned scale() const { return scale_; }
  // Number of decimal fraction digits actually needed.
  unsigned fraction_digits() const { return scale_; }

  bool is_zero() const { return mantissa_ == 0; }
  bool is_negative() const { return mantissa_ < 0; }

  ScaledDecimal operator-() const { return ScaledDecimal(-mantissa_, scale_); }
  ScaledDecimal abs() const;

  friend ScaledDecimal operator+(const ScaledDecimal& a, const ScaledDecimal& b);
  friend ScaledDecimal operator-(const ScaledDecimal& a, const ScaledDecimal& b);
  friend ScaledDecimal operator*(const ScaledDecimal& a, const ScaledDecimal& b);

  friend bool operator==(const ScaledDecimal& a, const ScaledDecimal& b) {
    return a.scale_ == b.scale_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const ScaledDecimal& a, const ScaledDecimal& b);

  std::string str() const;
  mpq_class to_rational() const;
  // Exact conversion back from a rational; nullopt when the reduced
  // denominator is not of the form 2^a * 5^b.
  static std::optional<ScaledDecimal> from_rational(const mpq_class& q);

 private:
  void normalize();

  mpz_class mantissa_;
  unsigned scale_;
};

// Round-half-away-from-zero to at most `sigma` fraction digits. The only
// place the library ever drops digits; everything else rejects instead.
ScaledDecimal quantize(const ScaledDecimal& value, unsigned sigma);

}  // namespace hegrad

#endif
