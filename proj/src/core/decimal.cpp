#include "core/decimal.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace hegrad {

mpz_class pow10(unsigned exponent) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

ScaledDecimal::ScaledDecimal(mpz_class mantissa, unsigned scale)
    : mantissa_(std::move(mantissa)), scale_(scale) {
  normalize();
}

void ScaledDecimal::normalize() {
  if (mantissa_ == 0) {
    scale_ = 0;
    return;
  }
  while (scale_ > 0 && mpz_divisible_ui_p(mantissa_.get_mpz_t(), 10)) {
    mantissa_ /= 10;
    --scale_;
  }
}

ScaledDecimal ScaledDecimal::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty decimal literal");
  std::string digits;
  digits.reserve(text.size());
  size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    if (text[i] == '-') digits.push_back('-');
    ++i;
  }
  bool seen_digit = false;
  bool seen_dot = false;
  unsigned frac = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw Error(ErrorCode::parse_error, "two dots in decimal literal");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac;
    } else {
      throw Error(ErrorCode::parse_error,
                  "bad character in decimal literal: " + std::string(text));
    }
  }
  if (!seen_digit) throw Error(ErrorCode::parse_error, "no digits in decimal literal");
  return ScaledDecimal(mpz_class(digits, 10), frac);
}

ScaledDecimal ScaledDecimal::abs() const {
  return is_negative() ? -*this : *this;
}

ScaledDecimal operator+(const ScaledDecimal& a, const ScaledDecimal& b) {
  unsigned s = std::max(a.scale_, b.scale_);
  mpz_class ma = a.mantissa_ * pow10(s - a.scale_);
  mpz_class mb = b.mantissa_ * pow10(s - b.scale_);
  return ScaledDecimal(ma + mb, s);
}

ScaledDecimal operator-(const ScaledDecimal& a, const ScaledDecimal& b) {
  return a + (-b);
}

ScaledDecimal operator*(const ScaledDecimal& a, const ScaledDecimal& b) {
  return ScaledDecimal(a.mantissa_ * b.mantissa_, a.scale_ + b.scale_);
}

std::strong_ordering operator<=>(const ScaledDecimal& a, const ScaledDecimal& b) {
  unsigned s = std::max(a.scale_, b.scale_);
  mpz_class ma = a.mantissa_ * pow10(s - a.scale_);
  mpz_class mb = b.mantissa_ * pow10(s - b.scale_);
  int c = cmp(ma, mb);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ScaledDecimal::str() const {
  mpz_class m = mantissa_ < 0 ? mpz_class(-mantissa_) : mantissa_;
  std::string body = m.get_str();
  if (scale_ > 0) {
    if (body.size() <= scale_) body.insert(0, scale_ + 1 - body.size(), '0');
    body.insert(body.size() - scale_, ".");
  }
  return (mantissa_ < 0 ? "-" : "") + body;
}

mpq_class ScaledDecimal::to_rational() const {
  mpq_class q(mantissa_, pow10(scale_));
  q.canonicalize();
  return q;
}

std::optional<ScaledDecimal> ScaledDecimal::from_rational(const mpq_class& q) {
  mpz_class den = q.get_den();  // canonical, positive
  unsigned twos = 0, fives = 0;
  mpz_class d = den;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::nullopt;
  unsigned scale = std::max(twos, fives);
  mpz_class mant = q.get_num() * (pow10(scale) / den);
  return ScaledDecimal(mant, scale);
}

ScaledDecimal quantize(const ScaledDecimal& value, unsigned sigma) {
  if (value.scale() <= sigma) return value;
  mpz_class divisor = pow10(value.scale() - sigma);
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value.mantissa().get_mpz_t(),
              divisor.get_mpz_t());
  mpz_class r2 = ::abs(r) * 2;
  if (r2 >= divisor) q += (value.mantissa() < 0 ? -1 : 1);
  return ScaledDecimal(q, sigma);
}

}  // namespace hegrad
