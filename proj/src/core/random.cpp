#include "core/random.hpp"

#include "core/errors.hpp"

namespace hegrad {

mpz_class RandomSource::blinding(unsigned n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "blinding width must be positive");
  mpz_class top = mpz_class(1) << n;
  mpz_class v = below(top - 1);
  return v + 1;
}

mpz_class RandomSource::odd_with_bits(unsigned n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "need at least 2 bits");
  mpz_class v = bits(n - 2);
  v |= mpz_class(1) << (n - 1);
  v |= 1;
  return v;
}

std::uint64_t SeededRandom::next_u64() {
  // splitmix64 (public-domain reference constants)
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

mpz_class SeededRandom::bits(unsigned n) {
  mpz_class out = 0;
  unsigned filled = 0;
  while (filled < n) {
    unsigned chunk = std::min(64u, n - filled);
    std::uint64_t word = next_u64();
    if (chunk < 64) word &= (1ULL << chunk) - 1;
    mpz_class w;
    mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    out |= w << filled;
    filled += chunk;
  }
  return out;
}

mpz_class SeededRandom::below(const mpz_class& bound) {
  if (bound <= 0) throw Error(ErrorCode::invalid_argument, "bound must be positive");
  size_t nbits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  // rejection sampling keeps the draw uniform
  for (;;) {
    mpz_class v = bits(static_cast<unsigned>(nbits));
    if (v < bound) return v;
  }
}

mpz_class ScriptedRandom::take() {
  if (values_.empty()) {
    throw Error(ErrorCode::invalid_argument, "scripted random source exhausted");
  }
  mpz_class v = values_.front();
  values_.pop_front();
  return v;
}

mpz_class ScriptedRandom::bits(unsigned n) {
  mpz_class v = take();
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > n) {
    throw Error(ErrorCode::invalid_argument, "scripted value does not fit in " +
                                                 std::to_string(n) + " bits");
  }
  return v;
}

mpz_class ScriptedRandom::below(const mpz_class& bound) {
  mpz_class v = take();
  if (v < 0 || v >= bound) {
    throw Error(ErrorCode::invalid_argument, "scripted value out of range");
  }
  return v;
}

mpz_class ScriptedRandom::blinding(unsigned) {
  mpz_class v = take();
  if (v < 1) throw Error(ErrorCode::invalid_argument, "scripted blinding must be positive");
  return v;
}

mpz_class ScriptedRandom::odd_with_bits(unsigned) {
  mpz_class v = take();
  if (v < 3 || mpz_even_p(v.get_mpz_t())) {
    throw Error(ErrorCode::invalid_argument, "scripted key must be an odd integer >= 3");
  }
  return v;
}

}  // namespace hegrad
