#ifndef HEGRAD_CORE_RANDOM_HPP
#define HEGRAD_CORE_RANDOM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <deque>

namespace hegrad {

// All randomness is injected through this interface so that every run is
// reproducible from a seed, and golden tests can script the exact values.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform integer in [0, 2^bits).
  virtual mpz_class bits(unsigned n) = 0;

  // Uniform integer in [0, bound), bound > 0.
  virtual mpz_class below(const mpz_class& bound) = 0;

  // Positive blinding factor in [1, 2^bits).
  virtual mpz_class blinding(unsigned n);

  // Odd integer with exactly `n` bits (top and bottom bits set), n >= 2.
  virtual mpz_class odd_with_bits(unsigned n);
};

// splitmix64-based deterministic generator; stable across platforms.
class SeededRandom : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : state_(seed) {}

  mpz_class bits(unsigned n) override;
  mpz_class below(const mpz_class& bound) override;

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
};

// Replays a fixed sequence of values; used to inject the reference
// randomness of the worked numerical examples. Values are consumed verbatim:
// blinding() and odd_with_bits() return the next scripted value as-is after
// validating it.
class ScriptedRandom : public RandomSource {
 public:
  explicit ScriptedRandom(std::deque<mpz_class> values) : values_(std::move(values)) {}

  mpz_class bits(unsigned n) override;
  mpz_class below(const mpz_class& bound) override;
  mpz_class blinding(unsigned n) override;
  mpz_class odd_with_bits(unsigned n) override;

  bool exhausted() const { return values_.empty(); }

 private:
  mpz_class take();
  std::deque<mpz_class> values_;
};

}  // namespace hegrad

#endif
