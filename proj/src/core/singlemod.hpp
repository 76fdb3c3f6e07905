#ifndef HEGRAD_CORE_SINGLEMOD_HPP
#define HEGRAD_CORE_SINGLEMOD_HPP

#include <gmpxx.h>

#include <map>
#include <span>
#include <vector>

#include "core/decimal.hpp"
#include "core/polynomial.hpp"
#include "core/random.hpp"

namespace hegrad {
namespace singlemod {

// Shared secret key of the private-key scheme: a large odd modulus.
struct Key {
  mpz_class w;
  unsigned bit_length = 0;

  static Key from_modulus(mpz_class w);
};

Key keygen(unsigned bits, RandomSource& rng);

// A blinded integer u*w + 10^sigma*m together with the accumulated degree of
// its plaintext content; the degree fixes the decode scale. Fresh encryptions
// have degree 1 and positive value; evaluated sums can go negative when
// negative public literals dominate, which the mod-w decryption absorbs.
struct Ciphertext {
  mpz_class value;
  unsigned degree = 1;
};

// Blind a scaled plaintext with a fresh positive factor. |plaintext| must
// stay below (w-1)/2 so a degree-1 value decodes. The scripted path feeds the
// reference example blindings straight through.
Ciphertext encrypt(const Key& key, const mpz_class& scaled_plaintext, RandomSource& rng,
                   unsigned blinding_bits = 0);
Ciphertext encrypt_with_blinding(const Key& key, const mpz_class& scaled_plaintext,
                                 const mpz_class& blinding);

// Operator-held values enter computations unblinded (blinding factor zero).
Ciphertext plain_entry(const mpz_class& scaled_plaintext);

// Evaluate a polynomial over ciphertexts: monomial products, each padded by
// 10^((deg(poly)-deg(monomial))*sigma) so all summands carry the same scale.
// Integer literals multiply through unscaled; fractional literals enter as
// unblinded scaled entries and count one degree.
Ciphertext eval_polynomial(const Polynomial& poly,
                           const std::map<VarId, Ciphertext>& state_cts,
                           const std::map<VarId, Ciphertext>& coeff_cts,
                           unsigned sigma);

// Reduce mod w and decode at scale degree*sigma.
ScaledDecimal decrypt(const Key& key, const Ciphertext& ct, unsigned sigma);

// w >= 1 + 2*max_i 10^(degree_i*sigma)*|bound_i|: the decode-correctness
// condition, checked exactly.
bool meets_key_bound(const Key& key, std::span<const ScaledDecimal> bounds,
                     std::span<const unsigned> degrees, unsigned sigma);

}  // namespace singlemod
}  // namespace hegrad

#endif
