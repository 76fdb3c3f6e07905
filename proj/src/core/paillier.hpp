#ifndef HEGRAD_CORE_PAILLIER_HPP
#define HEGRAD_CORE_PAILLIER_HPP

#include <gmpxx.h>

#include <map>
#include <vector>

#include "core/decimal.hpp"
#include "core/polynomial.hpp"
#include "core/random.hpp"

namespace hegrad {
namespace paillier {

struct PublicKey {
  mpz_class alpha;  // modulus p*q
  mpz_class beta;   // base, chosen as alpha + 1

  mpz_class alpha_sq() const { return alpha * alpha; }
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct Keypair {
  PublicKey pub;
  mpz_class nu;  // lcm(p-1, q-1)
  mpz_class pi;  // inverse of ((beta^nu mod alpha^2)-1)/alpha, mod alpha
  mpz_class p, q;

  // Builds and validates the full key tuple from two admissible primes.
  static Keypair from_primes(const mpz_class& p, const mpz_class& q);
};

// Random keypair with the modulus near `bits` bits. Primality is checked
// probabilistically (Miller-Rabin via GMP); the gcd(pq,(p-1)(q-1)) = 1
// admissibility condition triggers regeneration on failure.
Keypair keygen(unsigned bits, RandomSource& rng);

struct Ciphertext {
  mpz_class value;  // in [0, alpha^2)
  mpz_class alpha;  // key identity: the public modulus it was produced under
};

// ct = beta^pt * r^alpha mod alpha^2 with pt in [0, alpha) and r in Z*_alpha.
Ciphertext encrypt(const PublicKey& pub, const mpz_class& plaintext, const mpz_class& r);
Ciphertext encrypt_random(const PublicKey& pub, const mpz_class& plaintext,
                          RandomSource& rng);

// pt = ((ct^nu mod alpha^2) - 1)/alpha * pi mod alpha.
mpz_class decrypt(const Keypair& keys, const Ciphertext& ct);

// Product of ciphertexts encrypts the sum of plaintexts (mod alpha).
Ciphertext add(const std::vector<Ciphertext>& cts);
// ct^k encrypts k times the plaintext (mod alpha); k is reduced into Z_alpha.
Ciphertext scale(const Ciphertext& ct, const mpz_class& k);

// Affine combination over ciphertexts:
//   beta^(10^(2*sigma)*B mod alpha) * prod ct_v^(10^sigma*A_v mod alpha)  (mod alpha^2).
// Decoding the decryption at scale 2*sigma recovers A.x + B exactly whenever
// |10^(2*sigma)(A.x + B)| <= (alpha-1)/2.
Ciphertext eval_affine(const PublicKey& pub,
                       const std::map<VarId, Ciphertext>& state_cts,
                       const std::map<VarId, ScaledDecimal>& weights,
                       const ScaledDecimal& constant, unsigned sigma);

// alpha >= 1 + 2*10^(2*sigma)*bound, checked exactly.
bool meets_key_bound(const mpz_class& alpha, const ScaledDecimal& bound, unsigned sigma);

}  // namespace paillier
}  // namespace hegrad

#endif
