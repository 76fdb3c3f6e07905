#include "core/paillier.hpp"

#include "core/errors.hpp"
#include "core/fixedpoint.hpp"

namespace hegrad {
namespace paillier {

namespace {

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class math_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class out;
  mpz_mod(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return out;
}

void require_same_key(const Ciphertext& ct, const mpz_class& alpha) {
  if (ct.alpha != alpha) {
    throw Error(ErrorCode::key_mismatch, "ciphertext was produced under another key");
  }
}

}  // namespace

Keypair Keypair::from_primes(const mpz_class& p, const mpz_class& q) {
  if (p < 2 || q < 2 || p == q) {
    throw Error(ErrorCode::invalid_argument, "need two distinct primes");
  }
  mpz_class alpha = p * q;
  mpz_class totient = (p - 1) * (q - 1);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), alpha.get_mpz_t(), totient.get_mpz_t());
  if (g != 1) {
    throw Error(ErrorCode::invalid_argument, "gcd(pq, (p-1)(q-1)) != 1");
  }
  Keypair k;
  k.p = p;
  k.q = q;
  k.pub.alpha = alpha;
  k.pub.beta = alpha + 1;
  mpz_lcm(k.nu.get_mpz_t(), mpz_class(p - 1).get_mpz_t(), mpz_class(q - 1).get_mpz_t());
  mpz_class l = (powm(k.pub.beta, k.nu, alpha * alpha) - 1) / alpha;
  if (mpz_invert(k.pi.get_mpz_t(), l.get_mpz_t(), alpha.get_mpz_t()) == 0) {
    throw Error(ErrorCode::internal, "decryption constant not invertible");
  }
  return k;
}

Keypair keygen(unsigned bits, RandomSource& rng) {
  if (bits < 16) throw Error(ErrorCode::invalid_argument, "key too small (< 16 bits)");
  unsigned pbits = bits / 2;
  unsigned qbits = bits - pbits;
  for (int attempt = 0; attempt < 256; ++attempt) {
    mpz_class p = rng.odd_with_bits(pbits);
    mpz_class q = rng.odd_with_bits(qbits);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    if (p == q) continue;
    try {
      return Keypair::from_primes(p, q);
    } catch (const Error&) {
      continue;  // inadmissible pair, draw again
    }
  }
  throw Error(ErrorCode::prime_generation_failure,
              "no admissible prime pair after bounded retries");
}

Ciphertext encrypt(const PublicKey& pub, const mpz_class& plaintext, const mpz_class& r) {
  if (plaintext < 0 || plaintext >= pub.alpha) {
    throw Error(ErrorCode::plaintext_out_of_range, "plaintext not in [0, alpha)");
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pub.alpha.get_mpz_t());
  if (r <= 0 || r >= pub.alpha || g != 1) {
    throw Error(ErrorCode::invalid_randomizer, "randomizer must lie in Z*_alpha");
  }
  mpz_class mod = pub.alpha_sq();
  mpz_class value = math_mod(powm(pub.beta, plaintext, mod) * powm(r, pub.alpha, mod), mod);
  return Ciphertext{value, pub.alpha};
}

Ciphertext encrypt_random(const PublicKey& pub, const mpz_class& plaintext,
                          RandomSource& rng) {
  for (;;) {
    mpz_class r = rng.below(pub.alpha);
    if (r == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pub.alpha.get_mpz_t());
    if (g == 1) return encrypt(pub, plaintext, r);
  }
}

mpz_class decrypt(const Keypair& keys, const Ciphertext& ct) {
  require_same_key(ct, keys.pub.alpha);
  mpz_class mod = keys.pub.alpha_sq();
  mpz_class l = (powm(ct.value, keys.nu, mod) - 1) / keys.pub.alpha;
  return math_mod(l * keys.pi, keys.pub.alpha);
}

Ciphertext add(const std::vector<Ciphertext>& cts) {
  if (cts.empty()) throw Error(ErrorCode::invalid_argument, "nothing to combine");
  mpz_class alpha = cts.front().alpha;
  mpz_class mod = alpha * alpha;
  mpz_class value = 1;
  for (const auto& ct : cts) {
    require_same_key(ct, alpha);
    value = math_mod(value * ct.value, mod);
  }
  return Ciphertext{value, alpha};
}

Ciphertext scale(const Ciphertext& ct, const mpz_class& k) {
  mpz_class exp = math_mod(k, ct.alpha);
  return Ciphertext{powm(ct.value, exp, ct.alpha * ct.alpha), ct.alpha};
}

Ciphertext eval_affine(const PublicKey& pub,
                       const std::map<VarId, Ciphertext>& state_cts,
                       const std::map<VarId, ScaledDecimal>& weights,
                       const ScaledDecimal& constant, unsigned sigma) {
  mpz_class mod = pub.alpha_sq();
  mpz_class value = powm(pub.beta, math_mod(fixedpoint::encode(constant, 2 * sigma), pub.alpha), mod);
  for (const auto& [var, weight] : weights) {
    auto it = state_cts.find(var);
    if (it == state_cts.end()) {
      throw Error(ErrorCode::missing_variable,
                  "no ciphertext for state variable " + std::to_string(var));
    }
    require_same_key(it->second, pub.alpha);
    mpz_class exp = math_mod(fixedpoint::encode(weight, sigma), pub.alpha);
    value = math_mod(value * powm(it->second.value, exp, mod), mod);
  }
  return Ciphertext{value, pub.alpha};
}

bool meets_key_bound(const mpz_class& alpha, const ScaledDecimal& bound, unsigned sigma) {
  if (bound.is_negative()) {
    throw Error(ErrorCode::invalid_argument, "bound must be non-negative");
  }
  mpq_class scaled = mpq_class(pow10(2 * sigma)) * bound.to_rational();
  return mpq_class(alpha) >= 1 + 2 * scaled;
}

}  // namespace paillier
}  // namespace hegrad
