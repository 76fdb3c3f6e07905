#include "core/singlemod.hpp"

#include "core/errors.hpp"
#include "core/fixedpoint.hpp"

namespace hegrad {
namespace singlemod {

Key Key::from_modulus(mpz_class w) {
  if (w < 3) throw Error(ErrorCode::invalid_argument, "modulus must be >= 3");
  if (mpz_even_p(w.get_mpz_t())) {
    throw Error(ErrorCode::even_modulus, "modulus must be odd");
  }
  Key k;
  k.bit_length = static_cast<unsigned>(mpz_sizeinbase(w.get_mpz_t(), 2));
  k.w = std::move(w);
  return k;
}

Key keygen(unsigned bits, RandomSource& rng) {
  if (bits < 16) throw Error(ErrorCode::invalid_argument, "key too small (< 16 bits)");
  return Key::from_modulus(rng.odd_with_bits(bits));
}

Ciphertext encrypt_with_blinding(const Key& key, const mpz_class& scaled_plaintext,
                                 const mpz_class& blinding) {
  mpz_class half = (key.w - 1) / 2;
  if (::abs(scaled_plaintext) >= half) {
    throw Error(ErrorCode::plaintext_too_large,
                "|plaintext| must stay below (w-1)/2");
  }
  if (blinding < 1) {
    throw Error(ErrorCode::invalid_argument, "blinding factor must be positive");
  }
  // Signed plaintexts enter directly: u*w + m equals (u-1)*w + (m mod w), so
  // the wire value is an ordinary non-negative ciphertext either way.
  return Ciphertext{blinding * key.w + scaled_plaintext, 1};
}

Ciphertext encrypt(const Key& key, const mpz_class& scaled_plaintext, RandomSource& rng,
                   unsigned blinding_bits) {
  unsigned bits = blinding_bits ? blinding_bits : key.bit_length;
  return encrypt_with_blinding(key, scaled_plaintext, rng.blinding(bits));
}

Ciphertext plain_entry(const mpz_class& scaled_plaintext) {
  return Ciphertext{scaled_plaintext, 1};
}

namespace {

const Ciphertext& lookup(const std::map<VarId, Ciphertext>& cts, VarId var,
                         const char* kind) {
  auto it = cts.find(var);
  if (it == cts.end()) {
    throw Error(ErrorCode::missing_variable,
                std::string("no ciphertext for ") + kind + " variable " +
                    std::to_string(var));
  }
  return it->second;
}

}  // namespace

Ciphertext eval_polynomial(const Polynomial& poly,
                           const std::map<VarId, Ciphertext>& state_cts,
                           const std::map<VarId, Ciphertext>& coeff_cts,
                           unsigned sigma) {
  unsigned target = poly.degree();
  mpz_class sum = 0;
  for (const auto& m : poly.monomials()) {
    mpz_class term = 1;
    unsigned term_degree = 0;
    for (const auto& [var, e] : m.x_exponents) {
      const Ciphertext& ct = lookup(state_cts, var, "state");
      for (unsigned i = 0; i < e; ++i) term *= ct.value;
      term_degree += ct.degree * e;
    }
    for (const auto& [var, e] : m.y_exponents) {
      const Ciphertext& ct = lookup(coeff_cts, var, "coefficient");
      for (unsigned i = 0; i < e; ++i) term *= ct.value;
      term_degree += ct.degree * e;
    }
    if (m.literal.fraction_digits() > 0) {
      term *= fixedpoint::encode(m.literal, sigma);
      term_degree += 1;
    } else {
      term *= m.literal.mantissa();
    }
    if (term_degree > target) {
      throw Error(ErrorCode::degree_mismatch,
                  "summand degree exceeds the polynomial degree");
    }
    term *= pow10((target - term_degree) * sigma);
    sum += term;
  }
  return Ciphertext{sum, target};
}

ScaledDecimal decrypt(const Key& key, const Ciphertext& ct, unsigned sigma) {
  mpz_class residue;
  mpz_mod(residue.get_mpz_t(), ct.value.get_mpz_t(), key.w.get_mpz_t());
  return fixedpoint::decode_residue(residue, ct.degree * sigma, key.w);
}

bool meets_key_bound(const Key& key, std::span<const ScaledDecimal> bounds,
                     std::span<const unsigned> degrees, unsigned sigma) {
  if (bounds.size() != degrees.size()) {
    throw Error(ErrorCode::dimension_mismatch, "bounds and degrees differ in length");
  }
  mpq_class threshold = 0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].is_negative()) {
      throw Error(ErrorCode::invalid_argument, "bounds must be non-negative");
    }
    mpq_class scaled = mpq_class(pow10(degrees[i] * sigma)) * bounds[i].to_rational();
    threshold = std::max(threshold, scaled);
  }
  return mpq_class(key.w) >= 1 + 2 * threshold;
}

}  // namespace singlemod
}  // namespace hegrad
