#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "core/fixedpoint.hpp"
#include "core/paillier.hpp"
#include "support.hpp"

using namespace hegrad;
using hegrad_tests::dec;

TEST_CASE("the reference keypair comes out exactly") {
  auto keys = paillier::Keypair::from_primes(733, 523);
  CHECK(keys.pub.alpha == 383359);
  CHECK(keys.nu == 63684);
  CHECK(keys.pub.beta == 383360);
  CHECK(keys.pi == 198247);
}

TEST_CASE("keypair invariants hold for generated keys") {
  SeededRandom rng(31);
  for (int i = 0; i < 20; ++i) {
    auto keys = paillier::keygen(64, rng);
    mpz_class alpha = keys.pub.alpha;
    CHECK(alpha == keys.p * keys.q);
    mpz_class totient = (keys.p - 1) * (keys.q - 1);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), alpha.get_mpz_t(), totient.get_mpz_t());
    CHECK(g == 1);
    // Definitional check: pi * ((beta^nu mod alpha^2)-1)/alpha = 1 (mod alpha).
    mpz_class mod = alpha * alpha;
    mpz_class bn;
    mpz_powm(bn.get_mpz_t(), keys.pub.beta.get_mpz_t(), keys.nu.get_mpz_t(),
             mod.get_mpz_t());
    mpz_class l = (bn - 1) / alpha;
    mpz_class check;
    mpz_class prod = l * keys.pi;
    mpz_mod(check.get_mpz_t(), prod.get_mpz_t(), alpha.get_mpz_t());
    CHECK(check == 1);
    // Roundtrip on a random plaintext.
    mpz_class m = rng.below(alpha);
    auto ct = paillier::encrypt_random(keys.pub, m, rng);
    CHECK(paillier::decrypt(keys, ct) == m);
  }
}

TEST_CASE("encryption reproduces the reference ciphertexts") {
  auto keys = paillier::Keypair::from_primes(733, 523);
  CHECK(paillier::encrypt(keys.pub, 136, 196827).value == mpz_class("38891374903"));
  CHECK(paillier::encrypt(keys.pub, 383217, 199762).value == mpz_class("112847502000"));
  CHECK(paillier::encrypt(keys.pub, 0, 1).value == 1);
  CHECK_THROWS_AS(paillier::encrypt(keys.pub, keys.pub.alpha, 2), Error);
  CHECK_THROWS_AS(paillier::encrypt(keys.pub, 5, keys.p), Error);  // gcd(r, alpha) != 1
  try {
    paillier::encrypt(keys.pub, 5, keys.p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_randomizer);
  }
}

TEST_CASE("decryption recovers the reference residue") {
  auto keys = paillier::Keypair::from_primes(733, 523);
  paillier::Ciphertext ct{mpz_class("125129165734"), keys.pub.alpha};
  CHECK(paillier::decrypt(keys, ct) == 128546);
}

TEST_CASE("tiny admissible keypair roundtrips exhaustively") {
  auto keys = paillier::Keypair::from_primes(5, 7);
  CHECK(keys.pub.alpha == 35);
  SeededRandom rng(3);
  for (long m = 0; m < 35; ++m) {
    auto ct = paillier::encrypt_random(keys.pub, m, rng);
    CHECK(paillier::decrypt(keys, ct) == m);
  }
}

TEST_CASE("products of ciphertexts decrypt to sums") {
  auto keys = paillier::Keypair::from_primes(5, 7);
  SeededRandom rng(17);
  auto e2 = paillier::encrypt_random(keys.pub, 2, rng);
  auto e3 = paillier::encrypt_random(keys.pub, 3, rng);
  CHECK(paillier::decrypt(keys, paillier::add({e2, e3})) == 5);
  CHECK(paillier::add({e2}).value == e2.value);
  // Sums wrap modulo alpha.
  auto e30 = paillier::encrypt_random(keys.pub, 30, rng);
  auto e20 = paillier::encrypt_random(keys.pub, 20, rng);
  CHECK(paillier::decrypt(keys, paillier::add({e30, e20})) == (30 + 20) % 35);

  auto other = paillier::Keypair::from_primes(733, 523);
  auto foreign = paillier::encrypt_random(other.pub, 1, rng);
  CHECK_THROWS_AS(paillier::add({e2, foreign}), Error);
}

TEST_CASE("exponentiation decrypts to integer multiples") {
  auto keys = paillier::Keypair::from_primes(5, 7);
  SeededRandom rng(23);
  auto e3 = paillier::encrypt_random(keys.pub, 3, rng);
  CHECK(paillier::decrypt(keys, paillier::scale(e3, 4)) == 12);
  CHECK(paillier::scale(e3, 1).value == e3.value);
  CHECK(paillier::decrypt(keys, paillier::scale(e3, 0)) == 0);
}

TEST_CASE("randomized additive and scaling identities at 128 bits") {
  SeededRandom rng(2718);
  auto keys = paillier::keygen(128, rng);
  const mpz_class& alpha = keys.pub.alpha;
  for (int i = 0; i < 100; ++i) {
    mpz_class a = rng.below(alpha), b = rng.below(alpha);
    auto ea = paillier::encrypt_random(keys.pub, a, rng);
    auto eb = paillier::encrypt_random(keys.pub, b, rng);
    mpz_class sum;
    mpz_class raw = a + b;
    mpz_mod(sum.get_mpz_t(), raw.get_mpz_t(), alpha.get_mpz_t());
    CHECK(paillier::decrypt(keys, paillier::add({ea, eb})) == sum);
    mpz_class k = rng.below(1000);
    mpz_class prod;
    mpz_class rawp = a * k;
    mpz_mod(prod.get_mpz_t(), rawp.get_mpz_t(), alpha.get_mpz_t());
    CHECK(paillier::decrypt(keys, paillier::scale(ea, k)) == prod);
  }
}

TEST_CASE("affine evaluation matches the walkthrough and the plain oracle") {
  auto keys = paillier::Keypair::from_primes(733, 523);
  unsigned sigma = 2;
  std::map<VarId, paillier::Ciphertext> cts{
      {1, paillier::encrypt(keys.pub, 136, 196827)},
      {2, paillier::encrypt(keys.pub, 383217, 199762)}};
  std::map<VarId, ScaledDecimal> weights{{1, dec("2.45")}, {2, dec("-3.03")}};
  auto ct = paillier::eval_affine(keys.pub, cts, weights, dec("5.22"), sigma);
  CHECK(ct.value == mpz_class("125129165734"));
  CHECK(fixedpoint::decode_residue(paillier::decrypt(keys, ct), 2 * sigma,
                                   keys.pub.alpha) == dec("12.8546"));

  // Zero weights and constant decrypt to zero.
  auto zero = paillier::eval_affine(keys.pub, cts, {}, dec("0"), sigma);
  CHECK(paillier::decrypt(keys, zero) == 0);

  std::map<VarId, ScaledDecimal> missing{{3, dec("1")}};
  CHECK_THROWS_AS(paillier::eval_affine(keys.pub, cts, missing, dec("0"), sigma), Error);
}

TEST_CASE("random affine instances decode to the exact plain value") {
  SeededRandom rng(515);
  unsigned sigma = 2;
  auto keys = paillier::keygen(128, rng);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ScaledDecimal> x;
    std::map<VarId, paillier::Ciphertext> cts;
    std::map<VarId, ScaledDecimal> weights;
    ScaledDecimal constant = hegrad_tests::random_decimal(rng, 9);
    ScaledDecimal plain = constant;
    for (VarId v = 1; v <= 4; ++v) {
      ScaledDecimal value = hegrad_tests::random_decimal(rng, 9);
      ScaledDecimal weight = hegrad_tests::random_decimal(rng, 9);
      x.push_back(value);
      weights.emplace(v, weight);
      plain = plain + weight * value;
      mpz_class pt;
      mpz_class scaled = fixedpoint::encode(value, sigma);
      mpz_mod(pt.get_mpz_t(), scaled.get_mpz_t(), keys.pub.alpha.get_mpz_t());
      cts.emplace(v, paillier::encrypt_random(keys.pub, pt, rng));
    }
    auto ct = paillier::eval_affine(keys.pub, cts, weights, constant, sigma);
    auto decoded = fixedpoint::decode_residue(paillier::decrypt(keys, ct), 2 * sigma,
                                              keys.pub.alpha);
    CHECK(decoded == plain);
  }
}

TEST_CASE("distinct randomizers give distinct ciphertexts") {
  auto keys = paillier::Keypair::from_primes(733, 523);
  CHECK(paillier::encrypt(keys.pub, 136, 196827).value !=
        paillier::encrypt(keys.pub, 136, 196829).value);
}

TEST_CASE("key-size condition matches the reference threshold") {
  CHECK(paillier::meets_key_bound(mpz_class("383359"), dec("12.8546"), 2));
  CHECK(paillier::meets_key_bound(mpz_class("257093"), dec("12.8546"), 2));
  CHECK(!paillier::meets_key_bound(mpz_class("257092"), dec("12.8546"), 2));
  CHECK(paillier::meets_key_bound(mpz_class(3), dec("0"), 4));
}
