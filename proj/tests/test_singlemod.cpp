#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "core/fixedpoint.hpp"
#include "core/singlemod.hpp"
#include "support.hpp"

using namespace hegrad;
using hegrad_tests::dec;

TEST_CASE("keygen is deterministic and produces odd keys of the exact width") {
  SeededRandom a(42), b(42);
  auto k1 = singlemod::keygen(25, a);
  auto k2 = singlemod::keygen(25, b);
  CHECK(k1.w == k2.w);
  CHECK(k1.bit_length == 25);
  CHECK(mpz_odd_p(k1.w.get_mpz_t()));
  CHECK_THROWS_AS(singlemod::keygen(8, a), Error);
}

TEST_CASE("key injection accepts odd and rejects even moduli") {
  CHECK(singlemod::Key::from_modulus(mpz_class("25400001")).bit_length == 25);
  CHECK_THROWS_AS(singlemod::Key::from_modulus(mpz_class("25400000")), Error);
}

TEST_CASE("decode-correctness bound matches the reference threshold") {
  auto key = singlemod::Key::from_modulus(mpz_class("25400001"));
  std::vector<ScaledDecimal> bound = {dec("12.665213")};
  std::vector<unsigned> deg = {3};
  CHECK(singlemod::meets_key_bound(key, bound, deg, 2));
  // 1 + 2 * 10^6 * 12.665213 = 25330427: the smallest admissible modulus.
  auto at = singlemod::Key::from_modulus(mpz_class("25330427"));
  CHECK(singlemod::meets_key_bound(at, bound, deg, 2));
  auto below = singlemod::Key::from_modulus(mpz_class("25330425"));
  CHECK(!singlemod::meets_key_bound(below, bound, deg, 2));

  auto tiny = singlemod::Key::from_modulus(mpz_class(3));
  std::vector<ScaledDecimal> zero = {dec("0")};
  std::vector<unsigned> anydeg = {5};
  CHECK(singlemod::meets_key_bound(tiny, zero, anydeg, 4));
}

TEST_CASE("encryption blinds the scaled plaintext with the reference values") {
  auto key = singlemod::Key::from_modulus(mpz_class("25400001"));
  CHECK(singlemod::encrypt_with_blinding(key, 332, 103).value == mpz_class("2616200435"));
  CHECK(singlemod::encrypt_with_blinding(key, -235, 409).value ==
        mpz_class("10388600174"));
  auto small = singlemod::Key::from_modulus(101);
  CHECK(singlemod::encrypt_with_blinding(small, 0, 1).value == 101);
  CHECK(singlemod::encrypt_with_blinding(small, 0, 1).degree == 1);
  CHECK_THROWS_AS(singlemod::encrypt_with_blinding(small, 50, 1), Error);
  CHECK_THROWS_AS(singlemod::encrypt_with_blinding(small, 3, 0), Error);
}

TEST_CASE("re-encrypting the same plaintext draws fresh blinding") {
  auto key = singlemod::Key::from_modulus(mpz_class("25400001"));
  SeededRandom rng(5);
  auto a = singlemod::encrypt(key, 332, rng);
  auto b = singlemod::encrypt(key, 332, rng);
  CHECK(a.value != b.value);
  mpz_class diff = a.value - b.value;
  CHECK(mpz_divisible_p(diff.get_mpz_t(), key.w.get_mpz_t()));
}

TEST_CASE("polynomial evaluation over ciphertexts matches the walkthrough") {
  auto key = singlemod::Key::from_modulus(mpz_class("25400001"));
  std::map<VarId, singlemod::Ciphertext> states{
      {1, singlemod::encrypt_with_blinding(key, 76, 107)},
      {2, singlemod::encrypt_with_blinding(key, -235, 409)}};
  std::map<VarId, singlemod::Ciphertext> coeffs{
      {1, singlemod::encrypt_with_blinding(key, 332, 103)},
      {2, singlemod::encrypt_with_blinding(key, -153, 501)},
      {3, singlemod::encrypt_with_blinding(key, 467, 307)},
      {4, singlemod::encrypt_with_blinding(key, -28, 205)},
      {5, singlemod::plain_entry(242)}};
  std::vector<Monomial> ms;
  ms.push_back({{{1, 2}}, {{1, 1}}, ScaledDecimal(1)});
  ms.push_back({{{2, 2}}, {{2, 1}}, ScaledDecimal(1)});
  ms.push_back({{{1, 1}, {2, 1}}, {{3, 1}}, ScaledDecimal(1)});
  ms.push_back({{{1, 1}}, {{4, 1}}, ScaledDecimal(1)});
  ms.push_back({{}, {{5, 1}}, ScaledDecimal(1)});
  Polynomial poly(std::move(ms));

  auto result = singlemod::eval_polynomial(poly, states, coeffs, 2);
  CHECK(result.value == mpz_class("1612852152286627752945361608571"));
  CHECK(result.degree == 3);
  CHECK(singlemod::decrypt(key, result, 2) == dec("-12.665213"));

  // Identity polynomial passes the ciphertext through.
  std::vector<Monomial> ident;
  ident.push_back({{}, {{1, 1}}, ScaledDecimal(1)});
  auto same = singlemod::eval_polynomial(Polynomial(std::move(ident)), states, coeffs, 2);
  CHECK(same.value == mpz_class("2616200435"));

  std::vector<Monomial> missing;
  missing.push_back({{{7, 1}}, {}, ScaledDecimal(1)});
  CHECK_THROWS_AS(
      singlemod::eval_polynomial(Polynomial(std::move(missing)), states, coeffs, 2),
      Error);
}

TEST_CASE("decrypt(eval(encrypt)) equals the plain oracle on random instances") {
  SeededRandom rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned sigma = 2;
    auto key = singlemod::keygen(128, rng);
    std::vector<ScaledDecimal> x, c;
    for (int i = 0; i < 3; ++i) x.push_back(hegrad_tests::random_decimal(rng, 9));
    for (int i = 0; i < 2; ++i) c.push_back(hegrad_tests::random_decimal(rng, 9));

    std::vector<Monomial> ms;
    unsigned terms = hegrad_tests::pick(rng, 1, 5);
    for (unsigned t = 0; t < terms; ++t) {
      Monomial m;
      unsigned shape = hegrad_tests::pick(rng, 0, 4);
      if (shape == 0) m.x_exponents[hegrad_tests::pick(rng, 1, 3)] += 2;
      if (shape == 1) {
        m.x_exponents[hegrad_tests::pick(rng, 1, 3)] += 1;
        m.y_exponents[hegrad_tests::pick(rng, 1, 2)] += 1;
      }
      if (shape == 2) {
        m.x_exponents[hegrad_tests::pick(rng, 1, 3)] += 2;
        m.y_exponents[hegrad_tests::pick(rng, 1, 2)] += 1;
      }
      if (shape == 3) m.y_exponents[hegrad_tests::pick(rng, 1, 2)] += 1;
      if (shape == 4) m.literal = hegrad_tests::random_decimal(rng, 9);
      ms.push_back(std::move(m));
    }
    Polynomial poly(std::move(ms));
    ScaledDecimal plain = poly.evaluate(x, c);

    std::map<VarId, singlemod::Ciphertext> xs, cs;
    for (std::size_t i = 0; i < x.size(); ++i) {
      xs.emplace(static_cast<VarId>(i + 1),
                 singlemod::encrypt(key, fixedpoint::encode(x[i], sigma), rng));
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      cs.emplace(static_cast<VarId>(i + 1),
                 singlemod::encrypt(key, fixedpoint::encode(c[i], sigma), rng));
    }
    auto ct = singlemod::eval_polynomial(poly, xs, cs, sigma);
    CHECK(singlemod::decrypt(key, ct, sigma) == plain);

    // Structural identity: the evaluated value is a multiple of w away from
    // the scaled plain value.
    mpz_class scaled_plain = fixedpoint::encode(plain, ct.degree * sigma);
    mpz_class residue;
    mpz_class diff = ct.value - scaled_plain;
    mpz_mod(residue.get_mpz_t(), diff.get_mpz_t(), key.w.get_mpz_t());
    CHECK(residue == 0);
  }
}

TEST_CASE("encrypting zero decodes to zero") {
  auto key = singlemod::Key::from_modulus(101);
  SeededRandom rng(9);
  auto ct = singlemod::encrypt(key, 0, rng);
  CHECK(singlemod::decrypt(key, ct, 3) == dec("0"));
}
