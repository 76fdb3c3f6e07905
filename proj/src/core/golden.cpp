#include "core/golden.hpp"

#include <sstream>

#include "core/fixedpoint.hpp"
#include "core/singlemod.hpp"

namespace hegrad {
namespace golden {

namespace {

struct Checker {
  Trace trace;

  void expect(const std::string& name, const std::string& got,
              const std::string& want) {
    if (got == want) {
      trace.lines.push_back("ok " + name + " = " + got);
    } else {
      trace.ok = false;
      trace.lines.push_back("MISMATCH " + name + ": expected " + want + ", got " + got);
      if (trace.first_mismatch.empty()) trace.first_mismatch = name;
    }
  }

  void expect(const std::string& name, const mpz_class& got, const char* want) {
    expect(name, got.get_str(), want);
  }

  void expect(const std::string& name, const ScaledDecimal& got, const char* want) {
    expect(name, got.str(), want);
  }

  void expect_true(const std::string& name, bool got) {
    expect(name, got ? "true" : "false", "true");
  }
};

ScaledDecimal dec(const char* s) { return ScaledDecimal::parse(s); }

}  // namespace

std::string Trace::text() const {
  std::ostringstream out;
  for (const auto& line : lines) out << line << "\n";
  out << (ok ? "golden replay: pass" : "golden replay: FAIL (" + first_mismatch + ")")
      << "\n";
  return out.str();
}

Problem private_key_example_problem() {
  Problem p;
  p.sigma = 2;
  p.gamma = StepSchedule::constant(ScaledDecimal(1));
  p.agents.push_back({1, FeasibleSet::all_reals(1), {dec("0.76")}});
  p.agents.push_back({1, FeasibleSet::all_reals(1), {dec("-2.35")}});
  p.coefficients = {dec("3.32"), dec("-1.53"), dec("4.67"), dec("-0.28"), dec("2.42")};
  p.holders = {{1}, {2}, {1, 2}, {1}, {kSystemOperator}};
  p.partition = build_partition(p.holders);
  std::vector<Monomial> phi1;
  phi1.push_back({{{1, 2}}, {{1, 1}}, ScaledDecimal(1)});          // c1 x1^2
  phi1.push_back({{{2, 2}}, {{2, 1}}, ScaledDecimal(1)});          // c2 x2^2
  phi1.push_back({{{1, 1}, {2, 1}}, {{3, 1}}, ScaledDecimal(1)});  // c3 x1 x2
  phi1.push_back({{{1, 1}}, {{4, 1}}, ScaledDecimal(1)});          // c4 x1
  phi1.push_back({{}, {{5, 1}}, ScaledDecimal(1)});                // c5
  p.gradients = {Polynomial(std::move(phi1)), Polynomial()};
  p.validate();
  return p;
}

mpz_class private_key_example_modulus() { return mpz_class("25400001"); }

std::deque<mpz_class> private_key_example_blindings() {
  // Coefficient blindings in partition order (agent 1: c1, c3, c4; agent 2:
  // c2), then the step-0 state blindings (agent 1, agent 2).
  return {103, 307, 205, 501, 107, 409};
}

Trace replay_private_key() {
  Checker ck;
  const Problem problem = private_key_example_problem();
  const auto key = singlemod::Key::from_modulus(private_key_example_modulus());
  const unsigned sigma = problem.sigma;

  auto x = problem.initial_state();
  ScaledDecimal phi_plain = problem.gradients[0].evaluate(x, problem.coefficients);
  ck.expect("plain gradient", phi_plain, "-12.665213");

  std::vector<ScaledDecimal> bound = {phi_plain.abs()};
  std::vector<unsigned> degree = {problem.gradients[0].degree()};
  ck.expect("gradient degree", mpz_class(degree[0]), "3");
  ck.expect_true("key bound satisfied", singlemod::meets_key_bound(key, bound, degree, sigma));

  auto blind = [&](std::size_t coeff_or_state, long u) {
    mpz_class scaled =
        coeff_or_state < 5
            ? fixedpoint::encode(problem.coefficients[coeff_or_state], sigma)
            : fixedpoint::encode(x[coeff_or_state - 5], sigma);
    return singlemod::encrypt_with_blinding(key, scaled, u);
  };
  auto y1 = blind(0, 103);
  ck.expect("coefficient ciphertext y1", y1.value, "2616200435");
  auto y3 = blind(2, 307);
  ck.expect("coefficient ciphertext y3", y3.value, "7797800774");
  auto y4 = blind(3, 205);
  ck.expect("coefficient ciphertext y4", y4.value, "5207000177");
  auto y2 = blind(1, 501);
  ck.expect("coefficient ciphertext y2", y2.value, "12725400348");
  auto y5 = singlemod::plain_entry(fixedpoint::encode(problem.coefficients[4], sigma));
  ck.expect("operator entry y5", y5.value, "242");

  auto x1 = blind(5, 107);
  ck.expect("state ciphertext x1", x1.value, "2717800183");
  auto x2 = blind(6, 409);
  ck.expect("state ciphertext x2", x2.value, "10388600174");

  std::map<VarId, singlemod::Ciphertext> states{{1, x1}, {2, x2}};
  std::map<VarId, singlemod::Ciphertext> coeffs{{1, y1}, {2, y2}, {3, y3}, {4, y4}, {5, y5}};
  auto evaluated = singlemod::eval_polynomial(problem.gradients[0], states, coeffs, sigma);
  ck.expect("evaluated ciphertext", evaluated.value, "1612852152286627752945361608571");

  mpz_class residue;
  mpz_mod(residue.get_mpz_t(), evaluated.value.get_mpz_t(), key.w.get_mpz_t());
  ck.expect("residue mod w", residue, "12734788");

  ScaledDecimal decoded = singlemod::decrypt(key, evaluated, sigma);
  ck.expect("decrypted gradient", decoded, "-12.665213");

  auto updated = gradient_update({x[0]}, problem.gamma.at(0), {decoded},
                                 problem.agents[0].feasible);
  ck.expect("local update", updated[0], "13.425213");
  return ck.trace;
}

Problem public_key_example_problem() {
  Problem p;
  p.sigma = 2;
  p.gamma = StepSchedule::constant(ScaledDecimal(1));
  p.agents.push_back({1, FeasibleSet::all_reals(1), {dec("1.36")}});
  p.agents.push_back({1, FeasibleSet::all_reals(1), {dec("-1.42")}});
  std::vector<Monomial> phi1;
  phi1.push_back({{{1, 1}}, {}, dec("2.45")});
  phi1.push_back({{{2, 1}}, {}, dec("-3.03")});
  phi1.push_back({{}, {}, dec("5.22")});
  p.gradients = {Polynomial(std::move(phi1)), Polynomial()};
  p.validate();
  return p;
}

std::vector<paillier::Keypair> public_key_example_keys() {
  return {paillier::Keypair::from_primes(733, 523),
          paillier::Keypair::from_primes(739, 547)};
}

std::deque<mpz_class> public_key_example_randomizers() {
  // Step-0 encryption order is owner-major, target-minor: agent 1 under key
  // 1 and key 2, then agent 2 under key 1 and key 2. The reference values
  // cover the key-1 encryptions; the key-2 randomizers are free choices.
  return {196827, 12345, 199762, 54321};
}

Trace replay_public_key() {
  Checker ck;
  const Problem problem = public_key_example_problem();
  const unsigned sigma = problem.sigma;

  auto x = problem.initial_state();
  ScaledDecimal phi_plain = problem.gradients[0].evaluate(x, problem.coefficients);
  ck.expect("plain gradient", phi_plain, "12.8546");

  auto keys = paillier::Keypair::from_primes(733, 523);
  ck.expect("modulus alpha", keys.pub.alpha, "383359");
  ck.expect("private nu", keys.nu, "63684");
  ck.expect("base beta", keys.pub.beta, "383360");
  ck.expect("private pi", keys.pi, "198247");
  ck.expect_true("key bound satisfied",
                 paillier::meets_key_bound(keys.pub.alpha, phi_plain.abs(), sigma));

  auto scaled_state = [&](std::size_t i) {
    mpz_class pt;
    mpz_class raw = fixedpoint::encode(x[i], sigma);
    mpz_mod(pt.get_mpz_t(), raw.get_mpz_t(), keys.pub.alpha.get_mpz_t());
    return pt;
  };
  ck.expect("scaled state 1", scaled_state(0), "136");
  ck.expect("scaled state 2 (wrapped)", scaled_state(1), "383217");

  auto x1 = paillier::encrypt(keys.pub, scaled_state(0), 196827);
  ck.expect("state ciphertext x1", x1.value, "38891374903");
  auto x2 = paillier::encrypt(keys.pub, scaled_state(1), 199762);
  ck.expect("state ciphertext x2", x2.value, "112847502000");

  auto affine = problem.gradients[0].to_affine();
  ck.expect_true("gradient is affine", affine.has_value());
  std::map<VarId, paillier::Ciphertext> cts{{1, x1}, {2, x2}};
  auto evaluated =
      paillier::eval_affine(keys.pub, cts, affine->weights, affine->constant, sigma);
  ck.expect("evaluated ciphertext", evaluated.value, "125129165734");

  mpz_class pt = paillier::decrypt(keys, evaluated);
  ck.expect("decrypted residue", pt, "128546");

  ScaledDecimal decoded = fixedpoint::decode_residue(pt, 2 * sigma, keys.pub.alpha);
  ck.expect("decoded gradient", decoded, "12.8546");

  auto updated = gradient_update({x[0]}, problem.gamma.at(0), {decoded},
                                 problem.agents[0].feasible);
  ck.expect("local update", updated[0], "-11.4946");
  return ck.trace;
}

}  // namespace golden
}  // namespace hegrad
