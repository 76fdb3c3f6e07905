#ifndef HEGRAD_TESTS_SUPPORT_HPP
#define HEGRAD_TESTS_SUPPORT_HPP

#include <string>
#include <vector>

#include "core/problem.hpp"
#include "core/random.hpp"

namespace hegrad_tests {

using namespace hegrad;

inline ScaledDecimal dec(const std::string& s) { return ScaledDecimal::parse(s); }

// Signed decimal with two fraction digits, |value| <= magnitude.
inline ScaledDecimal random_decimal(RandomSource& rng, long magnitude) {
  mpz_class m = rng.below(mpz_class(magnitude * 100 * 2 + 1)) - magnitude * 100;
  return ScaledDecimal(m, 2);
}

inline ScaledDecimal random_nonzero_decimal(RandomSource& rng, long magnitude) {
  for (;;) {
    ScaledDecimal v = random_decimal(rng, magnitude);
    if (!v.is_zero()) return v;
  }
}

inline unsigned pick(RandomSource& rng, unsigned lo, unsigned hi) {
  return lo + static_cast<unsigned>(rng.below(mpz_class(hi - lo + 1)).get_ui());
}

// Random polynomial-gradient problem for the private-key scheme: up to four
// agents, box feasible sets, gradients of joint degree at most three. The
// box keeps every trajectory inside a range where a 128-bit modulus
// dominates the decode bound by many orders of magnitude.
inline Problem random_polynomial_problem(std::uint64_t seed) {
  SeededRandom rng(seed);
  Problem p;
  p.sigma = 2;
  p.gamma = StepSchedule::constant(dec("0.1"));

  unsigned agents = pick(rng, 1, 4);
  for (unsigned a = 0; a < agents; ++a) {
    AgentSpec spec;
    spec.dim = pick(rng, 1, 2);
    std::vector<ScaledDecimal> lo(spec.dim, ScaledDecimal(-10));
    std::vector<ScaledDecimal> hi(spec.dim, ScaledDecimal(10));
    spec.feasible = FeasibleSet::box(lo, hi);
    for (std::size_t c = 0; c < spec.dim; ++c) spec.x0.push_back(random_decimal(rng, 5));
    p.agents.push_back(std::move(spec));
  }
  std::size_t n = p.total_dim();

  // One private coefficient per agent, one operator coefficient, and one
  // shared coefficient to exercise the partition.
  for (unsigned a = 1; a <= agents; ++a) {
    p.coefficients.push_back(random_nonzero_decimal(rng, 9));
    p.holders.push_back({a});
  }
  p.coefficients.push_back(random_nonzero_decimal(rng, 9));
  p.holders.push_back({kSystemOperator});
  p.coefficients.push_back(random_nonzero_decimal(rng, 9));
  p.holders.push_back({1u, agents});
  p.partition = build_partition(p.holders);
  auto ycount = static_cast<VarId>(p.coefficients.size());

  auto xv = [&] { return static_cast<VarId>(1 + rng.below(mpz_class(n)).get_ui()); };
  auto yv = [&] { return static_cast<VarId>(1 + rng.below(mpz_class(ycount)).get_ui()); };

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial> ms;
    unsigned count = pick(rng, 1, 4);
    for (unsigned t = 0; t < count; ++t) {
      Monomial m;
      switch (pick(rng, 0, 6)) {
        case 0:  // y
          m.y_exponents[yv()] += 1;
          break;
        case 1:  // x
          m.x_exponents[xv()] += 1;
          break;
        case 2:  // x*y
          m.x_exponents[xv()] += 1;
          m.y_exponents[yv()] += 1;
          break;
        case 3:  // x*x'
          m.x_exponents[xv()] += 1;
          m.x_exponents[xv()] += 1;
          break;
        case 4:  // x*x'*y
          m.x_exponents[xv()] += 1;
          m.x_exponents[xv()] += 1;
          m.y_exponents[yv()] += 1;
          break;
        case 5:  // x^2 with a fractional literal (degree 3 total)
          m.x_exponents[xv()] += 2;
          m.literal = dec("0.5");
          break;
        case 6:  // fractional constant
          m.literal = random_nonzero_decimal(rng, 9);
          break;
      }
      if (m.literal == ScaledDecimal(1) && pick(rng, 0, 1)) {
        m.literal = pick(rng, 0, 1) ? ScaledDecimal(-1) : ScaledDecimal(2);
      }
      ms.push_back(std::move(m));
    }
    p.gradients.push_back(Polynomial(std::move(ms)));
  }
  p.validate();
  return p;
}

// Random affine problem for the public-key scheme: literal weights only.
inline Problem random_affine_problem(std::uint64_t seed) {
  SeededRandom rng(seed);
  Problem p;
  p.sigma = 2;
  p.gamma = StepSchedule::constant(dec("0.1"));

  unsigned agents = pick(rng, 1, 4);
  for (unsigned a = 0; a < agents; ++a) {
    AgentSpec spec;
    spec.dim = pick(rng, 1, 2);
    std::vector<ScaledDecimal> lo(spec.dim, ScaledDecimal(-10));
    std::vector<ScaledDecimal> hi(spec.dim, ScaledDecimal(10));
    spec.feasible = FeasibleSet::box(lo, hi);
    for (std::size_t c = 0; c < spec.dim; ++c) spec.x0.push_back(random_decimal(rng, 5));
    p.agents.push_back(std::move(spec));
  }
  std::size_t n = p.total_dim();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial> ms;
    unsigned terms = pick(rng, 1, static_cast<unsigned>(n));
    for (unsigned t = 0; t < terms; ++t) {
      Monomial m;
      m.x_exponents[static_cast<VarId>(1 + rng.below(mpz_class(n)).get_ui())] = 1;
      m.literal = random_nonzero_decimal(rng, 9);
      ms.push_back(std::move(m));
    }
    Monomial constant;
    constant.literal = random_decimal(rng, 9);
    ms.push_back(std::move(constant));
    p.gradients.push_back(Polynomial(std::move(ms)));
  }
  p.validate();
  return p;
}

}  // namespace hegrad_tests

#endif
