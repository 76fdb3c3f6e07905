#ifndef HEGRAD_CORE_GOLDEN_HPP
#define HEGRAD_CORE_GOLDEN_HPP

#include <deque>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "core/paillier.hpp"
#include "core/problem.hpp"

namespace hegrad {
namespace golden {

// Step-by-step replays of the two embedded worked examples, asserting every
// intermediate quantity. These fixtures are embedded so the replay needs no
// external files; they anchor the ciphertext formats and decode scales
// against independent hand-checked numbers.
struct Trace {
  bool ok = true;
  std::vector<std::string> lines;
  std::string first_mismatch;

  std::string text() const;
};

Trace replay_private_key();
Trace replay_public_key();

// The same fixtures as full problem instances plus their scripted
// randomness, so the protocol runners can reproduce the walkthroughs
// end to end.
Problem private_key_example_problem();
mpz_class private_key_example_modulus();
std::deque<mpz_class> private_key_example_blindings();

Problem public_key_example_problem();
std::vector<paillier::Keypair> public_key_example_keys();
std::deque<mpz_class> public_key_example_randomizers();

}  // namespace golden
}  // namespace hegrad

#endif
