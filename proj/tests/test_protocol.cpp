#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/golden.hpp"
#include "core/protocol.hpp"
#include "support.hpp"

using namespace hegrad;
using hegrad_tests::dec;
using nlohmann::json;

namespace {

// The three-agent linear system used for the inference examples:
// x1 <- x1+x2+x3, x2 <- x2+2x3, x3 <- x1+x3 (unit step, integer states).
Problem linear_three_agent_problem() {
  Problem p;
  p.sigma = 0;
  p.gamma = StepSchedule::constant(ScaledDecimal(1));
  for (long x0 : {1, -2, 3}) {
    p.agents.push_back({1, FeasibleSet::all_reals(1), {ScaledDecimal(x0)}});
  }
  std::vector<Monomial> phi1, phi2, phi3;
  phi1.push_back({{{2, 1}}, {}, ScaledDecimal(-1)});
  phi1.push_back({{{3, 1}}, {}, ScaledDecimal(-1)});
  phi2.push_back({{{3, 1}}, {}, ScaledDecimal(-2)});
  phi3.push_back({{{1, 1}}, {}, ScaledDecimal(-1)});
  p.gradients = {Polynomial(std::move(phi1)), Polynomial(std::move(phi2)),
                 Polynomial(std::move(phi3))};
  p.validate();
  return p;
}

long to_long(const ScaledDecimal& v) {
  REQUIRE(v.scale() == 0);
  return static_cast<long>(v.mantissa().get_si());
}

}  // namespace

TEST_CASE("plain run reproduces the one-step walkthrough update") {
  auto problem = golden::private_key_example_problem();
  auto run = protocol::run_plain(problem, 1);
  CHECK(run.gradients[0][0] == dec("-12.665213"));
  CHECK(run.updates[0][0] == dec("13.425213"));
  CHECK(run.updates[0][1] == dec("-2.35"));  // zero gradient block
  CHECK(run.states[1][0] == dec("13.43"));   // committed at sigma digits
}

TEST_CASE("zero iterations yields only the initial state") {
  auto problem = golden::private_key_example_problem();
  auto run = protocol::run_plain(problem, 0);
  CHECK(run.states.size() == 1);
  CHECK(run.states[0] == problem.initial_state());
  CHECK(run.gradients.empty());
}

TEST_CASE("plain run matches the hand-iterated linear recurrence") {
  auto run = protocol::run_plain(linear_three_agent_problem(), 3);
  long x1 = 1, x2 = -2, x3 = 3;
  for (std::size_t k = 1; k <= 3; ++k) {
    long n1 = x1 + x2 + x3, n2 = x2 + 2 * x3, n3 = x1 + x3;
    x1 = n1;
    x2 = n2;
    x3 = n3;
    CHECK(to_long(run.states[k][0]) == x1);
    CHECK(to_long(run.states[k][1]) == x2);
    CHECK(to_long(run.states[k][2]) == x3);
  }
}

TEST_CASE("private-key runner replays the walkthrough end to end") {
  auto problem = golden::private_key_example_problem();
  auto key = singlemod::Key::from_modulus(golden::private_key_example_modulus());
  ScriptedRandom rng(golden::private_key_example_blindings());
  auto run = protocol::run_algorithm1(problem, key, 1, rng);
  CHECK(rng.exhausted());

  std::vector<std::string> sent;
  for (const auto& m : run.transcript.messages) {
    sent.push_back(json::parse(m.payload).at("v").get<std::string>());
  }
  // Coefficients (partition order), states, then the evaluated gradients.
  CHECK(sent == std::vector<std::string>{
                    "2616200435", "7797800774", "5207000177", "12725400348",
                    "2717800183", "10388600174", "1612852152286627752945361608571",
                    "0"});
  CHECK(run.gradients[0][0] == dec("-12.665213"));
  CHECK(run.updates[0][0] == dec("13.425213"));
}

TEST_CASE("private-key runner with zero iterations only ships coefficients") {
  auto problem = golden::private_key_example_problem();
  auto key = singlemod::Key::from_modulus(golden::private_key_example_modulus());
  std::deque<mpz_class> blinds = {103, 307, 205, 501};
  ScriptedRandom rng(blinds);
  auto run = protocol::run_algorithm1(problem, key, 0, rng);
  CHECK(run.states.size() == 1);
  CHECK(run.transcript.messages.size() == 4);
  for (const auto& m : run.transcript.messages) {
    CHECK(m.kind == protocol::MessageKind::coefficient_ciphertext);
  }
}

TEST_CASE("public-key runner replays the walkthrough end to end") {
  auto problem = golden::public_key_example_problem();
  auto keys = golden::public_key_example_keys();
  ScriptedRandom rng(golden::public_key_example_randomizers());
  auto run = protocol::run_algorithm2(problem, keys, 1, rng);
  CHECK(rng.exhausted());
  CHECK(run.gradients[0][0] == dec("12.8546"));
  CHECK(run.updates[0][0] == dec("-11.4946"));

  std::vector<std::string> seen;
  for (const auto& m : run.transcript.messages) {
    if (m.kind != protocol::MessageKind::state_ciphertext &&
        m.kind != protocol::MessageKind::gradient_ciphertext)
      continue;
    seen.push_back(json::parse(m.payload).at("v").get<std::string>());
  }
  CHECK(seen[0] == "38891374903");   // agent 1 under key 1
  CHECK(seen[2] == "112847502000");  // agent 2 under key 1
  CHECK(seen[4] == "125129165734");  // evaluated gradient for agent 1
}

TEST_CASE("zero gradients leave states constant under the public-key scheme") {
  Problem p;
  p.sigma = 2;
  p.gamma = StepSchedule::constant(ScaledDecimal(1));
  p.agents.push_back({1, FeasibleSet::all_reals(1), {dec("4.5")}});
  p.agents.push_back({1, FeasibleSet::all_reals(1), {dec("-0.25")}});
  p.gradients = {Polynomial(), Polynomial()};
  p.validate();
  SeededRandom rng(88);
  std::vector<paillier::Keypair> keys = {paillier::keygen(64, rng),
                                         paillier::keygen(64, rng)};
  auto run = protocol::run_algorithm2(p, keys, 5, rng);
  for (const auto& state : run.states) {
    CHECK(state[0] == dec("4.5"));
    CHECK(state[1] == dec("-0.25"));
  }
}

TEST_CASE("encrypted trajectories equal the plain baseline exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Problem poly_problem = hegrad_tests::random_polynomial_problem(seed);
    SeededRandom rng(seed * 31);
    auto key = singlemod::keygen(128, rng);
    auto encrypted = protocol::run_algorithm1(poly_problem, key, 10, rng);
    auto plain = protocol::run_plain(poly_problem, 10);
    auto dev = protocol::compare_runs(encrypted, plain);
    CHECK(dev.identical);
    CHECK(dev.max_sq == dec("0"));

    Problem affine_problem = hegrad_tests::random_affine_problem(seed + 1000);
    std::vector<paillier::Keypair> keys;
    for (std::size_t i = 0; i < affine_problem.agent_count(); ++i) {
      keys.push_back(paillier::keygen(128, rng));
    }
    auto encrypted2 = protocol::run_algorithm2(affine_problem, keys, 10, rng);
    auto plain2 = protocol::run_plain(affine_problem, 10);
    CHECK(protocol::compare_runs(encrypted2, plain2).identical);
  }
}

TEST_CASE("state feasibility holds at every step") {
  Problem problem = hegrad_tests::random_polynomial_problem(404);
  SeededRandom rng(5);
  auto key = singlemod::keygen(128, rng);
  auto run = protocol::run_algorithm1(problem, key, 8, rng);
  for (const auto& state : run.states) {
    std::size_t flat = 0;
    for (const auto& agent : problem.agents) {
      std::vector<ScaledDecimal> block(state.begin() + flat,
                                       state.begin() + flat + agent.dim);
      CHECK(agent.feasible.contains(block));
      flat += agent.dim;
    }
  }
}

TEST_CASE("runs are deterministic given the seed") {
  Problem problem = hegrad_tests::random_polynomial_problem(202);
  SeededRandom rng1(9), rng2(9);
  auto key1 = singlemod::keygen(128, rng1);
  auto key2 = singlemod::keygen(128, rng2);
  auto a = protocol::run_algorithm1(problem, key1, 5, rng1);
  auto b = protocol::run_algorithm1(problem, key2, 5, rng2);
  CHECK(a.trajectory_csv() == b.trajectory_csv());
  CHECK(a.transcript.to_jsonl() == b.transcript.to_jsonl());
}

TEST_CASE("non-affine problems are rejected by the public-key runner") {
  auto problem = golden::private_key_example_problem();
  SeededRandom rng(1);
  std::vector<paillier::Keypair> keys = {paillier::keygen(64, rng),
                                         paillier::keygen(64, rng)};
  CHECK_THROWS_AS(protocol::run_algorithm2(problem, keys, 1, rng), Error);
  try {
    protocol::run_algorithm2(problem, keys, 1, rng);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_affine);
  }
}

TEST_CASE("undersized keys abort with the violating step") {
  // Expanding dynamics: x <- 4x escapes any fixed modulus, and the gradient
  // bound trips before the state itself outgrows the plaintext range.
  Problem p;
  p.sigma = 0;
  p.gamma = StepSchedule::constant(ScaledDecimal(1));
  p.agents.push_back({1, FeasibleSet::all_reals(1), {ScaledDecimal(2)}});
  std::vector<Monomial> phi;
  phi.push_back({{{1, 1}}, {}, ScaledDecimal(-3)});
  p.gradients = {Polynomial(std::move(phi))};
  p.validate();
  auto key = singlemod::Key::from_modulus((mpz_class(1) << 17) | 1);
  SeededRandom rng(6);
  CHECK_THROWS_AS(protocol::run_algorithm1(p, key, 40, rng), Error);
  try {
    SeededRandom rng2(6);
    protocol::run_algorithm1(p, key, 40, rng2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::key_bound_violated);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("the comparator distinguishes perturbed runs") {
  auto problem = golden::private_key_example_problem();
  auto run = protocol::run_plain(problem, 3);
  auto self = protocol::compare_runs(run, run);
  CHECK(self.identical);

  Problem shifted = problem;
  shifted.agents[0].x0[0] = dec("0.77");
  auto other = protocol::run_plain(shifted, 3);
  auto dev = protocol::compare_runs(run, other);
  CHECK(!dev.identical);
  CHECK(!dev.per_step_sq[0].is_zero());

  auto longer = protocol::run_plain(problem, 4);
  CHECK_THROWS_AS(protocol::compare_runs(run, longer), Error);
}

TEST_CASE("transcripts have the algorithm's message shape") {
  Problem problem = hegrad_tests::random_polynomial_problem(77);
  std::size_t n = problem.total_dim();
  std::size_t agents = problem.agent_count();
  std::size_t owned_coeffs = 0;
  for (auto owner : problem.partition.owner) {
    if (owner != kSystemOperator) ++owned_coeffs;
  }
  SeededRandom rng(7);
  auto key = singlemod::keygen(128, rng);
  unsigned iters = 3;
  auto run = protocol::run_algorithm1(problem, key, iters, rng);
  std::size_t coeff_msgs = 0, state_msgs = 0, grad_msgs = 0;
  for (const auto& m : run.transcript.messages) {
    switch (m.kind) {
      case protocol::MessageKind::coefficient_ciphertext: ++coeff_msgs; break;
      case protocol::MessageKind::state_ciphertext: ++state_msgs; break;
      case protocol::MessageKind::gradient_ciphertext: ++grad_msgs; break;
      default: break;
    }
  }
  CHECK(coeff_msgs == owned_coeffs);
  CHECK(state_msgs == n * iters);
  CHECK(grad_msgs == n * iters);

  Problem affine = hegrad_tests::random_affine_problem(78);
  std::vector<paillier::Keypair> keys;
  for (std::size_t i = 0; i < affine.agent_count(); ++i) {
    keys.push_back(paillier::keygen(96, rng));
  }
  auto run2 = protocol::run_algorithm2(affine, keys, iters, rng);
  std::size_t state2 = 0;
  for (const auto& m : run2.transcript.messages) {
    if (m.kind == protocol::MessageKind::state_ciphertext) ++state2;
  }
  CHECK(state2 == affine.total_dim() * affine.agent_count() * iters);
  auto view1 = run2.transcript.view(1);
  for (const auto& m : view1) {
    bool involves_agent1 = m.sender == 1 || m.receiver == 1;
    CHECK(involves_agent1);
  }
}

TEST_CASE("audit passes real runs and flags injected faults") {
  Problem problem = hegrad_tests::random_polynomial_problem(55);
  SeededRandom rng(3);
  auto key = singlemod::keygen(128, rng);
  auto run = protocol::run_algorithm1(problem, key, 2, rng);
  CHECK(protocol::audit_run(run, problem).ok);

  SUBCASE("duplicated coefficient ciphertext") {
    auto tampered = run.transcript;
    for (const auto& m : run.transcript.messages) {
      if (m.kind == protocol::MessageKind::coefficient_ciphertext) {
        tampered.messages.push_back(m);
        break;
      }
    }
    auto report =
        protocol::audit_transcript(tampered, problem, protocol::Scheme::private_key);
    CHECK(!report.ok);
    bool mentions_coefficient = false;
    for (const auto& v : report.violations) {
      if (v.find("coefficient") != std::string::npos) mentions_coefficient = true;
    }
    CHECK(mentions_coefficient);
  }

  SUBCASE("gradient delivered to the wrong agent") {
    auto tampered = run.transcript;
    for (auto& m : tampered.messages) {
      if (m.kind == protocol::MessageKind::gradient_ciphertext && m.agent == 1) {
        m.receiver = 2;
        break;
      }
    }
    if (problem.agent_count() >= 2) {
      auto report =
          protocol::audit_transcript(tampered, problem, protocol::Scheme::private_key);
      CHECK(!report.ok);
    }
  }

  SUBCASE("operator receiving key material") {
    auto tampered = run.transcript;
    protocol::Message leak;
    leak.step = 0;
    leak.sender = 1;
    leak.receiver = kSystemOperator;
    leak.kind = protocol::MessageKind::secret_key;
    leak.payload = "{}";
    tampered.messages.push_back(leak);
    auto report =
        protocol::audit_transcript(tampered, problem, protocol::Scheme::private_key);
    CHECK(!report.ok);
  }

  SUBCASE("agent-to-agent messages break the star topology") {
    auto tampered = run.transcript;
    protocol::Message direct;
    direct.step = 0;
    direct.sender = 1;
    direct.receiver = 1;
    direct.kind = protocol::MessageKind::state_ciphertext;
    direct.payload = "{}";
    tampered.messages.push_back(direct);
    auto report =
        protocol::audit_transcript(tampered, problem, protocol::Scheme::private_key);
    CHECK(!report.ok);
  }
}
