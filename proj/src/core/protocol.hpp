#ifndef HEGRAD_CORE_PROTOCOL_HPP
#define HEGRAD_CORE_PROTOCOL_HPP

#include <string>
#include <vector>

#include "core/paillier.hpp"
#include "core/problem.hpp"
#include "core/random.hpp"
#include "core/singlemod.hpp"

namespace hegrad {
namespace protocol {

enum class Scheme { plain, private_key, public_key };

const char* scheme_name(Scheme s);

enum class MessageKind {
  coefficient_ciphertext,
  state_ciphertext,
  gradient_ciphertext,
  public_key,
  // Never produced by the runners; synthetic transcripts use these to
  // exercise the audit's rejection paths.
  secret_key,
  plaintext_state,
  plaintext_coefficient,
};

const char* message_kind_name(MessageKind k);

struct Message {
  int step = 0;  // -1 for the setup phase
  ParticipantId sender = 0;
  ParticipantId receiver = 0;
  MessageKind kind = MessageKind::state_ciphertext;
  unsigned agent = 0;       // whose state/gradient/coefficient this concerns
  unsigned index = 0;       // 1-based coordinate, or coefficient id
  unsigned target_key = 0;  // public-key scheme: agent whose key encrypted it
  std::string payload;      // JSON fragment
};

// The operator eavesdrops every link, so its view is the whole transcript;
// an agent's view is what it sent plus what was addressed to it.
struct Transcript {
  std::vector<Message> messages;

  std::vector<Message> view(ParticipantId who) const;
  std::string to_jsonl() const;
};

struct PhaseTimings {
  double encrypt_s = 0, eval_s = 0, decrypt_s = 0, update_s = 0;

  double total() const { return encrypt_s + eval_s + decrypt_s + update_s; }
};

struct RunResult {
  Scheme scheme = Scheme::plain;
  unsigned iterations = 0;
  unsigned sigma = 0;
  std::size_t agent_count = 0;
  std::vector<std::size_t> dims;  // per agent
  // states[k] is the committed state entering step k: exact projected updates
  // re-quantized to sigma fraction digits so the next round's encoding stays
  // integral. updates[k] keeps the unquantized projected step.
  std::vector<std::vector<ScaledDecimal>> states;
  std::vector<std::vector<ScaledDecimal>> gradients;
  std::vector<std::vector<ScaledDecimal>> updates;
  Transcript transcript;
  std::vector<PhaseTimings> timings;  // per iteration, summed over agents

  std::string trajectory_csv() const;
};

RunResult run_plain(const Problem& problem, unsigned iterations);

// Algorithm with the shared odd modulus: coefficients encrypted once up
// front, states re-encrypted each round, operator evaluates the polynomials
// over ciphertexts, agents decode and update. The decode-correctness bound is
// re-checked against the true gradient every iteration and violations abort
// with the step index.
RunResult run_algorithm1(const Problem& problem, const singlemod::Key& key,
                         unsigned iterations, RandomSource& rng,
                         unsigned blinding_bits = 0);

// Paillier-based variant for affine gradients: each agent encrypts its state
// under every agent's public key, the operator exponentiates with the known
// weights, owners decrypt with their private keys.
RunResult run_algorithm2(const Problem& problem,
                         const std::vector<paillier::Keypair>& keys,
                         unsigned iterations, RandomSource& rng);

struct Deviation {
  std::vector<ScaledDecimal> per_step_sq;  // exact squared l2 distance per step
  ScaledDecimal max_sq;
  bool identical = false;

  std::string csv() const;
};

Deviation compare_runs(const RunResult& a, const RunResult& b);

struct AuditReport {
  bool ok = true;
  std::vector<std::string> violations;

  std::string text() const;
};

// Checks the view discipline on a finished run's transcript: the operator
// only ever receives ciphertexts or public keys, gradient results go only to
// their owners, and (private-key scheme) each coefficient was encrypted
// exactly once by its partition owner.
AuditReport audit_transcript(const Transcript& transcript, const Problem& problem,
                             Scheme scheme);

inline AuditReport audit_run(const RunResult& run, const Problem& problem) {
  return audit_transcript(run.transcript, problem, run.scheme);
}

}  // namespace protocol
}  // namespace hegrad

#endif
