#include "core/protocol.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/fixedpoint.hpp"

namespace hegrad {
namespace protocol {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::plain: return "plain";
    case Scheme::private_key: return "alg1";
    case Scheme::public_key: return "alg2";
  }
  return "?";
}

const char* message_kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::coefficient_ciphertext: return "coefficient_ciphertext";
    case MessageKind::state_ciphertext: return "state_ciphertext";
    case MessageKind::gradient_ciphertext: return "gradient_ciphertext";
    case MessageKind::public_key: return "public_key";
    case MessageKind::secret_key: return "secret_key";
    case MessageKind::plaintext_state: return "plaintext_state";
    case MessageKind::plaintext_coefficient: return "plaintext_coefficient";
  }
  return "?";
}

std::vector<Message> Transcript::view(ParticipantId who) const {
  std::vector<Message> out;
  for (const auto& m : messages) {
    if (who == kSystemOperator || m.sender == who || m.receiver == who) out.push_back(m);
  }
  return out;
}

std::string Transcript::to_jsonl() const {
  std::ostringstream out;
  for (const auto& m : messages) {
    json j;
    j["k"] = m.step;
    j["from"] = participant_name(m.sender);
    j["to"] = participant_name(m.receiver);
    j["kind"] = message_kind_name(m.kind);
    j["agent"] = m.agent;
    j["index"] = m.index;
    if (m.target_key != 0) j["target_key"] = m.target_key;
    if (!m.payload.empty()) j["payload"] = json::parse(m.payload);
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string RunResult::trajectory_csv() const {
  std::ostringstream out;
  out << "step,participant,coordinate,value\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) {
      for (std::size_t c = 0; c < dims[a]; ++c, ++flat) {
        out << k << "," << participant_name(static_cast<ParticipantId>(a + 1)) << ","
            << (c + 1) << "," << states[k][flat].str() << "\n";
      }
    }
  }
  return out.str();
}

namespace {

struct StepOutcome {
  std::vector<ScaledDecimal> gradients;
  PhaseTimings timings;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string singlemod_payload(const singlemod::Ciphertext& ct) {
  json j;
  j["v"] = ct.value.get_str();
  j["d"] = ct.degree;
  return j.dump();
}

std::string paillier_payload(const paillier::Ciphertext& ct) {
  json j;
  j["v"] = ct.value.get_str();
  j["key"] = ct.alpha.get_str();
  return j.dump();
}

// Shared driver: computes per-step gradients through the supplied channel,
// applies the projected update exactly, and commits the sigma-quantized
// state for the next round. Both runners and the plain baseline share it, so
// trajectory equality is a statement about the gradient path only.
RunResult drive(const Problem& problem, unsigned iterations, Scheme scheme,
                const std::function<StepOutcome(unsigned, const std::vector<ScaledDecimal>&)>& step) {
  problem.validate();
  if (!problem.gamma.covers(iterations)) {
    throw Error(ErrorCode::invalid_argument, "step-size table shorter than the horizon");
  }
  RunResult run;
  run.scheme = scheme;
  run.iterations = iterations;
  run.sigma = problem.sigma;
  run.agent_count = problem.agent_count();
  for (const auto& a : problem.agents) run.dims.push_back(a.dim);
  run.states.push_back(problem.initial_state());
  for (unsigned k = 0; k < iterations; ++k) {
    const auto& x = run.states.back();
    StepOutcome outcome = step(k, x);
    auto update_started = Clock::now();
    const ScaledDecimal& gamma = problem.gamma.at(k);
    std::vector<ScaledDecimal> update(x.size());
    std::vector<ScaledDecimal> committed(x.size());
    std::size_t flat = 0;
    for (const auto& agent : problem.agents) {
      for (std::size_t c = 0; c < agent.dim; ++c, ++flat) {
        ScaledDecimal z = x[flat] - gamma * outcome.gradients[flat];
        update[flat] = agent.feasible.project_coordinate(c, z);
        committed[flat] = quantize(update[flat], problem.sigma);
      }
    }
    outcome.timings.update_s += seconds_since(update_started);
    run.gradients.push_back(std::move(outcome.gradients));
    run.updates.push_back(std::move(update));
    run.states.push_back(std::move(committed));
    run.timings.push_back(outcome.timings);
  }
  return run;
}

void check_private_key_bound(const Problem& problem, const singlemod::Key& key,
                             const std::vector<ScaledDecimal>& phi, unsigned step) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    mpq_class lhs = mpq_class(pow10(problem.gradients[i].degree() * problem.sigma)) *
                    phi[i].abs().to_rational();
    if (!(mpq_class(key.w) >= 1 + 2 * lhs)) {
      throw Error(ErrorCode::key_bound_violated,
                  "modulus too small for gradient coordinate " + std::to_string(i + 1) +
                      " at step " + std::to_string(step));
    }
  }
}

}  // namespace

RunResult run_plain(const Problem& problem, unsigned iterations) {
  return drive(problem, iterations, Scheme::plain,
               [&](unsigned, const std::vector<ScaledDecimal>& x) {
                 StepOutcome out;
                 auto started = Clock::now();
                 out.gradients = problem.eval_gradients(x);
                 out.timings.eval_s = seconds_since(started);
                 return out;
               });
}

RunResult run_algorithm1(const Problem& problem, const singlemod::Key& key,
                         unsigned iterations, RandomSource& rng,
                         unsigned blinding_bits) {
  problem.validate();
  Transcript transcript;

  // A-priori check when the feasible region admits a worst-case bound.
  if (auto bounds = problem.worst_case_gradient_bounds()) {
    std::vector<unsigned> degrees;
    degrees.reserve(problem.gradients.size());
    for (const auto& g : problem.gradients) degrees.push_back(g.degree());
    if (!singlemod::meets_key_bound(key, *bounds, degrees, problem.sigma)) {
      throw Error(ErrorCode::key_bound_violated,
                  "modulus smaller than the worst-case gradient bound");
    }
  }

  // Coefficient encryption happens exactly once, by partition owner.
  std::map<VarId, singlemod::Ciphertext> coeff_cts;
  for (ParticipantId agent = 1; agent <= problem.agent_count(); ++agent) {
    for (std::size_t c = 0; c < problem.coefficients.size(); ++c) {
      if (problem.partition.owner[c] != agent) continue;
      mpz_class scaled = fixedpoint::encode(problem.coefficients[c], problem.sigma);
      auto ct = singlemod::encrypt(key, scaled, rng, blinding_bits);
      coeff_cts.emplace(static_cast<VarId>(c + 1), ct);
      transcript.messages.push_back({-1, agent, kSystemOperator,
                                     MessageKind::coefficient_ciphertext, agent,
                                     static_cast<unsigned>(c + 1), 0,
                                     singlemod_payload(ct)});
    }
  }
  for (std::size_t c = 0; c < problem.coefficients.size(); ++c) {
    if (problem.partition.owner[c] != kSystemOperator) continue;
    // Operator-held coefficients enter unblinded and are never transmitted.
    coeff_cts.emplace(static_cast<VarId>(c + 1),
                      singlemod::plain_entry(
                          fixedpoint::encode(problem.coefficients[c], problem.sigma)));
  }

  RunResult run = drive(
      problem, iterations, Scheme::private_key,
      [&](unsigned k, const std::vector<ScaledDecimal>& x) {
        StepOutcome out;
        auto plain_phi = problem.eval_gradients(x);
        check_private_key_bound(problem, key, plain_phi, k);

        auto enc_started = Clock::now();
        std::map<VarId, singlemod::Ciphertext> state_cts;
        std::size_t flat = 0;
        for (ParticipantId agent = 1; agent <= problem.agent_count(); ++agent) {
          for (std::size_t c = 0; c < problem.agents[agent - 1].dim; ++c, ++flat) {
            mpz_class scaled = fixedpoint::encode(x[flat], problem.sigma);
            auto ct = singlemod::encrypt(key, scaled, rng, blinding_bits);
            state_cts.emplace(static_cast<VarId>(flat + 1), ct);
            transcript.messages.push_back({static_cast<int>(k), agent, kSystemOperator,
                                           MessageKind::state_ciphertext, agent,
                                           static_cast<unsigned>(c + 1), 0,
                                           singlemod_payload(ct)});
          }
        }
        out.timings.encrypt_s = seconds_since(enc_started);

        auto eval_started = Clock::now();
        std::vector<singlemod::Ciphertext> evaluated;
        evaluated.reserve(problem.gradients.size());
        for (std::size_t i = 0; i < problem.gradients.size(); ++i) {
          auto [agent_idx, coord] = problem.locate(i);
          auto ct = singlemod::eval_polynomial(problem.gradients[i], state_cts,
                                               coeff_cts, problem.sigma);
          transcript.messages.push_back({static_cast<int>(k), kSystemOperator,
                                         static_cast<ParticipantId>(agent_idx + 1),
                                         MessageKind::gradient_ciphertext,
                                         static_cast<unsigned>(agent_idx + 1),
                                         static_cast<unsigned>(coord + 1), 0,
                                         singlemod_payload(ct)});
          evaluated.push_back(std::move(ct));
        }
        out.timings.eval_s = seconds_since(eval_started);

        auto dec_started = Clock::now();
        out.gradients.reserve(evaluated.size());
        for (const auto& ct : evaluated)
          out.gradients.push_back(singlemod::decrypt(key, ct, problem.sigma));
        out.timings.decrypt_s = seconds_since(dec_started);
        return out;
      });
  run.transcript = std::move(transcript);
  return run;
}

RunResult run_algorithm2(const Problem& problem,
                         const std::vector<paillier::Keypair>& keys,
                         unsigned iterations, RandomSource& rng) {
  problem.validate();
  if (keys.size() != problem.agent_count()) {
    throw Error(ErrorCode::invalid_argument, "need one keypair per agent");
  }
  std::vector<AffineForm> affine;
  affine.reserve(problem.gradients.size());
  for (const auto& g : problem.gradients) {
    auto form = g.to_affine();
    if (!form) {
      throw Error(ErrorCode::not_affine,
                  "gradient is not affine in the state with public weights");
    }
    affine.push_back(std::move(*form));
  }
  if (auto bounds = problem.worst_case_gradient_bounds()) {
    for (std::size_t i = 0; i < bounds->size(); ++i) {
      auto [agent_idx, coord] = problem.locate(i);
      (void)coord;
      if (!paillier::meets_key_bound(keys[agent_idx].pub.alpha, (*bounds)[i],
                                     problem.sigma)) {
        throw Error(ErrorCode::key_bound_violated,
                    "public modulus of agent " + std::to_string(agent_idx + 1) +
                        " smaller than the worst-case gradient bound");
      }
    }
  }

  Transcript transcript;
  for (ParticipantId agent = 1; agent <= problem.agent_count(); ++agent) {
    json pk;
    pk["alpha"] = keys[agent - 1].pub.alpha.get_str();
    pk["beta"] = keys[agent - 1].pub.beta.get_str();
    transcript.messages.push_back(
        {-1, agent, kSystemOperator, MessageKind::public_key, agent, 0, 0, pk.dump()});
    for (ParticipantId other = 1; other <= problem.agent_count(); ++other) {
      if (other == agent) continue;
      transcript.messages.push_back(
          {-1, kSystemOperator, other, MessageKind::public_key, agent, 0, 0, pk.dump()});
    }
  }

  RunResult run = drive(
      problem, iterations, Scheme::public_key,
      [&](unsigned k, const std::vector<ScaledDecimal>& x) {
        StepOutcome out;
        auto plain_phi = problem.eval_gradients(x);
        for (std::size_t i = 0; i < plain_phi.size(); ++i) {
          auto [agent_idx, coord] = problem.locate(i);
          (void)coord;
          mpq_class lhs = mpq_class(pow10(2 * problem.sigma)) * plain_phi[i].abs().to_rational();
          if (!(mpq_class(keys[agent_idx].pub.alpha) >= 1 + 2 * lhs)) {
            throw Error(ErrorCode::key_bound_violated,
                        "public modulus of agent " + std::to_string(agent_idx + 1) +
                            " too small at step " + std::to_string(k));
          }
        }

        auto enc_started = Clock::now();
        // cts[j] holds every state coordinate encrypted under agent j's key.
        std::vector<std::map<VarId, paillier::Ciphertext>> cts(problem.agent_count());
        std::size_t flat = 0;
        for (ParticipantId owner = 1; owner <= problem.agent_count(); ++owner) {
          for (std::size_t c = 0; c < problem.agents[owner - 1].dim; ++c, ++flat) {
            for (ParticipantId target = 1; target <= problem.agent_count(); ++target) {
              const auto& pub = keys[target - 1].pub;
              mpz_class scaled = fixedpoint::encode(x[flat], problem.sigma);
              mpz_class pt;
              mpz_mod(pt.get_mpz_t(), scaled.get_mpz_t(), pub.alpha.get_mpz_t());
              auto ct = paillier::encrypt_random(pub, pt, rng);
              transcript.messages.push_back({static_cast<int>(k), owner, kSystemOperator,
                                             MessageKind::state_ciphertext, owner,
                                             static_cast<unsigned>(c + 1), target,
                                             paillier_payload(ct)});
              cts[target - 1].emplace(static_cast<VarId>(flat + 1), std::move(ct));
            }
          }
        }
        out.timings.encrypt_s = seconds_since(enc_started);

        auto eval_started = Clock::now();
        std::vector<paillier::Ciphertext> evaluated;
        evaluated.reserve(problem.gradients.size());
        for (std::size_t i = 0; i < problem.gradients.size(); ++i) {
          auto [agent_idx, coord] = problem.locate(i);
          auto ct = paillier::eval_affine(keys[agent_idx].pub, cts[agent_idx],
                                          affine[i].weights, affine[i].constant,
                                          problem.sigma);
          transcript.messages.push_back({static_cast<int>(k), kSystemOperator,
                                         static_cast<ParticipantId>(agent_idx + 1),
                                         MessageKind::gradient_ciphertext,
                                         static_cast<unsigned>(agent_idx + 1),
                                         static_cast<unsigned>(coord + 1), 0,
                                         paillier_payload(ct)});
          evaluated.push_back(std::move(ct));
        }
        out.timings.eval_s = seconds_since(eval_started);

        auto dec_started = Clock::now();
        out.gradients.reserve(evaluated.size());
        for (std::size_t i = 0; i < evaluated.size(); ++i) {
          auto [agent_idx, coord] = problem.locate(i);
          (void)coord;
          mpz_class pt = paillier::decrypt(keys[agent_idx], evaluated[i]);
          out.gradients.push_back(fixedpoint::decode_residue(
              pt, 2 * problem.sigma, keys[agent_idx].pub.alpha));
        }
        out.timings.decrypt_s = seconds_since(dec_started);
        return out;
      });
  run.transcript = std::move(transcript);
  return run;
}

Deviation compare_runs(const RunResult& a, const RunResult& b) {
  if (a.states.size() != b.states.size() || a.dims != b.dims || a.sigma != b.sigma) {
    throw Error(ErrorCode::shape_mismatch, "runs cover different problems or horizons");
  }
  Deviation dev;
  dev.identical = true;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    if (a.states[k].size() != b.states[k].size()) {
      throw Error(ErrorCode::shape_mismatch, "state vectors differ in length");
    }
    ScaledDecimal sq;
    for (std::size_t i = 0; i < a.states[k].size(); ++i) {
      ScaledDecimal d = a.states[k][i] - b.states[k][i];
      sq = sq + d * d;
    }
    if (!sq.is_zero()) dev.identical = false;
    if (sq > dev.max_sq) dev.max_sq = sq;
    dev.per_step_sq.push_back(std::move(sq));
  }
  return dev;
}

std::string Deviation::csv() const {
  std::ostringstream out;
  out << "step,l2_deviation_squared\n";
  for (std::size_t k = 0; k < per_step_sq.size(); ++k) {
    out << k << "," << per_step_sq[k].str() << "\n";
  }
  return out.str();
}

std::string AuditReport::text() const {
  if (ok) return "audit: pass\n";
  std::ostringstream out;
  out << "audit: FAIL\n";
  for (const auto& v : violations) out << "  - " << v << "\n";
  return out.str();
}

AuditReport audit_transcript(const Transcript& transcript, const Problem& problem,
                             Scheme scheme) {
  AuditReport report;
  auto flag = [&](const std::string& what) {
    report.ok = false;
    report.violations.push_back(what);
  };

  std::map<unsigned, unsigned> coeff_sends;
  for (const auto& m : transcript.messages) {
    bool to_so = m.receiver == kSystemOperator;
    bool from_so = m.sender == kSystemOperator;
    if (to_so == from_so) {
      flag("message bypasses the star topology (" +
           participant_name(m.sender) + " -> " + participant_name(m.receiver) + ")");
      continue;
    }
    if (to_so) {
      switch (m.kind) {
        case MessageKind::coefficient_ciphertext:
          coeff_sends[m.index] += 1;
          if (m.index == 0 || m.index > problem.coefficients.size()) {
            flag("coefficient ciphertext with unknown id " + std::to_string(m.index));
          } else if (problem.partition.owner[m.index - 1] != m.sender) {
            flag("coefficient " + std::to_string(m.index) +
                 " encrypted by " + participant_name(m.sender) +
                 " instead of its partition owner");
          }
          break;
        case MessageKind::state_ciphertext:
        case MessageKind::public_key:
          break;
        default:
          flag("operator received a " + std::string(message_kind_name(m.kind)) +
               " message");
      }
    } else {
      switch (m.kind) {
        case MessageKind::gradient_ciphertext:
          if (m.receiver != m.agent) {
            flag("gradient for agent " + std::to_string(m.agent) + " delivered to " +
                 participant_name(m.receiver));
          }
          break;
        case MessageKind::public_key:
          break;
        default:
          flag(participant_name(m.receiver) + " received a " +
               std::string(message_kind_name(m.kind)) + " message");
      }
    }
  }

  if (scheme == Scheme::private_key) {
    for (std::size_t c = 0; c < problem.coefficients.size(); ++c) {
      unsigned sent = coeff_sends.count(c + 1) ? coeff_sends[c + 1] : 0;
      unsigned expected = problem.partition.owner[c] == kSystemOperator ? 0 : 1;
      if (sent != expected) {
        flag("coefficient " + std::to_string(c + 1) + " encrypted " +
             std::to_string(sent) + " times (expected " + std::to_string(expected) + ")");
      }
    }
  }
  return report;
}

}  // namespace protocol
}  // namespace hegrad
