#include "hegrad/hegrad.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "core/bench.hpp"
#include "core/casestudies.hpp"
#include "core/errors.hpp"
#include "core/golden.hpp"
#include "core/ioi.hpp"
#include "core/protocol.hpp"

using nlohmann::json;

struct heg_problem {
  hegrad::Problem value;
};

struct heg_run {
  hegrad::protocol::RunResult value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

heg_status map_code(hegrad::ErrorCode code) {
  using hegrad::ErrorCode;
  switch (code) {
    case ErrorCode::parse_error:
      return HEG_ERR_PARSE;
    case ErrorCode::not_affine:
      return HEG_ERR_NOT_AFFINE;
    case ErrorCode::key_bound_violated:
    case ErrorCode::bound_violated:
    case ErrorCode::plaintext_too_large:
    case ErrorCode::plaintext_out_of_range:
      return HEG_ERR_KEY_BOUND;
    case ErrorCode::precision_exceeded:
      return HEG_ERR_PRECISION;
    case ErrorCode::audit_violation:
      return HEG_ERR_AUDIT;
    case ErrorCode::internal:
      return HEG_ERR_INTERNAL;
    default:
      return HEG_ERR_INVALID_ARGUMENT;
  }
}

template <typename Fn>
heg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const hegrad::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HEG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HEG_ERR_INTERNAL;
  }
}

heg_status require(bool condition, const char* what) {
  if (condition) return HEG_OK;
  g_last_error = what;
  return HEG_ERR_INVALID_ARGUMENT;
}

json paillier_keypair_json(const hegrad::paillier::Keypair& keys) {
  return json{{"scheme", "alg2"},
              {"p", keys.p.get_str()},
              {"q", keys.q.get_str()},
              {"alpha", keys.pub.alpha.get_str()},
              {"beta", keys.pub.beta.get_str()},
              {"nu", keys.nu.get_str()},
              {"pi", keys.pi.get_str()}};
}

hegrad::paillier::Keypair paillier_keypair_from_json(const json& j) {
  mpz_class p(j.at("p").get<std::string>(), 10);
  mpz_class q(j.at("q").get<std::string>(), 10);
  return hegrad::paillier::Keypair::from_primes(p, q);
}

}  // namespace

extern "C" {

const char* heg_version(void) { return "1.0.0"; }

const char* heg_status_name(heg_status status) {
  switch (status) {
    case HEG_OK: return "ok";
    case HEG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case HEG_ERR_PARSE: return "parse_error";
    case HEG_ERR_NOT_AFFINE: return "not_affine";
    case HEG_ERR_KEY_BOUND: return "key_bound";
    case HEG_ERR_PRECISION: return "precision";
    case HEG_ERR_AUDIT: return "audit";
    case HEG_ERR_MISMATCH: return "mismatch";
    case HEG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* heg_last_error(void) { return g_last_error.c_str(); }

void heg_string_free(char* text) { std::free(text); }

heg_status heg_problem_parse(const char* json_text, heg_problem** out) {
  if (heg_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    auto problem = hegrad::Problem::from_json(json_text);
    *out = new heg_problem{std::move(problem)};
    return HEG_OK;
  });
}

heg_status heg_problem_to_json(const heg_problem* problem, char** out_json) {
  if (heg_status s = require(problem && out_json, "null argument")) return s;
  return guarded([&] {
    *out_json = dup_string(problem->value.to_json());
    return HEG_OK;
  });
}

void heg_problem_free(heg_problem* problem) { delete problem; }

heg_status heg_problem_build_demand_response(const char* config_json, heg_problem** out) {
  if (heg_status s = require(config_json && out, "null argument")) return s;
  return guarded([&] {
    auto cfg = hegrad::casestudies::DemandResponseConfig::from_json(config_json);
    *out = new heg_problem{hegrad::casestudies::build_demand_response(cfg)};
    return HEG_OK;
  });
}

heg_status heg_problem_build_opf(const char* config_json, heg_problem** out) {
  if (heg_status s = require(config_json && out, "null argument")) return s;
  return guarded([&] {
    auto cfg = hegrad::casestudies::OpfConfig::from_json(config_json);
    *out = new heg_problem{hegrad::casestudies::build_opf(cfg)};
    return HEG_OK;
  });
}

heg_status heg_keygen_singlemod(uint32_t bits, uint64_t seed, char** out_json) {
  if (heg_status s = require(out_json != nullptr, "null argument")) return s;
  return guarded([&] {
    hegrad::SeededRandom rng(seed);
    auto key = hegrad::singlemod::keygen(bits, rng);
    json j{{"scheme", "alg1"}, {"w", key.w.get_str()}, {"bits", key.bit_length}};
    *out_json = dup_string(j.dump(2));
    return HEG_OK;
  });
}

heg_status heg_keygen_paillier(uint32_t bits, uint64_t seed, char** out_json) {
  if (heg_status s = require(out_json != nullptr, "null argument")) return s;
  return guarded([&] {
    hegrad::SeededRandom rng(seed);
    auto keys = hegrad::paillier::keygen(bits, rng);
    *out_json = dup_string(paillier_keypair_json(keys).dump(2));
    return HEG_OK;
  });
}

heg_status heg_run_execute(const heg_problem* problem, const char* scheme,
                           uint32_t key_bits, const char* key_json, uint32_t iterations,
                           uint64_t seed, heg_run** out) {
  if (heg_status s = require(problem && scheme && out, "null argument")) return s;
  return guarded([&]() -> heg_status {
    std::string which(scheme);
    hegrad::SeededRandom rng(seed);
    hegrad::protocol::RunResult run;
    if (which == "plain") {
      run = hegrad::protocol::run_plain(problem->value, iterations);
    } else if (which == "alg1") {
      hegrad::singlemod::Key key;
      if (key_json) {
        json j = json::parse(key_json);
        key = hegrad::singlemod::Key::from_modulus(
            mpz_class(j.at("w").get<std::string>(), 10));
      } else {
        key = hegrad::singlemod::keygen(key_bits ? key_bits : 128, rng);
      }
      run = hegrad::protocol::run_algorithm1(problem->value, key, iterations, rng);
    } else if (which == "alg2") {
      std::vector<hegrad::paillier::Keypair> keys;
      if (key_json) {
        json j = json::parse(key_json);
        if (!j.is_array()) {
          throw hegrad::Error(hegrad::ErrorCode::parse_error,
                              "alg2 key file must be an array of keypairs");
        }
        for (const auto& e : j) keys.push_back(paillier_keypair_from_json(e));
        if (keys.size() != problem->value.agent_count()) {
          throw hegrad::Error(hegrad::ErrorCode::invalid_argument,
                              "need one keypair per agent");
        }
      } else {
        for (std::size_t i = 0; i < problem->value.agent_count(); ++i) {
          keys.push_back(hegrad::paillier::keygen(key_bits ? key_bits : 128, rng));
        }
      }
      run = hegrad::protocol::run_algorithm2(problem->value, keys, iterations, rng);
    } else {
      throw hegrad::Error(hegrad::ErrorCode::invalid_argument,
                          "scheme must be plain, alg1 or alg2");
    }
    *out = new heg_run{std::move(run)};
    return HEG_OK;
  });
}

void heg_run_free(heg_run* run) { delete run; }

heg_status heg_run_trajectory_csv(const heg_run* run, char** out_csv) {
  if (heg_status s = require(run && out_csv, "null argument")) return s;
  return guarded([&] {
    *out_csv = dup_string(run->value.trajectory_csv());
    return HEG_OK;
  });
}

heg_status heg_run_transcript_jsonl(const heg_run* run, char** out_jsonl) {
  if (heg_status s = require(run && out_jsonl, "null argument")) return s;
  return guarded([&] {
    *out_jsonl = dup_string(run->value.transcript.to_jsonl());
    return HEG_OK;
  });
}

heg_status heg_run_timing_text(const heg_run* run, char** out_text) {
  if (heg_status s = require(run && out_text, "null argument")) return s;
  return guarded([&] {
    std::string out = "iteration,encrypt_s,eval_s,decrypt_s,update_s\n";
    for (std::size_t k = 0; k < run->value.timings.size(); ++k) {
      const auto& t = run->value.timings[k];
      out += std::to_string(k) + "," + std::to_string(t.encrypt_s) + "," +
             std::to_string(t.eval_s) + "," + std::to_string(t.decrypt_s) + "," +
             std::to_string(t.update_s) + "\n";
    }
    *out_text = dup_string(out);
    return HEG_OK;
  });
}

heg_status heg_run_compare(const heg_run* a, const heg_run* b, char** out_csv,
                           int* out_identical) {
  if (heg_status s = require(a && b && out_csv && out_identical, "null argument")) return s;
  return guarded([&] {
    auto dev = hegrad::protocol::compare_runs(a->value, b->value);
    *out_csv = dup_string(dev.csv());
    *out_identical = dev.identical ? 1 : 0;
    return HEG_OK;
  });
}

heg_status heg_run_audit(const heg_run* run, const heg_problem* problem,
                         char** out_report) {
  if (heg_status s = require(run && problem && out_report, "null argument")) return s;
  return guarded([&]() -> heg_status {
    auto report = hegrad::protocol::audit_run(run->value, problem->value);
    *out_report = dup_string(report.text());
    if (!report.ok) {
      g_last_error = report.violations.front();
      return HEG_ERR_AUDIT;
    }
    return HEG_OK;
  });
}

heg_status heg_golden(const char* which, char** out_trace) {
  if (heg_status s = require(which && out_trace, "null argument")) return s;
  return guarded([&]() -> heg_status {
    std::string name(which);
    hegrad::golden::Trace trace;
    if (name == "alg1") {
      trace = hegrad::golden::replay_private_key();
    } else if (name == "alg2") {
      trace = hegrad::golden::replay_public_key();
    } else {
      throw hegrad::Error(hegrad::ErrorCode::invalid_argument,
                          "golden replay is alg1 or alg2");
    }
    *out_trace = dup_string(trace.text());
    if (!trace.ok) {
      g_last_error = "mismatch at " + trace.first_mismatch;
      return HEG_ERR_MISMATCH;
    }
    return HEG_OK;
  });
}

heg_status heg_bench(const heg_problem* problem, const char* scheme,
                     const uint32_t* key_bits, size_t bits_count, uint32_t iterations,
                     uint64_t seed, char** out_table) {
  if (heg_status s = require(problem && scheme && key_bits && out_table, "null argument"))
    return s;
  return guarded([&]() -> heg_status {
    std::string which(scheme);
    hegrad::protocol::Scheme sch;
    if (which == "alg1") {
      sch = hegrad::protocol::Scheme::private_key;
    } else if (which == "alg2") {
      sch = hegrad::protocol::Scheme::public_key;
    } else {
      throw hegrad::Error(hegrad::ErrorCode::invalid_argument,
                          "benchmark scheme must be alg1 or alg2");
    }
    std::vector<unsigned> ladder(key_bits, key_bits + bits_count);
    auto table = hegrad::bench::run(problem->value, sch, ladder, iterations, seed);
    *out_table = dup_string(table.text());
    return HEG_OK;
  });
}

heg_status heg_ioi_analyze(const char* family_json, uint32_t adversary,
                           uint32_t iterations, char** out_report_json) {
  if (heg_status s = require(family_json && out_report_json, "null argument")) return s;
  return guarded([&] {
    auto family = hegrad::ioi::QuadraticFamily::from_json(family_json);
    *out_report_json =
        dup_string(hegrad::ioi::analyze_to_json(family, adversary, iterations));
    return HEG_OK;
  });
}

}  // extern "C"
