// Command-line front end; links the public C API only.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hegrad/hegrad.h"

namespace {

namespace fs = std::filesystem;

struct StringDeleter {
  void operator()(char* p) const { heg_string_free(p); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct ProblemDeleter {
  void operator()(heg_problem* p) const { heg_problem_free(p); }
};
using ProblemHandle = std::unique_ptr<heg_problem, ProblemDeleter>;

struct RunDeleter {
  void operator()(heg_run* r) const { heg_run_free(r); }
};
using RunHandle = std::unique_ptr<heg_run, RunDeleter>;

// Exit codes: 0 ok, 2 validation/parse, 3 assumption gate, 4 runtime abort,
// 1 anything else.
int exit_code(heg_status status) {
  switch (status) {
    case HEG_OK:
      return 0;
    case HEG_ERR_PARSE:
    case HEG_ERR_INVALID_ARGUMENT:
    case HEG_ERR_PRECISION:
      return 2;
    case HEG_ERR_NOT_AFFINE:
      return 3;
    case HEG_ERR_KEY_BOUND:
    case HEG_ERR_AUDIT:
    case HEG_ERR_MISMATCH:
      return 4;
    default:
      return 1;
  }
}

[[noreturn]] void fail(heg_status status, const std::string& context) {
  std::cerr << "error (" << heg_status_name(status) << ") in " << context << ": "
            << heg_last_error() << "\n";
  std::exit(exit_code(status));
}

void check(heg_status status, const std::string& context) {
  if (status != HEG_OK) fail(status, context);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(2);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(1);
  }
  out << text;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HEGRAD_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

// step,participant,coordinate,value -> a JSON array of row objects.
std::string csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::ostringstream out;
  out << "[\n";
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string step, participant, coordinate, value;
    std::getline(row, step, ',');
    std::getline(row, participant, ',');
    std::getline(row, coordinate, ',');
    std::getline(row, value, ',');
    if (!first) out << ",\n";
    first = false;
    out << "  {\"step\": " << step << ", \"participant\": \"" << participant
        << "\", \"coordinate\": " << coordinate << ", \"value\": \"" << value << "\"}";
  }
  out << "\n]\n";
  return out.str();
}

ProblemHandle load_problem(const std::string& path) {
  heg_problem* raw = nullptr;
  check(heg_problem_parse(read_file(path).c_str(), &raw), "loading " + path);
  return ProblemHandle(raw);
}

int cmd_run(const std::string& problem_path, const std::string& scheme, unsigned bits,
            const std::string& key_file, unsigned iters, std::uint64_t seed,
            const std::string& out_dir, const std::string& format) {
  auto problem = load_problem(problem_path);
  std::string key_json;
  if (!key_file.empty()) key_json = read_file(key_file);

  heg_run* raw = nullptr;
  check(heg_run_execute(problem.get(), scheme.c_str(), bits,
                        key_file.empty() ? nullptr : key_json.c_str(), iters, seed, &raw),
        "run");
  RunHandle run(raw);

  char* text = nullptr;
  check(heg_run_trajectory_csv(run.get(), &text), "trajectory");
  ApiString trajectory(text);
  check(heg_run_transcript_jsonl(run.get(), &text), "transcript");
  ApiString transcript(text);
  check(heg_run_timing_text(run.get(), &text), "timing");
  ApiString timing(text);

  fs::path dir(out_dir);
  if (format == "json") {
    write_file(dir / "trajectory.json", csv_to_json(trajectory.get()));
  } else {
    write_file(dir / "trajectory.csv", trajectory.get());
  }
  write_file(dir / "transcript.jsonl", transcript.get());
  write_file(dir / "timing.csv", timing.get());

  if (scheme != "plain") {
    heg_run* plain_raw = nullptr;
    check(heg_run_execute(problem.get(), "plain", 0, nullptr, iters, seed, &plain_raw),
          "baseline run");
    RunHandle plain(plain_raw);
    int identical = 0;
    check(heg_run_compare(run.get(), plain.get(), &text, &identical), "compare");
    ApiString deviation(text);
    write_file(dir / "deviation.csv", deviation.get());

    heg_status audit = heg_run_audit(run.get(), problem.get(), &text);
    ApiString audit_report(text);
    write_file(dir / "audit.txt", audit_report.get());
    if (audit != HEG_OK) fail(audit, "transcript audit");

    std::cout << "run complete: " << iters << " iterations, deviation vs plain "
              << (identical ? "exactly zero" : "NONZERO") << ", audit pass\n";
    if (!identical) return 4;
  } else {
    std::cout << "run complete: " << iters << " iterations\n";
  }
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_golden(const std::string& which) {
  char* text = nullptr;
  heg_status status = heg_golden(which.c_str(), &text);
  ApiString trace(text);
  if (trace) std::cout << trace.get();
  if (status != HEG_OK && status != HEG_ERR_MISMATCH) fail(status, "golden");
  return status == HEG_OK ? 0 : 4;
}

int cmd_bench(const std::string& problem_path, const std::string& scheme,
              const std::vector<unsigned>& ladder, unsigned iters, std::uint64_t seed,
              const std::string& out_file) {
  auto problem = load_problem(problem_path);
  std::vector<std::uint32_t> bits(ladder.begin(), ladder.end());
  char* text = nullptr;
  check(heg_bench(problem.get(), scheme.c_str(), bits.data(), bits.size(), iters, seed,
                  &text),
        "bench");
  ApiString table(text);
  std::cout << table.get();
  if (!out_file.empty()) write_file(out_file, table.get());
  return 0;
}

int cmd_ioi(const std::string& family_path, unsigned adversary, unsigned iters,
            const std::string& out_file) {
  char* text = nullptr;
  check(heg_ioi_analyze(read_file(family_path).c_str(), adversary, iters, &text), "ioi");
  ApiString report(text);
  std::cout << report.get() << "\n";
  if (!out_file.empty()) write_file(out_file, report.get());
  return 0;
}

int cmd_build(bool opf, const std::string& config_path, const std::string& topology,
              unsigned size, const std::string& out_file) {
  std::string config;
  if (!config_path.empty()) {
    config = read_file(config_path);
  } else {
    config = "{\"topology\": {\"kind\": \"" + topology +
             "\", \"size\": " + std::to_string(size) + "}}";
  }
  heg_problem* raw = nullptr;
  check(opf ? heg_problem_build_opf(config.c_str(), &raw)
            : heg_problem_build_demand_response(config.c_str(), &raw),
        "build");
  ProblemHandle problem(raw);
  char* text = nullptr;
  check(heg_problem_to_json(problem.get(), &text), "serialize");
  ApiString json(text);
  if (out_file.empty()) {
    std::cout << json.get() << "\n";
  } else {
    write_file(out_file, json.get());
    std::cout << "problem written to " << out_file << "\n";
  }
  return 0;
}

int cmd_keygen(const std::string& scheme, unsigned bits, unsigned agents,
               std::uint64_t seed, const std::string& out_file) {
  std::string payload;
  char* text = nullptr;
  if (scheme == "alg1") {
    check(heg_keygen_singlemod(bits, seed, &text), "keygen");
    payload = ApiString(text).get();
  } else if (scheme == "alg2") {
    // One keypair per agent, as the array the run subcommand consumes.
    payload = "[\n";
    for (unsigned i = 0; i < agents; ++i) {
      check(heg_keygen_paillier(bits, seed + i, &text), "keygen");
      ApiString key(text);
      payload += key.get();
      if (i + 1 < agents) payload += ",";
      payload += "\n";
    }
    payload += "]";
  } else {
    std::cerr << "error: keygen scheme must be alg1 or alg2\n";
    return 2;
  }
  if (out_file.empty()) {
    std::cout << payload << "\n";
  } else {
    write_file(out_file, payload);
    std::cout << "key written to " << out_file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encrypted distributed projected-gradient simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(heg_version()));

  std::string problem_path, key_file, out_dir = "out", format = "csv";
  std::string scheme = "plain";
  unsigned bits = 128, run_iters = 30, bench_iters = 5, ioi_iters = 0;
  std::optional<std::uint64_t> seed_flag;

  auto* run = app.add_subcommand("run", "Execute a protocol run on a problem file");
  run->add_option("--problem", problem_path, "problem JSON file")->required();
  run->add_option("--scheme", scheme, "plain | alg1 | alg2");
  run->add_option("--bits", bits, "key length when generating keys")
      ->check(CLI::Range(16u, 8192u));
  run->add_option("--key-file", key_file, "explicit key JSON (from keygen)");
  run->add_option("--iters", run_iters, "iteration count");
  run->add_option("--seed", seed_flag, "rng seed (fallback: HEGRAD_SEED)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--format", format, "trajectory format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string which;
  auto* golden = app.add_subcommand("golden", "Replay an embedded reference walkthrough");
  golden->add_option("which", which, "alg1 | alg2")->required();

  std::vector<unsigned> ladder = {500, 1000, 2000, 3000, 4000};
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Timing ladder over key lengths");
  bench->add_option("--problem", problem_path, "problem JSON file")->required();
  bench->add_option("--scheme", scheme, "alg1 | alg2")->required();
  bench->add_option("--bits", ladder, "key lengths")->delimiter(',');
  bench->add_option("--iters", bench_iters, "iterations per key length");
  bench->add_option("--seed", seed_flag, "rng seed");
  bench->add_option("--out", bench_out, "also write the table here");

  std::string family_path, report_out;
  unsigned adversary = 1;
  auto* ioi = app.add_subcommand("ioi", "Inference analysis of a quadratic family");
  ioi->add_option("--family", family_path, "family JSON file")->required();
  ioi->add_option("--adversary", adversary, "adversarial agent id");
  ioi->add_option("--iters", ioi_iters, "trajectory length for checks (0 = auto)");
  ioi->add_option("--out", report_out, "also write the report here");

  std::string config_path, topology = "path", build_out;
  unsigned size = 4;
  auto* build_dr = app.add_subcommand("build-dr", "Materialize a demand-response problem");
  build_dr->add_option("--config", config_path, "config JSON file");
  build_dr->add_option("--topology", topology, "path | ring | star");
  build_dr->add_option("--size", size, "bus count");
  build_dr->add_option("--out", build_out, "output problem file");

  auto* build_opf = app.add_subcommand("build-opf", "Materialize a dispatch problem");
  build_opf->add_option("--config", config_path, "config JSON file");
  build_opf->add_option("--topology", topology, "path | ring | star");
  build_opf->add_option("--size", size, "generator count");
  build_opf->add_option("--out", build_out, "output problem file");

  std::string key_out;
  unsigned key_agents = 1;
  auto* keygen = app.add_subcommand("keygen", "Generate key material");
  keygen->add_option("--scheme", scheme, "alg1 | alg2")->required();
  keygen->add_option("--bits", bits, "key length")->check(CLI::Range(16u, 8192u));
  keygen->add_option("--agents", key_agents, "keypair count for alg2");
  keygen->add_option("--seed", seed_flag, "rng seed");
  keygen->add_option("--out", key_out, "output key file");

  CLI11_PARSE(app, argc, argv);
  std::uint64_t seed = resolve_seed(seed_flag);

  if (run->parsed()) {
    return cmd_run(problem_path, scheme, bits, key_file, run_iters, seed, out_dir,
                   format);
  }
  if (golden->parsed()) return cmd_golden(which);
  if (bench->parsed()) {
    return cmd_bench(problem_path, scheme, ladder, bench_iters, seed, bench_out);
  }
  if (ioi->parsed()) return cmd_ioi(family_path, adversary, ioi_iters, report_out);
  if (build_dr->parsed()) return cmd_build(false, config_path, topology, size, build_out);
  if (build_opf->parsed()) return cmd_build(true, config_path, topology, size, build_out);
  if (keygen->parsed()) return cmd_keygen(scheme, bits, key_agents, seed, key_out);
  return 1;
}
