#include "core/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "core/errors.hpp"

namespace hegrad {
namespace bench {

namespace {

std::string fixed4(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

}  // namespace

std::string Table::text() const {
  std::ostringstream out;
  out << "key_bits  avg_s_per_iter_per_agent  max_s_per_iter_per_agent\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << r.key_bits << std::setw(26) << fixed4(r.avg_s)
        << fixed4(r.max_s) << "\n";
  }
  return out.str();
}

std::string Table::csv() const {
  std::ostringstream out;
  out << "key_bits,avg_s_per_iter_per_agent,max_s_per_iter_per_agent\n";
  for (const auto& r : rows) {
    out << r.key_bits << "," << fixed4(r.avg_s) << "," << fixed4(r.max_s) << "\n";
  }
  return out.str();
}

Table run(const Problem& problem, protocol::Scheme scheme,
          const std::vector<unsigned>& key_bits_ladder, unsigned iterations,
          std::uint64_t seed) {
  if (iterations == 0) {
    throw Error(ErrorCode::invalid_argument, "benchmark needs at least one iteration");
  }
  if (scheme == protocol::Scheme::plain) {
    throw Error(ErrorCode::invalid_argument, "benchmark applies to the encrypted schemes");
  }
  Table table;
  for (unsigned bits : key_bits_ladder) {
    SeededRandom rng(seed ^ bits);
    protocol::RunResult run;
    if (scheme == protocol::Scheme::private_key) {
      auto key = singlemod::keygen(bits, rng);
      run = protocol::run_algorithm1(problem, key, iterations, rng);
    } else {
      std::vector<paillier::Keypair> keys;
      keys.reserve(problem.agent_count());
      for (std::size_t i = 0; i < problem.agent_count(); ++i) {
        keys.push_back(paillier::keygen(bits, rng));
      }
      run = protocol::run_algorithm2(problem, keys, iterations, rng);
    }
    Row row;
    row.key_bits = bits;
    double total = 0, worst = 0;
    for (const auto& t : run.timings) {
      double per_agent = t.total() / static_cast<double>(problem.agent_count());
      total += per_agent;
      worst = std::max(worst, per_agent);
    }
    row.avg_s = total / static_cast<double>(iterations);
    row.max_s = worst;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace bench
}  // namespace hegrad
