#ifndef HEGRAD_CORE_BENCH_HPP
#define HEGRAD_CORE_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/problem.hpp"
#include "core/protocol.hpp"

namespace hegrad {
namespace bench {

struct Row {
  unsigned key_bits = 0;
  double avg_s = 0;  // per iteration per agent, encrypt+eval+decrypt+update
  double max_s = 0;
};

struct Table {
  std::vector<Row> rows;

  std::string text() const;
  std::string csv() const;
};

// Runs the chosen scheme once per key length and reports wall-clock cost per
// iteration per agent. Absolute numbers are hardware-dependent; only the
// table shape is meaningful for checks.
Table run(const Problem& problem, protocol::Scheme scheme,
          const std::vector<unsigned>& key_bits_ladder, unsigned iterations,
          std::uint64_t seed);

}  // namespace bench
}  // namespace hegrad

#endif
