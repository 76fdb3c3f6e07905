#ifndef HEGRAD_CORE_CASESTUDIES_HPP
#define HEGRAD_CORE_CASESTUDIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "core/problem.hpp"

namespace hegrad {
namespace casestudies {

// Deterministic synthetic network shapes. the reference case studies use
// standard bus systems whose line data ships with external tooling; these
// fixtures keep the same structural classes at configurable size.
struct Topology {
  enum class Kind { path, ring, star };

  std::size_t size = 0;
  std::vector<std::pair<unsigned, unsigned>> lines;  // 1-based node pairs

  static Topology make(Kind kind, std::size_t size);
  static Topology make(const std::string& kind, std::size_t size);
  std::vector<std::vector<unsigned>> neighbor_lists() const;  // per node, sorted
};

// Load-curtailment game between customers and a utility: each customer's
// primal state is its reduced load, and the coupling duals (supply balance
// plus two line-flow directions) are split round-robin across customers.
// The price term makes the reduced-load gradients cubic in the joint
// (state, coefficient) variables, so only the private-key scheme applies.
struct DemandResponseConfig {
  Topology topology;
  std::vector<unsigned> supply_buses = {1};
  unsigned sigma = 4;
  ScaledDecimal gamma{ScaledDecimal::parse("0.01")};
  ScaledDecimal price_coefficient{ScaledDecimal::parse("0.05")};  // lambda
  // Per-customer (load buses ascending):
  std::vector<ScaledDecimal> disutility;    // c_i
  std::vector<ScaledDecimal> benefit_quad;  // a_i > 0
  std::vector<ScaledDecimal> benefit_lin;   // b_i
  std::vector<ScaledDecimal> load;          // L_i
  std::vector<ScaledDecimal> initial_curtailment;  // R_i(0)
  // Per supply bus / per line:
  std::vector<ScaledDecimal> supply;         // S
  std::vector<ScaledDecimal> line_capacity;  // f_max

  // Fills the parameter vectors with deterministic defaults.
  static DemandResponseConfig standard(Topology topology,
                                       std::vector<unsigned> supply_buses = {1});
  static DemandResponseConfig from_json(const std::string& text);

  std::size_t customer_count() const;
};

Problem build_demand_response(const DemandResponseConfig& cfg);

// Generator dispatch with phase angles: every gradient is affine in the
// stacked state with weights the operator knows, so the public-key scheme
// applies. Scalar parameters default to the reference benchmark values.
struct OpfConfig {
  Topology topology;
  unsigned sigma = 4;
  ScaledDecimal gamma{ScaledDecimal::parse("0.01")};
  ScaledDecimal cost_quad{ScaledDecimal::parse("0.1")};  // a
  ScaledDecimal cost_lin{ScaledDecimal(10)};             // b
  ScaledDecimal power_max{ScaledDecimal(100)};
  ScaledDecimal power_min{ScaledDecimal(10)};
  ScaledDecimal load{ScaledDecimal(10)};                 // L
  ScaledDecimal line_capacity{ScaledDecimal(80)};
  ScaledDecimal damping{ScaledDecimal(1)};               // D
  ScaledDecimal stiffness{ScaledDecimal::parse("1.5")};  // t
  ScaledDecimal frequency{ScaledDecimal(60)};            // steady-state angular frequency
  ScaledDecimal initial_power{ScaledDecimal(50)};

  static OpfConfig from_json(const std::string& text);
};

Problem build_opf(const OpfConfig& cfg);

}  // namespace casestudies
}  // namespace hegrad

#endif
