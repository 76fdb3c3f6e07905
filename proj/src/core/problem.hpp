#ifndef HEGRAD_CORE_PROBLEM_HPP
#define HEGRAD_CORE_PROBLEM_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/decimal.hpp"
#include "core/feasible.hpp"
#include "core/polynomial.hpp"

namespace hegrad {

// Participant 0 is the system operator; agents are 1..N.
using ParticipantId = unsigned;
inline constexpr ParticipantId kSystemOperator = 0;

std::string participant_name(ParticipantId id);

// Disjoint reassignment of shared coefficients to unique holders: the system
// operator keeps everything it holds, every other coefficient goes to its
// lowest-indexed holder. Guarantees each coefficient is encrypted exactly once.
struct CoefficientPartition {
  std::vector<ParticipantId> owner;  // index = coefficient id - 1

  ParticipantId owner_of(VarId coeff) const { return owner.at(coeff - 1); }
};

CoefficientPartition build_partition(const std::vector<std::set<ParticipantId>>& holders);

struct AgentSpec {
  std::size_t dim = 0;
  FeasibleSet feasible = FeasibleSet::all_reals(0);
  std::vector<ScaledDecimal> x0;
};

// Step-size schedule: a constant, or an explicit per-step table that must
// cover the requested horizon.
class StepSchedule {
 public:
  static StepSchedule constant(ScaledDecimal gamma);
  static StepSchedule table(std::vector<ScaledDecimal> gammas);

  const ScaledDecimal& at(std::size_t k) const;
  bool covers(std::size_t steps) const { return constant_ || values_.size() >= steps; }
  bool is_constant() const { return constant_; }
  const std::vector<ScaledDecimal>& values() const { return values_; }

 private:
  bool constant_ = true;
  std::vector<ScaledDecimal> values_;
};

// x_i(k+1) = P_X[x_i(k) - gamma * phi_i]: one exact projected step.
std::vector<ScaledDecimal> gradient_update(const std::vector<ScaledDecimal>& x,
                                           const ScaledDecimal& gamma,
                                           const std::vector<ScaledDecimal>& phi,
                                           const FeasibleSet& set);

class Problem {
 public:
  unsigned sigma = 0;
  std::vector<AgentSpec> agents;
  // One gradient polynomial per flat state coordinate, agent-major. State
  // variable ids and coefficient ids in the polynomials are 1-based flat ids.
  std::vector<Polynomial> gradients;
  std::vector<ScaledDecimal> coefficients;
  std::vector<std::set<ParticipantId>> holders;  // who initially holds each coefficient
  CoefficientPartition partition;
  StepSchedule gamma = StepSchedule::constant(ScaledDecimal(1));
  // Free-form annotations (e.g. named-parameter ownership from the builders).
  std::vector<std::pair<std::string, std::string>> annotations;

  std::size_t total_dim() const;
  std::size_t agent_count() const { return agents.size(); }
  // (agent index 0-based, coordinate index 0-based) for a flat coordinate.
  std::pair<std::size_t, std::size_t> locate(std::size_t flat) const;
  std::size_t flat_base(std::size_t agent_index) const;

  std::vector<ScaledDecimal> initial_state() const;
  // Exact plain evaluation of every gradient coordinate at state x.
  std::vector<ScaledDecimal> eval_gradients(const std::vector<ScaledDecimal>& x) const;

  // True iff every gradient passes to_affine (the public-key scheme's gate).
  bool all_affine() const;

  // Interval bound max |phi_coord| over the feasible region, when every set
  // is a box; nullopt otherwise. Used for the a-priori key-size check.
  std::optional<std::vector<ScaledDecimal>> worst_case_gradient_bounds() const;

  // Structural validation: dimensions, variable ranges, digit budgets,
  // partition consistency. Throws on violation.
  void validate() const;

  std::string to_json() const;
  static Problem from_json(const std::string& text);
};

}  // namespace hegrad

#endif
