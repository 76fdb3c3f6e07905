#ifndef HEGRAD_CORE_IOI_HPP
#define HEGRAD_CORE_IOI_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/ratmat.hpp"

namespace hegrad {
namespace ioi {

// Scalar feasible set for one coordinate; the analysis domain mirrors the
// simulator's box/orthant/all-reals menu but works over exact rationals.
struct ScalarSet {
  enum class Kind { all_reals, non_negative, box } kind = Kind::all_reals;
  Rat lo, hi;

  Rat project(const Rat& value) const;
};

// One observed function coordinate: phi(x) = x^T H x + A x + B, with B known
// only to a subset of agents.
struct Component {
  unsigned agent = 0;  // 1-based owner
  unsigned coord = 0;  // 1-based within the owner block
  RatMatrix H;         // n x n
  RatVector A;         // length n
  Rat B;
  std::set<unsigned> b_known_to;
};

struct QuadraticFamily {
  std::vector<unsigned> dims;  // per agent
  std::vector<Component> components;  // one per global coordinate, (agent, coord) ascending
  Rat gamma = 1;
  std::vector<ScalarSet> feasible;  // per global coordinate
  RatVector x0;                     // flat initial state

  std::size_t agent_count() const { return dims.size(); }
  std::size_t total_dim() const;
  std::size_t agent_base(unsigned agent) const;  // flat offset of 1-based agent
  bool knows_b(unsigned agent, std::size_t component) const;
  bool is_affine() const;

  void validate() const;
  std::string to_json() const;
  static QuadraticFamily from_json(const std::string& text);
};

// Exact projected-gradient trajectory of the family itself (x(0)..x(K)).
std::vector<RatVector> simulate(const QuadraticFamily& family, std::size_t steps);

// The adversary-i stacked constraint matrix [(H^-i)^T, (A^-i)^T]^T with block
// bookkeeping: H rows cover every component and every benign column block,
// A rows only the components whose constant the adversary knows.
struct StackedMatrix {
  unsigned adversary = 0;
  RatMatrix matrix;
  std::vector<std::size_t> col_to_global;  // column -> flat coordinate

  struct Block {
    std::size_t component;  // index into family.components
    unsigned column_agent;  // v
    std::size_t row0, col0, rows, cols;
    bool from_A;
  };
  std::vector<Block> blocks;

  // Reads a stored block back out of the matrix.
  RatMatrix block_matrix(const Block& b) const;
};

StackedMatrix stack_for_adversary(const QuadraticFamily& family, unsigned adversary);

// A null vector with every entry nonzero, when one exists. Detection is
// exact: a coordinate is forced to zero on the null space iff the whole
// basis vanishes there; otherwise combining basis vectors with weights
// 1, t, t^2, ... finds an all-nonzero element for some small t.
std::optional<RatVector> find_all_nonzero_null_vector(const StackedMatrix& stacked);

// Perturbed-but-equivalent instance: shifted trajectories and sets plus
// adjusted constants for the components the adversary cannot see.
struct ShadowInstance {
  unsigned adversary = 0;
  RatVector delta;                   // full width, adversary block zero
  std::map<std::size_t, Rat> b_hat;  // component -> adjusted constant
};

ShadowInstance build_shadow(const QuadraticFamily& family, unsigned adversary,
                            const RatVector& delta);

struct ShadowCheck {
  bool ok = false;
  std::string first_violation;
};

// Re-evaluates the shadow against the true trajectory: benign-agent update
// consistency (known and unknown constants) and adversary-observation
// equality, all exact, over the whole horizon.
ShadowCheck verify_shadow(const QuadraticFamily& family, const ShadowInstance& shadow,
                          const std::vector<RatVector>& true_trajectory);

struct UncertaintyRung {
  Rat r;
  bool verified = false;
  Rat max_dist_sq;  // max over benign agents of ||r delta_j - delta_j||^2
};

struct UncertaintyReport {
  bool witness_available = false;
  RatVector witness;  // full-width delta
  std::vector<UncertaintyRung> rungs;
  bool unbounded = false;  // every rung verified and distances grow
  std::string text;
};

UncertaintyReport uncertainty_report(const QuadraticFamily& family, unsigned adversary,
                                     const RatVector& base_delta, std::size_t steps,
                                     const std::vector<Rat>& ladder);

// Reconstruction attempt for affine systems whose weights the adversary
// knows: propagates the dynamics symbolically in the unknown benign states
// and classifies the resulting linear system by exact rank.
struct AttackResult {
  SolveKind kind = SolveKind::underdetermined;
  RatVector recovered;          // benign states at the first observed step
  std::vector<std::size_t> unknown_coords;  // flat ids the entries refer to
  RatMatrix degenerate_basis;   // null basis when underdetermined
  std::string detail;
};

AttackResult linear_attack(const QuadraticFamily& family, unsigned adversary,
                           const std::vector<RatVector>& own_observations);

// Full analysis as a JSON report: witness search, shadow ladder over the
// simulated trajectory, and (for affine unconstrained systems) the
// reconstruction attack on the adversary's own observations.
std::string analyze_to_json(const QuadraticFamily& family, unsigned adversary,
                            std::size_t steps);

}  // namespace ioi
}  // namespace hegrad

#endif
