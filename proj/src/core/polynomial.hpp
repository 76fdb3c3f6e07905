#ifndef HEGRAD_CORE_POLYNOMIAL_HPP
#define HEGRAD_CORE_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "core/decimal.hpp"

namespace hegrad {

// Variable ids are 1-based indices into the problem's flat state vector (x)
// and coefficient vector (y).
using VarId = std::uint32_t;

// One product term: lit * prod x_v^e * prod y_v^e. The literal is a public
// constant baked into the function structure; private values always travel
// through y variables instead. For modular-scaling purposes a literal with a
// fractional part counts one degree (it gets the same 10^sigma treatment as
// any other value), while an integer literal multiplies through unscaled.
struct Monomial {
  std::map<VarId, unsigned> x_exponents;
  std::map<VarId, unsigned> y_exponents;
  ScaledDecimal literal{1};

  unsigned degree() const;
  bool same_support(const Monomial& other) const {
    return x_exponents == other.x_exponents && y_exponents == other.y_exponents;
  }
};

struct AffineForm {
  std::map<VarId, ScaledDecimal> weights;  // per state variable
  ScaledDecimal constant;
};

class Polynomial {
 public:
  Polynomial() = default;
  // Coalesces monomials with the same support and drops zero terms.
  explicit Polynomial(std::vector<Monomial> monomials);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  unsigned degree() const { return degree_; }

  // Exact evaluation with coefficient variables substituted by `coeffs`;
  // the reference oracle every ciphertext path is compared against.
  ScaledDecimal evaluate(std::span<const ScaledDecimal> x,
                         std::span<const ScaledDecimal> coeffs) const;
  mpq_class evaluate_rational(std::span<const mpq_class> x,
                              std::span<const mpq_class> coeffs) const;

  // Extracts (A, B) when the polynomial is affine in x with literal
  // coefficients only (no y variables); nullopt otherwise.
  std::optional<AffineForm> to_affine() const;

  VarId max_x_var() const;
  VarId max_y_var() const;

 private:
  std::vector<Monomial> monomials_;
  unsigned degree_ = 0;
};

}  // namespace hegrad

#endif
