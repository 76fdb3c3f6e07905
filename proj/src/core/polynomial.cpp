#include "core/polynomial.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace hegrad {

namespace {

unsigned exponent_sum(const std::map<VarId, unsigned>& exps) {
  unsigned total = 0;
  for (const auto& [var, e] : exps) {
    (void)var;
    total += e;
  }
  return total;
}

// Deterministic monomial order: lexicographic on (x_exponents, y_exponents),
// so serialized problems are byte-stable.
bool support_less(const Monomial& a, const Monomial& b) {
  if (a.x_exponents != b.x_exponents) return a.x_exponents < b.x_exponents;
  return a.y_exponents < b.y_exponents;
}

template <typename Value>
Value lookup(std::span<const Value> values, VarId var, const char* kind) {
  if (var == 0 || var > values.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(kind) + " variable " + std::to_string(var) +
                    " outside vector of size " + std::to_string(values.size()));
  }
  return values[var - 1];
}

template <typename Value>
Value pow_value(const Value& base, unsigned e) {
  Value acc = base;
  for (unsigned i = 1; i < e; ++i) acc = acc * base;
  return acc;
}

}  // namespace

unsigned Monomial::degree() const {
  unsigned d = exponent_sum(x_exponents) + exponent_sum(y_exponents);
  if (literal.fraction_digits() > 0) ++d;
  return d;
}

Polynomial::Polynomial(std::vector<Monomial> monomials) {
  for (auto& m : monomials) {
    for (auto it = m.x_exponents.begin(); it != m.x_exponents.end();) {
      if (it->second == 0) it = m.x_exponents.erase(it);
      else ++it;
    }
    for (auto it = m.y_exponents.begin(); it != m.y_exponents.end();) {
      if (it->second == 0) it = m.y_exponents.erase(it);
      else ++it;
    }
  }
  std::sort(monomials.begin(), monomials.end(), support_less);
  for (auto& m : monomials) {
    if (m.literal.is_zero()) continue;
    if (!monomials_.empty() && monomials_.back().same_support(m)) {
      monomials_.back().literal = monomials_.back().literal + m.literal;
    } else {
      monomials_.push_back(std::move(m));
    }
  }
  std::erase_if(monomials_, [](const Monomial& m) { return m.literal.is_zero(); });
  for (const auto& m : monomials_) degree_ = std::max(degree_, m.degree());
}

ScaledDecimal Polynomial::evaluate(std::span<const ScaledDecimal> x,
                                   std::span<const ScaledDecimal> coeffs) const {
  ScaledDecimal sum;
  for (const auto& m : monomials_) {
    ScaledDecimal term = m.literal;
    for (const auto& [var, e] : m.x_exponents)
      term = term * pow_value(lookup(x, var, "state"), e);
    for (const auto& [var, e] : m.y_exponents)
      term = term * pow_value(lookup(coeffs, var, "coefficient"), e);
    sum = sum + term;
  }
  return sum;
}

mpq_class Polynomial::evaluate_rational(std::span<const mpq_class> x,
                                        std::span<const mpq_class> coeffs) const {
  mpq_class sum = 0;
  for (const auto& m : monomials_) {
    mpq_class term = m.literal.to_rational();
    for (const auto& [var, e] : m.x_exponents)
      term = term * pow_value(lookup(x, var, "state"), e);
    for (const auto& [var, e] : m.y_exponents)
      term = term * pow_value(lookup(coeffs, var, "coefficient"), e);
    sum += term;
  }
  return sum;
}

std::optional<AffineForm> Polynomial::to_affine() const {
  AffineForm out;
  for (const auto& m : monomials_) {
    if (!m.y_exponents.empty()) return std::nullopt;
    unsigned xdeg = exponent_sum(m.x_exponents);
    if (xdeg > 1) return std::nullopt;
    if (xdeg == 0) {
      out.constant = out.constant + m.literal;
    } else {
      VarId var = m.x_exponents.begin()->first;
      auto [it, inserted] = out.weights.emplace(var, m.literal);
      if (!inserted) it->second = it->second + m.literal;
    }
  }
  return out;
}

VarId Polynomial::max_x_var() const {
  VarId v = 0;
  for (const auto& m : monomials_)
    if (!m.x_exponents.empty()) v = std::max(v, m.x_exponents.rbegin()->first);
  return v;
}

VarId Polynomial::max_y_var() const {
  VarId v = 0;
  for (const auto& m : monomials_)
    if (!m.y_exponents.empty()) v = std::max(v, m.y_exponents.rbegin()->first);
  return v;
}

}  // namespace hegrad
