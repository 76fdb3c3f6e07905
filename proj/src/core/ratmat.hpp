#ifndef HEGRAD_CORE_RATMAT_HPP
#define HEGRAD_CORE_RATMAT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace hegrad {

using Rat = mpq_class;
using RatVector = std::vector<Rat>;

// Dense matrix over exact rationals. Rank decisions are exact; there is no
// tolerance anywhere.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const RatVector& row);

  RatVector multiply(const RatVector& v) const;
  RatMatrix transposed() const;

  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// Reduced row echelon form in place; returns the pivot column per pivot row.
std::vector<std::size_t> reduce_to_rref(RatMatrix& m);

// Columns of the returned matrix form a basis of {x : Mx = 0}.
RatMatrix null_space_basis(const RatMatrix& m);

enum class SolveKind { unique, underdetermined, inconsistent };

struct LinearSolveResult {
  SolveKind kind = SolveKind::underdetermined;
  RatVector solution;    // valid when unique (a particular solution otherwise empty)
  RatMatrix null_basis;  // valid when underdetermined
};

// Classifies and solves M x = rhs exactly.
LinearSolveResult solve_linear_system(const RatMatrix& m, const RatVector& rhs);

Rat parse_rational(const std::string& text);  // "p/q" or decimal
std::string rational_str(const Rat& q);

}  // namespace hegrad

#endif
