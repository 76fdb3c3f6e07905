#include "core/ratmat.hpp"

#include <sstream>

#include "core/decimal.hpp"
#include "core/errors.hpp"

namespace hegrad {

void RatMatrix::append_row(const RatVector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) {
    throw Error(ErrorCode::dimension_mismatch, "row length does not match matrix");
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

RatVector RatMatrix::multiply(const RatVector& v) const {
  if (v.size() != cols_) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match matrix");
  }
  RatVector out(rows_, Rat(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
  }
  return out;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::string RatMatrix::str() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out << "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ", ";
      out << rational_str(at(r, c));
    }
    out << "]\n";
  }
  return out.str();
}

std::vector<std::size_t> reduce_to_rref(RatMatrix& m) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
    }
    Rat inv = 1 / m.at(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= factor * m.at(row, c);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

RatMatrix null_space_basis(const RatMatrix& m) {
  RatMatrix r = m;
  std::vector<std::size_t> pivots = reduce_to_rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  RatMatrix basis(m.cols(), free_cols.size());
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    std::size_t fc = free_cols[b];
    basis.at(fc, b) = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
      basis.at(pivots[pr], b) = -r.at(pr, fc);
    }
  }
  return basis;
}

LinearSolveResult solve_linear_system(const RatMatrix& m, const RatVector& rhs) {
  if (rhs.size() != m.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "rhs length does not match matrix");
  }
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = rhs[r];
  }
  std::vector<std::size_t> pivots = reduce_to_rref(aug);
  LinearSolveResult result;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) {
      result.kind = SolveKind::inconsistent;
      return result;
    }
  }
  if (pivots.size() == m.cols()) {
    result.kind = SolveKind::unique;
    result.solution.assign(m.cols(), Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      result.solution[pivots[i]] = aug.at(i, m.cols());
    }
    return result;
  }
  result.kind = SolveKind::underdetermined;
  result.null_basis = null_space_basis(m);
  result.solution.assign(m.cols(), Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    result.solution[pivots[i]] = aug.at(i, m.cols());
  }
  return result;
}

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class num(text.substr(0, slash), 10);
      mpz_class den(text.substr(slash + 1), 10);
      if (den == 0) throw Error(ErrorCode::parse_error, "zero denominator");
      Rat q(num, den);
      q.canonicalize();
      return q;
    }
    return ScaledDecimal::parse(text).to_rational();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse_error, "bad rational literal: " + text);
  }
}

std::string rational_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hegrad
