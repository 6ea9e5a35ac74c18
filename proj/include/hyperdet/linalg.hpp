#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hyperdet/rational.hpp"

namespace hyperdet {

// Dense rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix transpose() const;
  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool is_symmetric() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

using RationalSymMatrix = RationalMatrix;

// A = L^T diag(d) L with L unit upper triangular.
struct LdlDecomposition {
  std::vector<Rational> weights;
  RationalMatrix factor;
};

// Throws NotPD at the first pivot <= 0 (no pivoting).
LdlDecomposition ldl_decompose(const RationalMatrix& a);

// Sylvester test via the pivots of symmetric elimination.
bool is_positive_definite(const RationalMatrix& a);

std::size_t rank(const RationalMatrix& a);

// Sparse linear system over Q. Solutions come from deterministic Gaussian
// elimination; free variables are set to zero.
class SparseSystem {
 public:
  using Row = std::vector<std::pair<std::size_t, Rational>>;

  explicit SparseSystem(std::size_t num_unknowns) : num_unknowns_(num_unknowns) {}

  // Duplicate columns are summed; zero entries dropped.
  void add_equation(Row row, Rational rhs);

  std::size_t num_unknowns() const { return num_unknowns_; }
  std::size_t num_equations() const { return rows_.size(); }

  // nullopt when inconsistent.
  std::optional<std::vector<Rational>> solve() const;

  // Max |residual| is zero.
  bool satisfied_by(const std::vector<Rational>& x) const;

 private:
  std::size_t num_unknowns_;
  std::vector<Row> rows_;
  std::vector<Rational> rhs_;
};

}  // namespace hyperdet
