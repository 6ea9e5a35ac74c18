#pragma once

#include <cstddef>
#include <vector>

#include "hyperdet/linalg.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

// Dense matrix of polynomials. Entries of Bezoutian forms and of the x0
// multiplication matrix live in R = Q[x1..xn] but are stored as Poly in
// x0..xn with zero x0 exponent.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), data_(rows * cols, Poly(nvars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator*(const Poly& scalar) const;
  PolyMatrix transpose() const;
  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool is_symmetric() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

// M = S/(h) as a free R-module with basis 1, x0, ..., x0^(d-1).
class QuotientContext {
 public:
  // h must be homogeneous with h(1,0,...,0) != 0; it is rescaled to be monic
  // in x0.
  explicit QuotientContext(const Poly& h);

  const Poly& h_monic() const { return h_; }
  // Leading coefficient that was divided out.
  const Rational& scale() const { return scale_; }
  std::size_t degree() const { return d_; }
  std::size_t nvars() const { return h_.nvars(); }
  // Number of R-variables (x1..xn).
  std::size_t num_r_vars() const { return h_.nvars() - 1; }
  // h = x0^d + sum_{a<d} lower(a) x0^a.
  const Poly& lower(std::size_t a) const { return lower_[a]; }

 private:
  Poly h_;
  Rational scale_;
  std::size_t d_;
  std::vector<Poly> lower_;
};

// Coordinates in the basis 1, x0, ..., x0^(d-1).
struct QuotientElement {
  std::vector<Poly> coeffs;

  bool operator==(const QuotientElement& o) const { return coeffs == o.coeffs; }
  bool is_zero() const;
};

struct BezoutianForm {
  PolyMatrix entries;
  unsigned total_degree = 0;
};

QuotientElement reduce_mod_h(const QuotientContext& ctx, const Poly& p);

// x0 * element, reduced.
QuotientElement multiply_by_x0(const QuotientContext& ctx, const QuotientElement& z);

// Column j holds the coordinates of x0 * x0^j.
PolyMatrix mult_x0_matrix(const QuotientContext& ctx);

// Throws DegreeViolation unless deg g < deg f.
RationalSymMatrix bezout_matrix_univariate(const UniPoly& f, const UniPoly& g);

BezoutianForm delta_h(const QuotientContext& ctx);

// Residue of (h(s)p(t) - h(t)p(s))/(s - t) modulo (h(s), h(t)).
BezoutianForm bezoutian_of(const QuotientContext& ctx, const Poly& p);

// Symmetric and F B = B F^T.
bool is_bezoutian(const QuotientContext& ctx, const PolyMatrix& b);

// Entrywise evaluation at v in Q^n (the R-variables).
RationalSymMatrix evaluate_form(const BezoutianForm& b, std::span<const Rational> v);
RationalMatrix evaluate_matrix(const PolyMatrix& m, std::span<const Rational> v);

}  // namespace hyperdet
