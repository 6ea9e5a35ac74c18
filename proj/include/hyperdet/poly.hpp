#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdet/error.hpp"
#include "hyperdet/rational.hpp"

namespace hyperdet {

// Exponent vector over x0..xn.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> exps);

  static Monomial unit(std::size_t nvars, std::size_t var, unsigned power = 1);

  std::size_t nvars() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  // other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial with_exponent(std::size_t var, unsigned power) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

  std::string to_string() const;

 private:
  std::vector<unsigned> exps_;
  unsigned degree_ = 0;
};

// Graded lexicographic order with x0 > x1 > ... > xn.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

// Univariate polynomial in t, dense, index = power.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);

  static UniPoly monomial(const Rational& c, std::size_t power);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(std::size_t power) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational operator()(const Rational& t) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& c) const;
  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

  UniPoly derivative() const;
  UniPoly monic() const;

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct UniDivision {
  UniPoly quotient;
  UniPoly remainder;
};

UniDivision divmod(const UniPoly& f, const UniPoly& g);
// Monic gcd; gcd(0,0) = 0.
UniPoly gcd(const UniPoly& f, const UniPoly& g);

// A hyperbolicity direction: nonzero rational vector over x0..xn.
class Direction {
 public:
  explicit Direction(RationalVector coords);
  static Direction first_unit(std::size_t nvars);

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const RationalVector& coords() const { return coords_; }
  bool operator==(const Direction& o) const { return coords_ == o.coords_; }

 private:
  RationalVector coords_;
};

// Square rational matrix, row-major, used for coordinate changes.
struct CoordinateChange {
  std::size_t n = 0;
  std::vector<Rational> entries;

  static CoordinateChange identity(std::size_t n);
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  RationalVector apply(std::span<const Rational> v) const;
  // Throws InvalidArgument if singular.
  CoordinateChange inverse() const;
  bool operator==(const CoordinateChange& o) const { return n == o.n && entries == o.entries; }
};

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Terms are kept in decreasing graded-lex order; zero coefficients are never
// stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, const Rational& constant);

  static Poly variable(std::size_t nvars, std::size_t var);
  static Poly term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  // Highest total degree; 0 for the zero polynomial.
  unsigned degree() const;
  unsigned degree_in(std::size_t var) const;
  // Zero counts as homogeneous of every degree.
  bool is_homogeneous() const;
  bool is_homogeneous_of(unsigned deg) const;

  Rational coeff(const Monomial& m) const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }

  void add_term(const Monomial& m, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly pow(unsigned e) const;

  Rational evaluate(std::span<const Rational> point) const;

  // Canonical string in the text grammar, e.g. "x0^2 - x1^2 - 2/3*x1*x2".
  std::string to_string() const;

 private:
  void check_same_nvars(const Poly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

Poly mul(const Poly& a, const Poly& b);

// q with f = q * g; throws NotDivisible if the single-divisor reduction
// leaves a nonzero remainder.
Poly exact_divide(const Poly& f, const Poly& g);

Poly partial_derivative(const Poly& p, std::size_t var);

Rational evaluate(const Poly& p, std::span<const Rational> point);

// Coefficients of h(t*e + v) in t.
UniPoly substitute_line(const Poly& h, const Direction& e, std::span<const Rational> v);

// p(M y): substitutes x_i = sum_j M(i,j) y_j.
Poly linear_substitute(const Poly& p, const CoordinateChange& m);

struct NormalizedPoly {
  Poly poly;            // h o T^{-1}
  CoordinateChange T;   // T e = (1,0,...,0)
  CoordinateChange T_inverse;
};

// Moves e to the first unit vector. T^{-1} has columns e, w_1, ..., w_n where
// the w_i are rational vectors orthogonal to e.
NormalizedPoly normalize_direction(const Poly& h, const Direction& e);

// Coefficients of p as a polynomial in x0: result[a] holds the x0^a part with
// x0 removed (same nvars, x0 exponent 0).
std::vector<Poly> coefficients_in_x0(const Poly& p);

// sum_i x_i^2 over the variables x1..xn (x0 excluded).
Poly sum_of_squares_form(std::size_t nvars);

// All monomials of total degree `deg` in the variables [first_var, nvars),
// in decreasing graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::size_t first_var,
                                          unsigned deg);

// Text grammar: terms joined by + or -, a term is coeff, coeff*mono or mono,
// mono is xI^E factors joined by *. `nvars` = 0 infers max index + 1.
Poly parse_poly(std::string_view text, std::size_t nvars = 0);

RationalVector parse_rational_list(std::string_view text);

}  // namespace hyperdet
