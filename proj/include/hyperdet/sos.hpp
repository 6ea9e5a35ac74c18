#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperdet/linalg.hpp"
#include "hyperdet/parallel.hpp"
#include "hyperdet/quotient.hpp"
#include "hyperdet/sdp.hpp"

namespace hyperdet {

// Basis element r_monomial * x0^basis_power of the degree-k part M_k.
struct GramIndex {
  std::size_t basis_power = 0;
  Monomial r_monomial;  // x0 exponent 0

  bool operator==(const GramIndex& o) const {
    return basis_power == o.basis_power && r_monomial == o.r_monomial;
  }
};

// Throws DegreeTooSmall for k < d - 1.
std::vector<GramIndex> monomial_basis_Mk(const QuotientContext& ctx, unsigned k);

// sum_{(p,q) upper} coeff * G(p,q) = rhs
struct ExactConstraint {
  struct Term {
    std::size_t row;
    std::size_t col;
    Rational coeff;
  };
  std::vector<Term> terms;
  Rational rhs;
};

struct GramProblem {
  SdpProblem sdp;
  std::vector<GramIndex> basis;
  std::vector<ExactConstraint> exact;
  unsigned ell = 0;
  unsigned k = 0;
  Poly multiplier;  // (x1^2 + ... + xn^2)^ell
};

// One constraint per (block i <= j, monomial): sum over gamma + delta = mu of
// G[(i,gamma),(j,delta)] equals the coefficient of x^mu in (q * omega0)(i,j).
GramProblem gram_problem(const QuotientContext& ctx, const BezoutianForm& omega0, unsigned ell,
                         Execution exec = Execution::Parallel);

inline const Integer kDefaultDenominatorBound = Integer(1) << 32;

inline const Integer kRoundingStartBound = Integer(1) << 8;

// Continued-fraction rounding, exact projection onto the affine constraints,
// then an exact PD check. Bounds 2^8, 2^16, ... below `denominator_bound` are
// tried first, then `denominator_bound` itself. Throws RoundingFailed.
RationalMatrix round_gram(const GramProblem& p, const SdpSolution& sol,
                          const Integer& denominator_bound = kDefaultDenominatorBound);

struct SosDecomposition {
  unsigned ell = 0;
  unsigned k = 0;
  Poly q;
  std::vector<Rational> weights;
  std::vector<QuotientElement> vectors;
  RationalMatrix gram;
  std::vector<GramIndex> basis;
};

// Builds u_i from row i of the unit upper triangular LDL factor.
SosDecomposition decomposition_from_gram(const QuotientContext& ctx, const GramProblem& p,
                                         const RationalMatrix& gram);

// q * omega0 == sum_i d_i u_i (x) u_i, entrywise and exactly.
bool replays_exactly(const BezoutianForm& omega0, const SosDecomposition& dec);

// Rank of the coefficient matrix of the u_i in the monomial basis of M_k.
std::size_t generator_rank(const SosDecomposition& dec);

// The form (q * omega0) as a d x d polynomial matrix.
PolyMatrix weighted_form(const SosDecomposition& dec, std::size_t d, std::size_t nvars);

struct SosOptions {
  unsigned ell_max = 4;
  double sdp_tol = kDefaultSdpTol;
  int sdp_max_iter = kDefaultSdpMaxIter;
  Integer denominator_bound = kDefaultDenominatorBound;
  Execution exec = Execution::Parallel;
};

struct SosAttempt {
  unsigned ell = 0;
  std::size_t gram_size = 0;
  std::size_t num_constraints = 0;
  std::string outcome;
};

// Tries ell = 0..ell_max with omega0 = bezoutian_of(dh/dx0); per-level
// failures are recorded in `log`. Throws Exhausted.
SosDecomposition find_nice_bezoutian(const QuotientContext& ctx, const SosOptions& options = {},
                                     std::vector<SosAttempt>* log = nullptr);

}  // namespace hyperdet
