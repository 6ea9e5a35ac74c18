#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "hyperdet/parallel.hpp"

namespace hyperdet {

// Symmetric matrix stored as upper-triangular triplets (row <= col).
struct SparseSymMatrix {
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::size_t size = 0;
  std::vector<Entry> entries;

  static SparseSymMatrix from_dense(const Eigen::MatrixXd& a, double drop_tol = 0.0);
  Eigen::MatrixXd to_dense() const;
  // Frobenius pairing <A, G>.
  double dot(const Eigen::MatrixXd& g) const;
  double trace() const;
  // out += scale * A
  void add_to(Eigen::MatrixXd& out, double scale) const;
};

// <A_k, G> = b_k for every k.
struct SdpConstraint {
  SparseSymMatrix a;
  double b = 0.0;
};

struct SdpProblem {
  std::size_t m = 0;
  std::vector<SdpConstraint> constraints;

  // Max |<A_k,G> - b_k|.
  double residual(const Eigen::MatrixXd& g) const;
};

enum class SdpStatus { Optimal, Infeasible, MaxIterations };

const char* to_string(SdpStatus s);

struct SdpSolution {
  Eigen::MatrixXd G;
  double t = 0.0;
  double residual = 0.0;
  SdpStatus status = SdpStatus::MaxIterations;
  int iterations = 0;
};

inline constexpr double kDefaultSdpTol = 1e-8;
inline constexpr int kDefaultSdpMaxIter = 200;

// max t subject to G - tI >= 0 and the affine constraints. Primal-dual
// path-following with Nesterov-Todd scaling and Mehrotra predictor-corrector,
// started from G = I, t = 0.
// Relative pivot threshold for discarding linearly dependent constraints.
inline constexpr double kConstraintRankTol = 1e-10;

// Indices of a maximal linearly independent subset of the constraint matrices.
std::vector<std::size_t> independent_constraints(const SdpProblem& p);

SdpSolution solve_maxeig(const SdpProblem& p, double tol = kDefaultSdpTol, int max_iter = kDefaultSdpMaxIter,
                         Execution exec = Execution::Parallel);

// Schur complement M(k,l) = <A_k, W A_l W>.
Eigen::MatrixXd schur_complement(const SdpProblem& p, const Eigen::MatrixXd& w, Execution exec);

}  // namespace hyperdet
