#pragma once

#include <random>

#include "hyperdet/sdp.hpp"

namespace hyperdet::test {

struct SyntheticSdp {
  SdpProblem problem;
  Eigen::MatrixXd g_star;
};

// G* = R^T R + I; constraints are the trace plus `extra` sparse symmetric
// matrices with b_k = <A_k, G*>, so max lambda_min >= 1.
inline SyntheticSdp synthetic_sdp(std::size_t m, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> index(0, m - 1);
  std::uniform_int_distribution<int> value(-3, 3);

  Eigen::MatrixXd r(m, m);
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = normal(rng) / std::sqrt(static_cast<double>(m));
  }
  SyntheticSdp out;
  out.g_star = r.transpose() * r + Eigen::MatrixXd::Identity(m, m);
  out.problem.m = m;
  out.problem.constraints.push_back({SparseSymMatrix::from_dense(Eigen::MatrixXd::Identity(m, m)), 0.0});
  for (std::size_t k = 0; k < extra; ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (int t = 0; t < 3; ++t) {
      const auto i = static_cast<Eigen::Index>(index(rng)), j = static_cast<Eigen::Index>(index(rng));
      int v = value(rng);
      if (v == 0) v = 1;
      a(i, j) += v;
      if (i != j) a(j, i) += v;
    }
    out.problem.constraints.push_back({SparseSymMatrix::from_dense(a), 0.0});
  }
  for (auto& c : out.problem.constraints) c.b = c.a.dot(out.g_star);
  return out;
}

}  // namespace hyperdet::test
