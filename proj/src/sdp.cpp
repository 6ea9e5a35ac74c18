#include "hyperdet/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperdet/error.hpp"

namespace hyperdet {

SparseSymMatrix SparseSymMatrix::from_dense(const Eigen::MatrixXd& a, double drop_tol) {
  SparseSymMatrix s;
  s.size = static_cast<std::size_t>(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i; j < a.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      if (std::abs(v) > drop_tol) {
        s.entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), v});
      }
    }
  }
  return s;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  add_to(out, 1.0);
  return out;
}

double SparseSymMatrix::dot(const Eigen::MatrixXd& g) const {
  double acc = 0.0;
  for (const auto& e : entries) {
    const auto r = static_cast<Eigen::Index>(e.row), c = static_cast<Eigen::Index>(e.col);
    acc += e.row == e.col ? e.value * g(r, c) : e.value * (g(r, c) + g(c, r));
  }
  return acc;
}

double SparseSymMatrix::trace() const {
  double acc = 0.0;
  for (const auto& e : entries) {
    if (e.row == e.col) acc += e.value;
  }
  return acc;
}

void SparseSymMatrix::add_to(Eigen::MatrixXd& out, double scale) const {
  for (const auto& e : entries) {
    const auto r = static_cast<Eigen::Index>(e.row), c = static_cast<Eigen::Index>(e.col);
    out(r, c) += scale * e.value;
    if (r != c) out(c, r) += scale * e.value;
  }
}

double SdpProblem::residual(const Eigen::MatrixXd& g) const {
  double worst = 0.0;
  for (const auto& c : constraints) worst = std::max(worst, std::abs(c.a.dot(g) - c.b));
  return worst;
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// W A W for one constraint; sparse path for sparse A.
MatrixXd congruence(const SparseSymMatrix& a, const MatrixXd& w) {
  const auto m = w.rows();
  if (a.entries.size() > static_cast<std::size_t>(m)) {
    MatrixXd dense = a.to_dense();
    return w * dense * w;
  }
  MatrixXd out = MatrixXd::Zero(m, m);
  for (const auto& e : a.entries) {
    const auto r = static_cast<Eigen::Index>(e.row), c = static_cast<Eigen::Index>(e.col);
    out.noalias() += e.value * w.col(r) * w.row(c);
    if (r != c) out.noalias() += e.value * w.col(c) * w.row(r);
  }
  return out;
}

VectorXd apply_op(const SdpProblem& p, const MatrixXd& x) {
  VectorXd out(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t k = 0; k < p.constraints.size(); ++k) out(static_cast<Eigen::Index>(k)) = p.constraints[k].a.dot(x);
  return out;
}

MatrixXd apply_adjoint(const SdpProblem& p, const VectorXd& y) {
  MatrixXd out = MatrixXd::Zero(static_cast<Eigen::Index>(p.m), static_cast<Eigen::Index>(p.m));
  for (std::size_t k = 0; k < p.constraints.size(); ++k) p.constraints[k].a.add_to(out, y(static_cast<Eigen::Index>(k)));
  return out;
}

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// Largest step in (0, inf] keeping X + alpha dX >= 0, given X = L L^T.
double max_step(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& dx) {
  MatrixXd lower = chol.matrixL();
  MatrixXd tmp = lower.triangularView<Eigen::Lower>().solve(dx);
  MatrixXd s = lower.triangularView<Eigen::Lower>().solve(tmp.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(s), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct Scaling {
  MatrixXd w, w_half, w_inv_half, v_vecs;
  VectorXd v_vals;
};

Scaling nt_scaling(const MatrixXd& x, const MatrixXd& z) {
  Eigen::LLT<MatrixXd> cx(x);
  MatrixXd l = cx.matrixL();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(l.transpose() * z * l));
  VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  MatrixXd lq = l * es.eigenvectors();
  Scaling s;
  s.w = sym(lq * inv_sqrt.asDiagonal() * lq.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> ew(s.w);
  VectorXd om = ew.eigenvalues().cwiseMax(1e-300).cwiseSqrt();
  s.w_half = sym(ew.eigenvectors() * om.asDiagonal() * ew.eigenvectors().transpose());
  s.w_inv_half = sym(ew.eigenvectors() * om.cwiseInverse().asDiagonal() * ew.eigenvectors().transpose());
  MatrixXd v = sym(s.w_inv_half * x * s.w_inv_half);
  Eigen::SelfAdjointEigenSolver<MatrixXd> ev(v);
  s.v_vals = ev.eigenvalues();
  s.v_vecs = ev.eigenvectors();
  return s;
}

// Solves V S + S V = rhs in the eigenbasis of V, returns W^{1/2} S W^{1/2}.
MatrixXd complementarity_rhs(const Scaling& s, const MatrixXd& rhs) {
  MatrixXd r = s.v_vecs.transpose() * rhs * s.v_vecs;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) /= (s.v_vals(i) + s.v_vals(j));
  }
  MatrixXd sol = s.v_vecs * r * s.v_vecs.transpose();
  return sym(s.w_half * sol * s.w_half);
}

struct Direction {
  MatrixXd dx, dz;
  VectorXd dy;
  double du = 0.0;
};

}  // namespace

MatrixXd schur_complement(const SdpProblem& p, const MatrixXd& w, Execution exec) {
  const std::size_t k = p.constraints.size();
  MatrixXd m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for_each_index(exec, k, [&](std::size_t l) {
    const MatrixXd wal = congruence(p.constraints[l].a, w);
    for (std::size_t r = 0; r < k; ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) = p.constraints[r].a.dot(wal);
    }
  });
  return sym(m);
}

std::vector<std::size_t> independent_constraints(const SdpProblem& p) {
  const auto m = static_cast<Eigen::Index>(p.m);
  const auto kc = static_cast<Eigen::Index>(p.constraints.size());
  // Columns are the upper triangles of A_k with off-diagonals scaled by sqrt(2).
  MatrixXd c = MatrixXd::Zero(m * (m + 1) / 2, kc);
  for (Eigen::Index k = 0; k < kc; ++k) {
    for (const auto& e : p.constraints[static_cast<std::size_t>(k)].a.entries) {
      const auto r = static_cast<Eigen::Index>(e.row), col = static_cast<Eigen::Index>(e.col);
      const Eigen::Index pos = col * (col + 1) / 2 + r;
      c(pos, k) = r == col ? e.value : std::sqrt(2.0) * e.value;
    }
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(c);
  qr.setThreshold(kConstraintRankTol);
  const auto rank = qr.rank();
  std::vector<std::size_t> keep;
  for (Eigen::Index i = 0; i < rank; ++i) keep.push_back(static_cast<std::size_t>(qr.colsPermutation().indices()(i)));
  std::sort(keep.begin(), keep.end());
  return keep;
}

SdpSolution solve_maxeig(const SdpProblem& full, double tol, int max_iter, Execution exec) {
  if (tol <= 0) throw Error(ErrorKind::InvalidArgument, "sdp tolerance must be positive");
  if (full.constraints.empty()) throw Error(ErrorKind::InvalidArgument, "sdp problem has no constraints");
  for (const auto& c : full.constraints) {
    if (c.a.size != full.m) throw Error(ErrorKind::DimensionMismatch, "constraint matrix size differs from m");
  }
  SdpProblem reduced;
  const std::vector<std::size_t> keep = independent_constraints(full);
  const bool dependent = keep.size() < full.constraints.size();
  if (dependent) {
    reduced.m = full.m;
    for (std::size_t k : keep) reduced.constraints.push_back(full.constraints[k]);
  }
  const SdpProblem& p = dependent ? reduced : full;
  const auto m = static_cast<Eigen::Index>(p.m);
  const auto kc = static_cast<Eigen::Index>(p.constraints.size());

  VectorXd b(kc), a(kc);
  for (Eigen::Index k = 0; k < kc; ++k) {
    b(k) = p.constraints[static_cast<std::size_t>(k)].b;
    a(k) = p.constraints[static_cast<std::size_t>(k)].a.trace();
  }
  const MatrixXd identity = MatrixXd::Identity(m, m);

  // Primal: min -u  s.t. A(X) + a u = b, X >= 0   (G = X + u I, t = u)
  // Dual:   max b'y s.t. A*(y) + Z = 0, a'y = -1, Z >= 0
  MatrixXd x = identity, z = identity;
  VectorXd y = VectorXd::Zero(kc);
  double u = 0.0;

  constexpr double kDivergence = 1e8;
  constexpr double kStepFraction = 0.98;
  constexpr double kSchurShift = 1e-14;
  SdpSolution sol;
  sol.status = SdpStatus::MaxIterations;

  const double bnorm = 1.0 + b.norm();
  double last_dinf = std::numeric_limits<double>::infinity(), last_gap = last_dinf;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const VectorXd rp = b - apply_op(p, x) - a * u;
    const MatrixXd rd = -apply_adjoint(p, y) - z;
    const double ru = -1.0 - a.dot(y);
    const double mu = x.cwiseProduct(z).sum() / static_cast<double>(m);

    const double pinf = rp.norm() / bnorm;
    const double dinf = rd.norm() / (1.0 + std::sqrt(static_cast<double>(m))) + std::abs(ru);
    const double gap = x.cwiseProduct(z).sum() / (1.0 + std::abs(u) + std::abs(b.dot(y)));
    last_dinf = dinf;
    last_gap = gap;
    if (pinf <= tol && dinf <= tol && gap <= tol) {
      sol.status = SdpStatus::Optimal;
      break;
    }
    if (std::abs(u) > kDivergence || y.lpNorm<Eigen::Infinity>() > kDivergence) {
      sol.status = SdpStatus::Infeasible;
      break;
    }

    Scaling sc;
    try {
      sc = nt_scaling(x, z);
    } catch (...) {
      break;
    }
    MatrixXd mmat = schur_complement(p, sc.w, exec);
    Eigen::LDLT<MatrixXd> mfac(mmat);
    VectorXd minv_a = mfac.solve(a);
    double a_minv_a = a.dot(minv_a);
    if (mfac.info() != Eigen::Success || !mfac.isPositive() || !(a_minv_a > 0)) {
      // Ill-conditioned Schur system: retry once with a diagonal shift.
      mmat.diagonal().array() += kSchurShift * mmat.diagonal().cwiseAbs().maxCoeff();
      mfac.compute(mmat);
      minv_a = mfac.solve(a);
      a_minv_a = a.dot(minv_a);
    }
    // Loss of definiteness in the Schur system: stop with the current iterate.
    if (mfac.info() != Eigen::Success || !(a_minv_a > 0)) break;
    const MatrixXd w_rd_w = sc.w * rd * sc.w;

    auto solve_direction = [&](const MatrixXd& rhs_c) {
      Direction d;
      const MatrixXd rc = complementarity_rhs(sc, rhs_c);
      const VectorXd r1 = rp - apply_op(p, rc - w_rd_w);
      const VectorXd minv_r1 = mfac.solve(r1);
      d.du = (a.dot(minv_r1) - ru) / a_minv_a;
      d.dy = minv_r1 - d.du * minv_a;
      d.dz = sym(rd - apply_adjoint(p, d.dy));
      d.dx = sym(rc - sc.w * d.dz * sc.w);
      return d;
    };

    Eigen::LLT<MatrixXd> cx(x), cz(z);
    if (cx.info() != Eigen::Success || cz.info() != Eigen::Success) break;
    const MatrixXd v2 = sc.v_vecs * sc.v_vals.cwiseAbs2().asDiagonal() * sc.v_vecs.transpose();

    // Predictor.
    Direction aff = solve_direction(-2.0 * v2);
    const double ap_aff = std::min(1.0, max_step(cx, aff.dx));
    const double ad_aff = std::min(1.0, max_step(cz, aff.dz));
    const double mu_aff =
        (x + ap_aff * aff.dx).cwiseProduct(z + ad_aff * aff.dz).sum() / static_cast<double>(m);
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    const MatrixXd dxs = sc.w_inv_half * aff.dx * sc.w_inv_half;
    const MatrixXd dzs = sc.w_half * aff.dz * sc.w_half;
    const MatrixXd rhs = 2.0 * sigma * mu * identity - 2.0 * v2 - (dxs * dzs + dzs * dxs);
    Direction d = solve_direction(sym(rhs));
    const double ap = std::min(1.0, kStepFraction * max_step(cx, d.dx));
    const double ad = std::min(1.0, kStepFraction * max_step(cz, d.dz));

    x = sym(x + ap * d.dx);
    u += ap * d.du;
    y += ad * d.dy;
    z = sym(z + ad * d.dz);
  }
  sol.iterations = iter;

  // Least-norm correction onto the affine constraints.
  MatrixXd g = x + u * identity;
  {
    MatrixXd gram(kc, kc);
    for (Eigen::Index k = 0; k < kc; ++k) {
      const MatrixXd ak = p.constraints[static_cast<std::size_t>(k)].a.to_dense();
      for (Eigen::Index l = 0; l < kc; ++l) gram(l, k) = p.constraints[static_cast<std::size_t>(l)].a.dot(ak);
    }
    Eigen::LDLT<MatrixXd> gf(gram);
    for (int pass = 0; pass < 2 && gf.info() == Eigen::Success; ++pass) {
      const VectorXd r = b - apply_op(p, g);
      g += apply_adjoint(p, gf.solve(r));
    }
  }
  sol.G = sym(g);
  sol.residual = full.residual(sol.G);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sol.G, Eigen::EigenvaluesOnly);
  sol.t = std::min(u, es.eigenvalues().minCoeff());
  // An early stop still counts when the projected point meets the optimality test.
  if (sol.status == SdpStatus::MaxIterations && last_dinf <= tol && last_gap <= tol && sol.residual <= tol) {
    sol.status = SdpStatus::Optimal;
  }
  if (sol.status == SdpStatus::Optimal && sol.residual > tol) sol.status = SdpStatus::MaxIterations;
  return sol;
}

}  // namespace hyperdet
