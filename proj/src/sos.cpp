#include "hyperdet/sos.hpp"

#include <map>
#include <optional>

namespace hyperdet {

std::vector<GramIndex> monomial_basis_Mk(const QuotientContext& ctx, unsigned k) {
  const std::size_t d = ctx.degree();
  if (k + 1 < d) {
    throw Error(ErrorKind::DegreeTooSmall,
                "k = " + std::to_string(k) + " < d - 1 = " + std::to_string(d - 1));
  }
  std::vector<GramIndex> out;
  for (std::size_t i = 0; i < d; ++i) {
    for (auto& m : monomials_of_degree(ctx.nvars(), 1, k - static_cast<unsigned>(i))) {
      out.push_back({i, std::move(m)});
    }
  }
  return out;
}

GramProblem gram_problem(const QuotientContext& ctx, const BezoutianForm& omega0, unsigned ell,
                         Execution exec) {
  const std::size_t d = ctx.degree();
  const std::size_t nv = ctx.nvars();
  if (omega0.entries.rows() != d || omega0.entries.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "form size differs from deg h");
  }
  GramProblem gp;
  gp.ell = ell;
  gp.k = static_cast<unsigned>(d - 1) + ell;
  gp.multiplier = sum_of_squares_form(nv).pow(ell);
  gp.basis = monomial_basis_Mk(ctx, gp.k);
  const std::size_t m = gp.basis.size();

  std::vector<std::size_t> block_start(d + 1, 0);
  for (std::size_t b = 0; b < m; ++b) block_start[gp.basis[b].basis_power + 1] = b + 1;

  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) blocks.emplace_back(i, j);
  }
  std::vector<std::vector<ExactConstraint>> per_block(blocks.size());

  for_each_index(exec, blocks.size(), [&](std::size_t bi) {
    const auto [i, j] = blocks[bi];
    const Poly target = gp.multiplier * omega0.entries(i, j);
    std::map<Monomial, ExactConstraint, GrlexGreater> by_mono;
    for (std::size_t p = block_start[i]; p < block_start[i + 1]; ++p) {
      for (std::size_t q = block_start[j]; q < block_start[j + 1]; ++q) {
        if (i == j && q < p) continue;
        const Monomial mu = gp.basis[p].r_monomial * gp.basis[q].r_monomial;
        Rational c = (i == j && p != q) ? Rational(2) : Rational(1);
        by_mono[mu].terms.push_back({p, q, std::move(c)});
      }
    }
    for (const auto& [mono, coeff] : target.terms()) {
      if (by_mono.find(mono) == by_mono.end()) {
        throw Error(ErrorKind::DegreeViolation, "form entry has a monomial outside the Gram support");
      }
    }
    for (auto& [mono, con] : by_mono) {
      con.rhs = target.coeff(mono);
      per_block[bi].push_back(std::move(con));
    }
  });

  gp.sdp.m = m;
  for (auto& blk : per_block) {
    for (auto& con : blk) {
      SdpConstraint sc;
      sc.a.size = m;
      for (const auto& t : con.terms) {
        const double v = t.row == t.col ? to_double(t.coeff) : 0.5 * to_double(t.coeff);
        sc.a.entries.push_back({t.row, t.col, v});
      }
      sc.b = to_double(con.rhs);
      gp.sdp.constraints.push_back(std::move(sc));
      gp.exact.push_back(std::move(con));
    }
  }
  return gp;
}

namespace {

// Entries of the symmetric matrix A_k in the Frobenius pairing.
Rational pairing_entry(const ExactConstraint::Term& t) {
  return t.row == t.col ? t.coeff : t.coeff / 2;
}

}  // namespace

namespace {

// One rounding attempt at a fixed denominator bound; nullopt if not PD.
std::optional<RationalMatrix> round_at(const GramProblem& p, const SdpSolution& sol, const Integer& bound) {
  const std::size_t m = p.sdp.m;
  RationalMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = 0.5 * (sol.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                              sol.G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
      g(i, j) = rationalize(v, bound);
      g(j, i) = g(i, j);
    }
  }

  // Orthogonal projection: G += sum_k lambda_k A_k with (A A^*) lambda = b - A(G).
  const std::size_t kc = p.exact.size();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>> by_entry;
  std::vector<Rational> residual(kc);
  for (std::size_t k = 0; k < kc; ++k) {
    Rational acc = 0;
    for (const auto& t : p.exact[k].terms) {
      acc += t.coeff * g(t.row, t.col);
      by_entry[{t.row, t.col}].emplace_back(k, pairing_entry(t));
    }
    residual[k] = p.exact[k].rhs - acc;
  }
  SparseSystem normal(kc);
  std::vector<std::map<std::size_t, Rational>> rows(kc);
  for (const auto& [entry, list] : by_entry) {
    const Rational mult = entry.first == entry.second ? Rational(1) : Rational(2);
    for (const auto& [k, ak] : list) {
      for (const auto& [l, al] : list) rows[k][l] += mult * ak * al;
    }
  }
  for (std::size_t k = 0; k < kc; ++k) {
    SparseSystem::Row r(rows[k].begin(), rows[k].end());
    normal.add_equation(std::move(r), residual[k]);
  }
  auto lambda = normal.solve();
  if (!lambda) throw Error(ErrorKind::RoundingFailed, "affine constraints are inconsistent");
  for (std::size_t k = 0; k < kc; ++k) {
    if ((*lambda)[k] == 0) continue;
    for (const auto& t : p.exact[k].terms) {
      g(t.row, t.col) += (*lambda)[k] * pairing_entry(t);
      if (t.row != t.col) g(t.col, t.row) = g(t.row, t.col);
    }
  }
  if (!is_positive_definite(g)) return std::nullopt;
  return g;
}

}  // namespace

RationalMatrix round_gram(const GramProblem& p, const SdpSolution& sol, const Integer& denominator_bound) {
  if (sol.status == SdpStatus::Infeasible) throw Error(ErrorKind::RoundingFailed, "SDP reported infeasible");
  if (!(sol.t > 0)) throw Error(ErrorKind::RoundingFailed, "no positive eigenvalue margin (t <= 0)");
  if (static_cast<std::size_t>(sol.G.rows()) != p.sdp.m) throw Error(ErrorKind::DimensionMismatch, "Gram size");
  if (denominator_bound < 1) throw Error(ErrorKind::InvalidArgument, "denominator bound must be positive");

  // Coarse bounds first: smaller heights downstream when the margin allows.
  for (Integer bound = kRoundingStartBound; bound < denominator_bound; bound *= kRoundingStartBound) {
    if (auto g = round_at(p, sol, bound)) return *g;
  }
  if (auto g = round_at(p, sol, denominator_bound)) return *g;
  throw Error(ErrorKind::RoundingFailed, "projected rational Gram matrix is not positive definite");
}

SosDecomposition decomposition_from_gram(const QuotientContext& ctx, const GramProblem& p,
                                         const RationalMatrix& gram) {
  LdlDecomposition ldl = ldl_decompose(gram);
  SosDecomposition dec;
  dec.ell = p.ell;
  dec.k = p.k;
  dec.q = p.multiplier;
  dec.weights = std::move(ldl.weights);
  dec.gram = gram;
  dec.basis = p.basis;
  const std::size_t m = p.basis.size();
  for (std::size_t i = 0; i < m; ++i) {
    QuotientElement u{std::vector<Poly>(ctx.degree(), Poly(ctx.nvars()))};
    for (std::size_t b = i; b < m; ++b) {
      const Rational& c = ldl.factor(i, b);
      if (c != 0) u.coeffs[p.basis[b].basis_power].add_term(p.basis[b].r_monomial, c);
    }
    dec.vectors.push_back(std::move(u));
  }
  return dec;
}

PolyMatrix weighted_form(const SosDecomposition& dec, std::size_t d, std::size_t nvars) {
  PolyMatrix sum(d, d, nvars);
  for (std::size_t v = 0; v < dec.vectors.size(); ++v) {
    const auto& u = dec.vectors[v].coeffs;
    for (std::size_t a = 0; a < d; ++a) {
      if (u[a].is_zero()) continue;
      const Poly wa = u[a] * dec.weights[v];
      for (std::size_t b = a; b < d; ++b) {
        if (!u[b].is_zero()) sum(a, b) += wa * u[b];
      }
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < a; ++b) sum(a, b) = sum(b, a);
  }
  return sum;
}

bool replays_exactly(const BezoutianForm& omega0, const SosDecomposition& dec) {
  const std::size_t d = omega0.entries.rows();
  if (dec.weights.size() != dec.vectors.size()) return false;
  for (const auto& w : dec.weights) {
    if (w <= 0) return false;
  }
  for (const auto& u : dec.vectors) {
    if (u.coeffs.size() != d) return false;
  }
  const std::size_t nv = dec.q.nvars();
  return weighted_form(dec, d, nv) == omega0.entries * dec.q;
}

std::size_t generator_rank(const SosDecomposition& dec) {
  const std::size_t m = dec.basis.size();
  RationalMatrix coeffs(dec.vectors.size(), m);
  for (std::size_t i = 0; i < dec.vectors.size(); ++i) {
    for (std::size_t b = 0; b < m; ++b) {
      coeffs(i, b) = dec.vectors[i].coeffs[dec.basis[b].basis_power].coeff(dec.basis[b].r_monomial);
    }
  }
  return rank(coeffs);
}

SosDecomposition find_nice_bezoutian(const QuotientContext& ctx, const SosOptions& options,
                                     std::vector<SosAttempt>* log) {
  const BezoutianForm omega0 = bezoutian_of(ctx, partial_derivative(ctx.h_monic(), 0));
  for (unsigned ell = 0; ell <= options.ell_max; ++ell) {
    SosAttempt attempt;
    attempt.ell = ell;
    try {
      GramProblem gp = gram_problem(ctx, omega0, ell, options.exec);
      attempt.gram_size = gp.sdp.m;
      attempt.num_constraints = gp.sdp.constraints.size();
      SdpSolution sol = solve_maxeig(gp.sdp, options.sdp_tol, options.sdp_max_iter, options.exec);
      RationalMatrix gram = round_gram(gp, sol, options.denominator_bound);
      SosDecomposition dec = decomposition_from_gram(ctx, gp, gram);
      if (!replays_exactly(omega0, dec)) {
        throw Error(ErrorKind::RoundingFailed, "exact identity q*omega0 = sum d_i u_i (x) u_i failed");
      }
      if (generator_rank(dec) != gp.basis.size()) {
        throw Error(ErrorKind::RoundingFailed, "generators do not span M_k");
      }
      attempt.outcome = "ok";
      if (log) log->push_back(attempt);
      return dec;
    } catch (const Error& e) {
      attempt.outcome = e.what();
      if (log) log->push_back(attempt);
    }
  }
  throw Error(ErrorKind::Exhausted, "no nice Bezoutian found for ell <= " + std::to_string(options.ell_max));
}

}  // namespace hyperdet
