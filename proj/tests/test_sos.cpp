#include <doctest.h>

#include "hyperdet/hyperbolicity.hpp"
#include "hyperdet/sos.hpp"
#include "support.hpp"

using namespace hyperdet;
using namespace hyperdet::test;

namespace {

const char* kLorentz = "x0^2 - x1^2 - x2^2";

BezoutianForm omega0_of(const QuotientContext& ctx) {
  return bezoutian_of(ctx, partial_derivative(ctx.h_monic(), 0));
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of monomials of degree j in r variables.
std::size_t count_monomials(std::size_t r, std::size_t j) { return r == 0 ? (j == 0) : binomial(j + r - 1, r - 1); }

// Every basis monomial of M_{k+1} is an R-linear combination of the u_i with
// linear coefficients.
bool generates_next_degree(const QuotientContext& ctx, const SosDecomposition& dec) {
  const std::size_t m = dec.vectors.size(), n = ctx.num_r_vars(), nv = ctx.nvars(), d = ctx.degree();
  for (std::size_t power = 0; power < d; ++power) {
    if (dec.k + 1 < power) continue;
    for (const auto& gamma : monomials_of_degree(nv, 1, dec.k + 1 - static_cast<unsigned>(power))) {
      SparseSystem s(m * n);
      for (std::size_t a = 0; a < d; ++a) {
        std::map<Monomial, SparseSystem::Row, GrlexGreater> rows;
        for (std::size_t i = 0; i < m; ++i) {
          for (const auto& [mono, c] : dec.vectors[i].coeffs[a].terms()) {
            for (std::size_t l = 0; l < n; ++l) rows[mono * Monomial::unit(nv, l + 1)].emplace_back(i * n + l, c);
          }
        }
        if (a == power) rows[gamma];
        for (auto& [mono, row] : rows) s.add_equation(row, Rational(a == power && mono == gamma ? 1 : 0));
      }
      if (!s.solve()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("monomial_basis_Mk examples") {
  const QuotientContext lorentz(P(kLorentz));
  const auto b = monomial_basis_Mk(lorentz, 1);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == GramIndex{0, Monomial({0, 1, 0})});
  CHECK(b[1] == GramIndex{0, Monomial({0, 0, 1})});
  CHECK(b[2] == GramIndex{1, Monomial({0, 0, 0})});

  const auto lin = monomial_basis_Mk(QuotientContext(P("x0 - x1 + 2*x3")), 0);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == GramIndex{0, Monomial(4)});

  try {
    monomial_basis_Mk(lorentz, 0);
    FAIL("expected DegreeTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooSmall);
  }
}

TEST_CASE("Gram index set size matches the monomial count") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t nv = 2 + rng() % 3;
    const unsigned d = 1 + rng() % 3;
    const QuotientContext ctx(random_monic_direction_poly(rng, nv, d));
    for (unsigned ell = 0; ell < 3; ++ell) {
      const unsigned k = d - 1 + ell;
      std::size_t expected = 0;
      for (unsigned i = 0; i < d; ++i) expected += count_monomials(nv - 1, k - i);
      CHECK(monomial_basis_Mk(ctx, k).size() == expected);
    }
  }
}

TEST_CASE("gram_problem for the Lorentz cone forces diag(2,2,2)") {
  const QuotientContext ctx(P(kLorentz));
  const GramProblem gp = gram_problem(ctx, omega0_of(ctx), 0);
  CHECK(gp.sdp.m == 3);
  CHECK(gp.k == 1);
  CHECK(gp.multiplier == Poly(3, Rational(1)));
  // Exact constraints in unknowns G(p,q), p <= q.
  auto idx = [](std::size_t p, std::size_t q) { return p * 3 + q; };
  SparseSystem s(9);
  for (const auto& c : gp.exact) {
    SparseSystem::Row row;
    for (const auto& t : c.terms) row.emplace_back(idx(t.row, t.col), t.coeff);
    s.add_equation(row, c.rhs);
  }
  auto x = s.solve();
  REQUIRE(x);
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t q = p; q < 3; ++q) CHECK((*x)[idx(p, q)] == (p == q ? 2 : 0));
  }
  // Every upper entry is pinned down.
  std::size_t pinned = 0;
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t q = p; q < 3; ++q) {
      for (const auto& c : gp.exact) {
        if (c.terms.size() == 1 && c.terms[0].row == p && c.terms[0].col == q) ++pinned;
      }
    }
  }
  CHECK(pinned == 6);

  const QuotientContext lin(P("x0 - x1"));
  const GramProblem g1 = gram_problem(lin, omega0_of(lin), 0);
  CHECK(g1.sdp.m == 1);
}

TEST_CASE("gram_problem serial and parallel builds agree") {
  const QuotientContext ctx(P("x0^4 - 5*x0^2*x1^2 - 5*x0^2*x2^2 + 4*x1^4 + 11*x1^2*x2^2 + 6*x2^4"));
  const GramProblem a = gram_problem(ctx, omega0_of(ctx), 1, Execution::Serial);
  const GramProblem b = gram_problem(ctx, omega0_of(ctx), 1, Execution::Parallel);
  REQUIRE(a.exact.size() == b.exact.size());
  for (std::size_t k = 0; k < a.exact.size(); ++k) {
    CHECK(a.exact[k].rhs == b.exact[k].rhs);
    CHECK(a.exact[k].terms.size() == b.exact[k].terms.size());
    CHECK(a.sdp.constraints[k].b == b.sdp.constraints[k].b);
  }
}

TEST_CASE("round_gram examples") {
  const QuotientContext ctx(P(kLorentz));
  const GramProblem gp = gram_problem(ctx, omega0_of(ctx), 0);
  SdpSolution sol;
  sol.status = SdpStatus::Optimal;
  sol.t = 2 - 1e-9;
  sol.G = Eigen::MatrixXd::Zero(3, 3);
  sol.G(0, 0) = 2 + 1e-9;
  sol.G(1, 1) = 2 - 1e-9;
  sol.G(2, 2) = 2;
  RationalMatrix expected(3, 3);
  for (std::size_t i = 0; i < 3; ++i) expected(i, i) = 2;
  CHECK(round_gram(gp, sol) == expected);

  sol.G = 2 * Eigen::MatrixXd::Identity(3, 3);
  CHECK(round_gram(gp, sol) == expected);

  sol.t = 0;
  try {
    round_gram(gp, sol);
    FAIL("expected RoundingFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RoundingFailed);
  }
}

TEST_CASE("find_nice_bezoutian examples") {
  const QuotientContext ctx(P(kLorentz));
  const SosDecomposition dec = find_nice_bezoutian(ctx);
  CHECK(dec.ell == 0);
  CHECK(dec.k == 1);
  CHECK(dec.weights == std::vector<Rational>{2, 2, 2});
  REQUIRE(dec.vectors.size() == 3);
  CHECK(dec.vectors[0].coeffs == std::vector<Poly>{P("x1", 3), Poly(3)});
  CHECK(dec.vectors[1].coeffs == std::vector<Poly>{P("x2", 3), Poly(3)});
  CHECK(dec.vectors[2].coeffs == std::vector<Poly>{Poly(3), Poly(3, Rational(1))});

  const SosDecomposition lin = find_nice_bezoutian(QuotientContext(P("x0 - x1")));
  CHECK(lin.ell == 0);
  CHECK(lin.k == 0);
  CHECK(lin.weights == std::vector<Rational>{1});
  CHECK(lin.vectors[0].coeffs == std::vector<Poly>{Poly(2, Rational(1))});

  std::vector<SosAttempt> log;
  SosOptions opts;
  opts.ell_max = 1;
  try {
    find_nice_bezoutian(QuotientContext(P("x0^2 + x1^2")), opts, &log);
    FAIL("expected Exhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Exhausted);
  }
  CHECK(log.size() == 2);
}

TEST_CASE("property: decompositions replay exactly, are nice, generate and stay Bezoutian") {
  std::mt19937_64 rng(52);
  std::vector<Poly> corpus{P(kLorentz), P("x0^3 - x0*x1^2 - x0*x2^2"), P("x0^2 - x1^2 - x2^2 - x3^2")};
  for (int i = 0; i < 3; ++i) corpus.push_back(random_determinantal(rng, 3, 2 + i % 2));
  for (const auto& h : corpus) {
    const QuotientContext ctx(h);
    if (!pd_witness_check(ctx).passed) continue;
    const SosDecomposition dec = find_nice_bezoutian(ctx);
    const BezoutianForm w = omega0_of(ctx);
    CHECK(replays_exactly(w, dec));
    CHECK(generator_rank(dec) == dec.basis.size());
    CHECK(generates_next_degree(ctx, dec));
    CHECK(is_bezoutian(ctx, weighted_form(dec, ctx.degree(), ctx.nvars())));
    CHECK(dec.q == sum_of_squares_form(ctx.nvars()).pow(dec.ell));
    // The rounded Gram matrix is exactly L^T D L.
    CHECK(is_positive_definite(dec.gram));
  }
}
