#include <doctest.h>

#include "hyperdet/hyperbolicity.hpp"
#include "support.hpp"

using namespace hyperdet;
using namespace hyperdet::test;

namespace {

UniPoly uni(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(v);
}

Direction e1(std::size_t n) { return Direction::first_unit(n); }

}  // namespace

TEST_CASE("count_real_roots examples") {
  CHECK(count_real_roots(uni({-1, 0, 1})) == 2);
  CHECK(count_real_roots(uni({1, 0, 1})) == 0);
  CHECK(count_real_roots(uni({0, -1, 0, 1})) == 3);
  CHECK(count_real_roots(uni({5})) == 0);
}

TEST_CASE("is_real_rooted examples") {
  CHECK(is_real_rooted(uni({-1, 1}) * uni({-1, 1}) * uni({2, 1})));
  CHECK_FALSE(is_real_rooted(uni({1, 0, 1})));
  CHECK_FALSE(is_real_rooted(uni({-1, 0, 0, 0, 1})));
}

TEST_CASE("sample directions start with signed unit vectors and are reproducible") {
  const auto s = sample_directions(3, 20, 7);
  REQUIRE(s.size() == 20);
  CHECK(s[0] == RationalVector{rat(1), rat(0), rat(0)});
  CHECK(s[1] == RationalVector{rat(-1), rat(0), rat(0)});
  CHECK(s[5] == RationalVector{rat(0), rat(0), rat(-1)});
  CHECK(s == sample_directions(3, 20, 7));
  CHECK(s != sample_directions(3, 20, 8));
  for (const auto& v : s) {
    CHECK(std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }));
    for (const auto& x : v) {
      CHECK(abs(x) <= 10);
      CHECK(x.get_den() <= 10);
    }
  }
}

TEST_CASE("check_hyperbolic_sampled examples") {
  CHECK(check_hyperbolic_sampled(P("x0^2 - x1^2 - x2^2"), e1(3)).status == HyperbolicityStatus::HyperbolicSampled);
  const auto bad = check_hyperbolic_sampled(P("x0^2 + x1^2"), e1(2));
  CHECK(bad.status == HyperbolicityStatus::NotHyperbolic);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == RationalVector{rat(0), rat(1)});
  // The witness is exact: the restricted line polynomial has a non-real root.
  CHECK_FALSE(is_real_rooted(substitute_line(P("x0^2 + x1^2"), e1(2), *bad.witness)));
  CHECK(check_hyperbolic_sampled(P("x0*x1"), Direction({rat(1), rat(1)})).status ==
        HyperbolicityStatus::HyperbolicSampled);
  CHECK_THROWS_AS(check_hyperbolic_sampled(P("x0*x1"), e1(2)), Error);
}

TEST_CASE("pd_witness_check examples") {
  CHECK(pd_witness_check(QuotientContext(P("x0^2 - x1^2 - x2^2"))).passed);
  const auto singular = pd_witness_check(QuotientContext(P("x0^2 - x1^2", 3)));
  CHECK_FALSE(singular.passed);
  REQUIRE(singular.witness);
  CHECK((*singular.witness)[0] == 0);
  CHECK((*singular.witness)[1] != 0);
  CHECK(pd_witness_check(QuotientContext(P("x0 - x1"))).passed);
}

TEST_CASE("property: Sturm exactness on products of distinct linear factors") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    std::vector<Rational> roots;
    while (roots.size() < k) {
      const Rational r = random_rational(rng, 9);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    std::vector<Rational> f{random_nonzero_rational(rng)};
    for (const auto& r : roots) f = oracle::poly_mul(f, {-r, Rational(1)});
    CHECK(count_real_roots(UniPoly(f)) == k);
    // Adding an irreducible quadratic keeps the real count.
    const auto g = oracle::poly_mul(f, {Rational(1) + roots[0] * roots[0], Rational(0), Rational(1)});
    CHECK(count_real_roots(UniPoly(g)) == k);
    CHECK_FALSE(is_real_rooted(UniPoly(g)));
  }
}

TEST_CASE("property: determinantal polynomials are never refuted") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t nv = 2 + rng() % 3;
    const std::size_t size = 1 + rng() % 3;
    const Poly h = random_determinantal(rng, nv, size);
    const auto serial = check_hyperbolic_sampled(h, e1(nv), 48, trial, Execution::Serial);
    const auto parallel = check_hyperbolic_sampled(h, e1(nv), 48, trial, Execution::Parallel);
    CHECK(serial.status == HyperbolicityStatus::HyperbolicSampled);
    CHECK(parallel.status == serial.status);
  }
}

TEST_CASE("property: PD of the Bezoutian matches real simple roots on each sampled line") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t nv = 2 + rng() % 2;
    const Poly h = trial % 2 ? random_determinantal(rng, nv, 2 + rng() % 2)
                             : random_monic_direction_poly(rng, nv, 2 + rng() % 2);
    const QuotientContext ctx(h);
    const BezoutianForm w = bezoutian_of(ctx, partial_derivative(ctx.h_monic(), 0));
    for (const auto& v : sample_directions(nv - 1, 12, trial)) {
      RationalVector full{Rational(0)};
      full.insert(full.end(), v.begin(), v.end());
      const UniPoly f = substitute_line(ctx.h_monic(), e1(nv), full);
      const bool simple_real = is_real_rooted(f) && gcd(f, f.derivative()).degree() == 0;
      CHECK(is_positive_definite(evaluate_form(w, v)) == simple_real);
    }
    const auto a = pd_witness_check(ctx, 24, trial, Execution::Serial);
    const auto b = pd_witness_check(ctx, 24, trial, Execution::Parallel);
    CHECK(a.passed == b.passed);
    CHECK(a.witness == b.witness);
  }
}
