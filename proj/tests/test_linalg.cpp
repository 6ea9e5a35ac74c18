#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "hyperdet/parallel.hpp"
#include "support.hpp"

using namespace hyperdet;
using namespace hyperdet::test;

namespace {

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

RationalMatrix diag(const std::vector<Rational>& d) {
  RationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("LDL examples") {
  const LdlDecomposition a = ldl_decompose(mat({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  CHECK(a.weights == std::vector<Rational>{2, 2, 2});
  CHECK(a.factor == RationalMatrix::identity(3));

  const LdlDecomposition b = ldl_decompose(mat({{5, -3}, {-3, 2}}));
  CHECK(b.weights == std::vector<Rational>{rat(5), rat(1, 5)});
  RationalMatrix l = RationalMatrix::identity(2);
  l(0, 1) = rat(-3, 5);
  CHECK(b.factor == l);

  try {
    ldl_decompose(mat({{0, 1}, {1, 0}}));
    FAIL("expected NotPD");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPD);
  }
  CHECK_FALSE(is_positive_definite(mat({{1, 2}, {2, 1}})));
  CHECK(is_positive_definite(mat({{2, 1}, {1, 2}})));
}

TEST_CASE("property: LDL reconstructs and agrees with Sylvester minors") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    RationalMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r(i, j) = random_rational(rng, 3);
    }
    RationalMatrix g = r.transpose() * r;
    if (trial % 2) {
      for (std::size_t i = 0; i < n; ++i) g(i, i) += 1;
    } else {
      g(0, 0) -= 2;
    }
    const bool pd = oracle::leading_minors_positive(g);
    CHECK(is_positive_definite(g) == pd);
    if (pd) {
      const LdlDecomposition ldl = ldl_decompose(g);
      CHECK(ldl.factor.transpose() * diag(ldl.weights) * ldl.factor == g);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(ldl.factor(i, i) == 1);
        for (std::size_t j = 0; j < i; ++j) CHECK(ldl.factor(i, j) == 0);
      }
    }
  }
}

TEST_CASE("rank") {
  CHECK(rank(mat({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(mat({{1, 2, 3}, {0, 1, 1}, {1, 3, 4}})) == 2);
  CHECK(rank(RationalMatrix::identity(4)) == 4);
  CHECK(rank(RationalMatrix(3, 2)) == 0);
}

TEST_CASE("sparse system: consistent, inconsistent and underdetermined") {
  SparseSystem s(3);
  s.add_equation({{0, rat(1)}, {1, rat(1)}}, rat(3));
  s.add_equation({{1, rat(1)}, {2, rat(-1)}}, rat(1));
  s.add_equation({{0, rat(1)}, {2, rat(1)}}, rat(2));  // dependent
  auto x = s.solve();
  REQUIRE(x);
  CHECK(s.satisfied_by(*x));
  CHECK((*x)[2] == 0);  // free variable set to zero

  SparseSystem bad(2);
  bad.add_equation({{0, rat(1)}, {1, rat(1)}}, rat(1));
  bad.add_equation({{0, rat(2)}, {1, rat(2)}}, rat(3));
  CHECK_FALSE(bad.solve());

  SparseSystem dup(1);
  dup.add_equation({{0, rat(1)}, {0, rat(1)}}, rat(4));
  CHECK((*dup.solve())[0] == 2);
  CHECK_THROWS_AS(dup.add_equation({{5, rat(1)}}, rat(0)), Error);
}

TEST_CASE("property: sparse system solves random consistent systems") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 8, m = 1 + rng() % 10;
    const RationalVector truth = random_vector(rng, n);
    SparseSystem s(n);
    for (std::size_t r = 0; r < m; ++r) {
      SparseSystem::Row row;
      Rational rhs = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (rng() % 2) continue;
        const Rational v = random_rational(rng, 4);
        row.emplace_back(c, v);
        rhs += v * truth[c];
      }
      s.add_equation(row, rhs);
    }
    auto x = s.solve();
    REQUIRE(x);
    CHECK(s.satisfied_by(*x));
  }
}

TEST_CASE("parallel first_failure matches the serial scan") {
  for (std::size_t count : {0u, 1u, 7u, 100u, 1000u}) {
    for (std::size_t bad : {0u, 3u, 50u, 999u, 5000u}) {
      auto ok = [bad](std::size_t i) { return i < bad || i % 7 != 3; };
      CHECK(first_failure_serial(count, ok) == first_failure_parallel(count, ok));
    }
  }
  std::atomic<int> calls{0};
  for_each_index(Execution::Parallel, 50, [&](std::size_t) { ++calls; });
  CHECK(calls == 50);
  CHECK_THROWS_AS(first_failure_parallel(10, [](std::size_t i) -> bool {
                    if (i == 4) throw std::runtime_error("boom");
                    return true;
                  }),
                  std::runtime_error);
  CHECK(available_threads() >= 1);
}
