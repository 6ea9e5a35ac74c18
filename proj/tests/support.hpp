#pragma once

#include <map>
#include <random>
#include <vector>

#include "hyperdet/detrep.hpp"
#include "hyperdet/linalg.hpp"
#include "hyperdet/poly.hpp"
#include "hyperdet/quotient.hpp"
#include "oracles.hpp"

namespace hyperdet::test {

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Poly P(const char* text, std::size_t nvars = 0) { return parse_poly(text, nvars); }

inline Rational random_rational(std::mt19937_64& rng, long k = 5) {
  std::uniform_int_distribution<long> num(-k, k), den(1, k);
  return rat(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, long k = 5) {
  Rational q;
  do q = random_rational(rng, k);
  while (q == 0);
  return q;
}

inline RationalVector random_vector(std::mt19937_64& rng, std::size_t n, long k = 5) {
  RationalVector v(n);
  for (auto& x : v) x = random_rational(rng, k);
  return v;
}

// Random homogeneous polynomial of degree `deg` with about `density` of the
// monomials present.
inline Poly random_homogeneous(std::mt19937_64& rng, std::size_t nvars, unsigned deg, double density = 0.6,
                               long k = 5) {
  Poly p(nvars);
  std::bernoulli_distribution keep(density);
  for (const auto& m : monomials_of_degree(nvars, 0, deg)) {
    if (keep(rng)) p.add_term(m, random_rational(rng, k));
  }
  return p;
}

// Homogeneous with a nonzero x0^deg coefficient.
inline Poly random_monic_direction_poly(std::mt19937_64& rng, std::size_t nvars, unsigned deg) {
  Poly p = random_homogeneous(rng, nvars, deg);
  p.add_term(Monomial::unit(nvars, 0, deg), random_nonzero_rational(rng) - p.coeff(Monomial::unit(nvars, 0, deg)));
  if (p.coeff(Monomial::unit(nvars, 0, deg)) == 0) p.add_term(Monomial::unit(nvars, 0, deg), Rational(1));
  return p;
}

inline RationalMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long k = 3) {
  RationalMatrix m(n, n);
  std::uniform_int_distribution<long> dist(-k, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = Rational(dist(rng));
      m(j, i) = m(i, j);
    }
  }
  return m;
}

// det(x0 I - sum x_l G_l) for random symmetric integer G_l: hyperbolic in e1.
inline Poly random_determinantal(std::mt19937_64& rng, std::size_t nvars, std::size_t size) {
  std::vector<RationalMatrix> g;
  for (std::size_t l = 1; l < nvars; ++l) g.push_back(random_symmetric(rng, size));
  return oracle::to_poly(oracle::leibniz_pencil_det(g), nvars);
}

}  // namespace hyperdet::test
