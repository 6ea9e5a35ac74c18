#include <doctest.h>

#include "hyperdet/detrep.hpp"
#include "support.hpp"

using namespace hyperdet;
using namespace hyperdet::test;

namespace {

const char* kLorentz = "x0^2 - x1^2 - x2^2";

RationalMatrix rm(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 4);
  }
  return m;
}

const VerifyCheck* find_check(const VerifyReport& r, const std::string& prefix) {
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("solve_symmetric_lift examples") {
  const QuotientContext ctx(P(kLorentz));
  const SosDecomposition dec = find_nice_bezoutian(ctx);
  const SymmetricLift lift = solve_symmetric_lift(ctx, dec);
  CHECK(lift.d == std::vector<Rational>{2, 2, 2});
  REQUIRE(lift.g.size() == 2);
  CHECK(lift.g[0] == rm({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}));
  CHECK(lift.g[1] == rm({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}));

  const QuotientContext lin(P("x0 - x1"));
  const SymmetricLift l1 = solve_symmetric_lift(lin, find_nice_bezoutian(lin));
  CHECK(l1.d == std::vector<Rational>{1});
  CHECK(l1.g == std::vector<RationalMatrix>{rm({{1}})});

  // Duplicate generator: x1 * 1 is missing from the span, so x0 * x0 cannot be
  // written through the generators.
  SosDecomposition fake = dec;
  fake.vectors[1] = fake.vectors[0];
  try {
    solve_symmetric_lift(ctx, fake);
    FAIL("expected NoSymmetricLift");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoSymmetricLift);
  }
}

TEST_CASE("pencil_determinant examples") {
  const std::vector<RationalMatrix> lorentz{rm({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}),
                                            rm({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}})};
  CHECK(pencil_determinant(lorentz) == P("x0^3 - x0*x1^2 - x0*x2^2"));
  CHECK(pencil_determinant({rm({{1}})}) == P("x0 - x1"));
  CHECK(pencil_determinant({RationalMatrix(2, 2)}) == P("x0^2", 2));
  CHECK(pencil_determinant_interpolated(lorentz, Execution::Serial) == P("x0^3 - x0*x1^2 - x0*x2^2"));
}

TEST_CASE("characteristic polynomial of a companion matrix") {
  // Companion of t^3 - 2t^2 + 3t - 5.
  const RationalMatrix c = rm({{0, 0, 5}, {1, 0, -3}, {0, 1, 2}});
  CHECK(characteristic_polynomial(c) == std::vector<Rational>{-5, 3, -2, 1});
}

TEST_CASE("property: pencil determinant agrees with the Leibniz oracle") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const std::size_t nv = 2 + rng() % 3;
    std::vector<RationalMatrix> g;
    for (std::size_t l = 1; l < nv; ++l) g.push_back(random_matrix(rng, n));
    const Poly expected = oracle::to_poly(oracle::leibniz_pencil_det(g), nv);
    CHECK(pencil_determinant_bareiss(g) == expected);
    CHECK(pencil_determinant_interpolated(g, Execution::Serial) == expected);
    CHECK(pencil_determinant(g) == expected);
  }
}

TEST_CASE("property: interpolated determinant matches elimination beyond the Bareiss cutoff") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t n = kBareissMaxSize + 1 + trial;
    std::vector<RationalMatrix> g{random_symmetric(rng, n, 2), random_symmetric(rng, n, 2)};
    const Poly serial = pencil_determinant_interpolated(g, Execution::Serial);
    CHECK(serial == pencil_determinant_bareiss(g));
    CHECK(pencil_determinant_interpolated(g, Execution::Parallel) == serial);
    CHECK(pencil_determinant(g) == serial);
  }
}

TEST_CASE("extract_cofactor examples") {
  CHECK(extract_cofactor(P("x0^3 - x0*x1^2 - x0*x2^2"), P(kLorentz)) == P("x0", 3));
  CHECK(extract_cofactor(P(kLorentz), P(kLorentz)) == Poly(3, Rational(1)));
  try {
    extract_cofactor(P("x0^2", 2), P("x0^2 - x1^2"));
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
}

TEST_CASE("certify examples") {
  const DetRepCertificate cert = certify(P(kLorentz), Direction::first_unit(3));
  CHECK(cert.N == 3);
  CHECK(cert.D == std::vector<Rational>{2, 2, 2});
  CHECK(cert.cofactor == P("x0", 3));
  CHECK(cert.q_multiplier == Poly(3, Rational(1)));
  CHECK(cert.T == CoordinateChange::identity(3));
  CHECK(pencil_determinant(cert.G) == P("x0^3 - x0*x1^2 - x0*x2^2"));
  CHECK(verify_certificate(cert).ok);

  const DetRepCertificate lin = certify(P("x0 - x1"), Direction::first_unit(2));
  CHECK(lin.N == 1);
  CHECK(lin.cofactor == Poly(2, Rational(1)));
  CHECK(verify_certificate(lin).ok);

  CertifyTrace trace;
  try {
    certify(P("x0^2 + x1^2"), Direction::first_unit(2), {}, &trace);
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(trace.stage == "pd_witness_check");
    CHECK(std::string(e.what()).find("pd_witness_check") != std::string::npos);
  }
}

TEST_CASE("certify with a non-coordinate direction") {
  // x0*x1 is hyperbolic in direction (1,1).
  const Direction e({rat(1), rat(1)});
  const DetRepCertificate cert = certify(P("x0*x1"), e);
  const VerifyReport r = verify_certificate(cert);
  CHECK(r.ok);
  CHECK(cert.T.apply(e.coords()) == RationalVector{rat(1), rat(0)});
}

TEST_CASE("verify_certificate examples") {
  const DetRepCertificate cert = certify(P(kLorentz), Direction::first_unit(3));

  DetRepCertificate perturbed = cert;
  perturbed.G[0](0, 2) += 1;
  const VerifyReport rp = verify_certificate(perturbed);
  CHECK_FALSE(rp.ok);
  REQUIRE(find_check(rp, "(c)"));
  CHECK_FALSE(find_check(rp, "(c)")->passed);

  DetRepCertificate negated = cert;
  negated.D[1] = -negated.D[1];
  const VerifyReport rn = verify_certificate(negated);
  CHECK_FALSE(rn.ok);
  REQUIRE(find_check(rn, "(a)"));
  CHECK_FALSE(find_check(rn, "(a)")->passed);

  DetRepCertificate bad_shape = cert;
  bad_shape.D.pop_back();
  CHECK_FALSE(verify_certificate(bad_shape).ok);

  DetRepCertificate bad_mult = cert;
  bad_mult.q_multiplier = P("x1^2", 3);
  CHECK_FALSE(verify_certificate(bad_mult).ok);
}

TEST_CASE("property: certificates on determinantal inputs verify, are symmetric and have hyperbolic cofactors") {
  // Seed chosen so the random pencils give smooth hypersurfaces.
  std::mt19937_64 rng(64);
  std::vector<Poly> corpus{P(kLorentz), P("x0^3 - x0*x1^2 - x0*x2^2"), P("x0^2 - x1^2 - 2*x2^2 - 3*x3^2")};
  for (int i = 0; i < 3; ++i) corpus.push_back(random_determinantal(rng, 3, 2 + i % 2));
  for (const auto& h : corpus) {
    const Direction e = Direction::first_unit(h.nvars());
    const DetRepCertificate cert = certify(h, e);
    CHECK(verify_certificate(cert).ok);
    CHECK(extract_cofactor(pencil_determinant(cert.G), normalized_monic(h, e, cert.T)) == cert.cofactor);
    CHECK(check_hyperbolic_sampled(cert.cofactor, e).status == HyperbolicityStatus::HyperbolicSampled);
    REQUIRE(cert.float_pencil);
    for (const auto& a : *cert.float_pencil) CHECK((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
