#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "hyperdet/hyperbolicity.hpp"
#include "hyperdet/linalg.hpp"
#include "hyperdet/sos.hpp"

namespace hyperdet {

// D = diag(weights) and G(x) = sum_l x_l G_l with D G_l symmetric.
struct SymmetricLift {
  std::vector<Rational> d;
  std::vector<RationalMatrix> g;  // one per R-variable x1..xn
};

// Solves, over Q, the intertwining x0 * v_j = sum_i G(x)_ij v_i in M for the
// generators v_i = d_i u_i together with D G(x) = G(x)^T D. Throws
// NoSymmetricLift when inconsistent.
SymmetricLift solve_symmetric_lift(const QuotientContext& ctx, const SosDecomposition& dec);

// Pencils up to this size use fraction-free elimination on the polynomial
// matrix; larger ones use evaluation and interpolation.
inline constexpr std::size_t kBareissMaxSize = 8;

// det(x0 I - sum_l x_l G_l) in the variables x0..xn.
Poly pencil_determinant(const std::vector<RationalMatrix>& g, Execution exec = Execution::Parallel);
Poly pencil_determinant_bareiss(const std::vector<RationalMatrix>& g);
Poly pencil_determinant_interpolated(const std::vector<RationalMatrix>& g, Execution exec);

// Characteristic polynomial det(t I - A), coefficients by increasing power.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& a);

// q' with detp = q' * h_monic.
Poly extract_cofactor(const Poly& detp, const Poly& h_monic);

struct DetRepCertificate {
  Poly h;
  Direction e = Direction::first_unit(1);
  CoordinateChange T;
  std::size_t N = 0;
  std::vector<Rational> D;
  std::vector<RationalMatrix> G;
  Poly cofactor;
  Poly q_multiplier;
  std::optional<std::vector<Eigen::MatrixXd>> float_pencil;
};

struct CertifyOptions {
  SosOptions sos;
  std::size_t num_samples = kDefaultNumSamples;
  std::uint64_t seed = 0;
  bool float_pencil = true;
};

struct CertifyTrace {
  std::vector<SosAttempt> sos_attempts;
  std::string stage;  // last stage entered
};

// Full pipeline; failures are rethrown with the failing stage in the message.
DetRepCertificate certify(const Poly& h, const Direction& e, const CertifyOptions& options = {},
                          CertifyTrace* trace = nullptr);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  bool ok = false;
  std::vector<VerifyCheck> checks;
};

// Exact replay: (a) D positive diagonal, (b) D G_i symmetric, (c) pencil
// determinant = cofactor * h_monic, (d) T e = (1,0,...,0) so the pencil at e is
// I, (e) the multiplier is a power of x1^2 + ... + xn^2, (f) when present the
// float pencil matches D^(1/2) G D^(-1/2). No SDP or sampling.
inline constexpr double kFloatPencilTolerance = 1e-9;

VerifyReport verify_certificate(const DetRepCertificate& cert);

// h o T^{-1} / h(e).
Poly normalized_monic(const Poly& h, const Direction& e, const CoordinateChange& t);

// A_i = D^{1/2} G_i D^{-1/2}.
std::vector<Eigen::MatrixXd> symmetric_float_pencil(const std::vector<Rational>& d,
                                                    const std::vector<RationalMatrix>& g);

}  // namespace hyperdet
