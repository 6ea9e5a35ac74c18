#include "hyperdet/hyperbolicity.hpp"

#include <random>

namespace hyperdet {

namespace {

int sign_at_plus_infinity(const UniPoly& p) { return sgn(p.leading()); }

int sign_at_minus_infinity(const UniPoly& p) {
  int s = sgn(p.leading());
  return (p.degree() % 2 == 0) ? s : -s;
}

std::size_t variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

std::size_t count_real_roots(const UniPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "count_real_roots of the zero polynomial");
  if (f.degree() == 0) return 0;
  std::vector<UniPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    UniPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and tames coefficient growth.
    chain.push_back(-r * (1 / abs(r.leading())));
  }
  std::vector<int> plus, minus;
  for (const auto& p : chain) {
    plus.push_back(sign_at_plus_infinity(p));
    minus.push_back(sign_at_minus_infinity(p));
  }
  return variations(minus) - variations(plus);
}

bool is_real_rooted(const UniPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "is_real_rooted of the zero polynomial");
  if (f.degree() == 0) return true;
  UniPoly g = gcd(f, f.derivative());
  UniPoly squarefree = divmod(f, g).quotient;
  return count_real_roots(squarefree) == static_cast<std::size_t>(squarefree.degree());
}

const char* to_string(HyperbolicityStatus s) {
  switch (s) {
    case HyperbolicityStatus::HyperbolicSampled: return "HyperbolicSampled";
    case HyperbolicityStatus::NotHyperbolic: return "NotHyperbolic";
    case HyperbolicityStatus::SingularSuspected: return "SingularSuspected";
  }
  return "Unknown";
}

std::vector<RationalVector> sample_directions(std::size_t dim, std::size_t num_samples, std::uint64_t seed) {
  constexpr int K = 10;
  std::vector<RationalVector> out;
  out.reserve(num_samples);
  for (std::size_t i = 0; i < dim && out.size() < num_samples; ++i) {
    for (int s : {1, -1}) {
      if (out.size() == num_samples) break;
      RationalVector v(dim, Rational(0));
      v[i] = s;
      out.push_back(std::move(v));
    }
  }
  // Raw engine output keeps the sequence identical across standard libraries.
  std::mt19937_64 rng(seed);
  while (out.size() < num_samples) {
    RationalVector v(dim);
    bool nonzero = false;
    for (std::size_t i = 0; i < dim; ++i) {
      long num = static_cast<long>(rng() % (2 * K + 1)) - K;
      long den = static_cast<long>(rng() % K) + 1;
      v[i] = Rational(num, den);
      v[i].canonicalize();
      nonzero = nonzero || num != 0;
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

HyperbolicityVerdict check_hyperbolic_sampled(const Poly& h, const Direction& e, std::size_t num_samples,
                                              std::uint64_t seed, Execution exec) {
  if (e.size() != h.nvars()) throw Error(ErrorKind::DimensionMismatch, "direction size differs from nvars");
  if (h.evaluate(e.coords()) == 0) throw Error(ErrorKind::DirectionVanishes, "h(e) = 0");
  const auto samples = sample_directions(h.nvars(), num_samples, seed);
  auto fail = first_failure(exec, samples.size(), [&](std::size_t i) {
    return is_real_rooted(substitute_line(h, e, samples[i]));
  });
  HyperbolicityVerdict verdict;
  if (fail) {
    verdict.status = HyperbolicityStatus::NotHyperbolic;
    verdict.witness = samples[*fail];
    verdict.samples_used = *fail + 1;
  } else {
    verdict.samples_used = samples.size();
  }
  return verdict;
}

PdWitnessResult pd_witness_check(const QuotientContext& ctx, std::size_t num_samples, std::uint64_t seed,
                                 Execution exec) {
  const BezoutianForm omega0 = bezoutian_of(ctx, partial_derivative(ctx.h_monic(), 0));
  const std::size_t n = ctx.num_r_vars();
  PdWitnessResult result;
  if (n == 0) {
    // No R-variables: the form is a constant matrix.
    result.passed = is_positive_definite(evaluate_form(omega0, {}));
    result.samples_used = 1;
    if (!result.passed) result.witness = RationalVector{};
    return result;
  }
  const auto samples = sample_directions(n, num_samples, seed);
  auto fail = first_failure(exec, samples.size(), [&](std::size_t i) {
    return is_positive_definite(evaluate_form(omega0, samples[i]));
  });
  if (fail) {
    result.passed = false;
    result.witness = samples[*fail];
    result.samples_used = *fail + 1;
  } else {
    result.samples_used = samples.size();
  }
  return result;
}

}  // namespace hyperdet
