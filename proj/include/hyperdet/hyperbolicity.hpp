#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperdet/parallel.hpp"
#include "hyperdet/poly.hpp"
#include "hyperdet/quotient.hpp"

namespace hyperdet {

inline constexpr std::size_t kDefaultNumSamples = 64;

// Number of distinct real roots (Sturm chain, exact).
std::size_t count_real_roots(const UniPoly& f);

// Every complex root is real, multiplicities allowed.
bool is_real_rooted(const UniPoly& f);

enum class HyperbolicityStatus { HyperbolicSampled, NotHyperbolic, SingularSuspected };

const char* to_string(HyperbolicityStatus s);

struct HyperbolicityVerdict {
  HyperbolicityStatus status = HyperbolicityStatus::HyperbolicSampled;
  std::optional<RationalVector> witness;
  std::size_t samples_used = 0;
};

// Signed unit vectors +u0, -u0, +u1, ... followed by seeded random points with
// coordinates in {-10..10}/{1..10}; the zero vector is never produced.
std::vector<RationalVector> sample_directions(std::size_t dim, std::size_t num_samples, std::uint64_t seed);

HyperbolicityVerdict check_hyperbolic_sampled(const Poly& h, const Direction& e,
                                              std::size_t num_samples = kDefaultNumSamples,
                                              std::uint64_t seed = 0,
                                              Execution exec = Execution::Parallel);

struct PdWitnessResult {
  bool passed = true;
  std::optional<RationalVector> witness;  // in R-coordinates x1..xn
  std::size_t samples_used = 0;
};

// Positive definiteness of the Bezoutian of dh/dx0 at sampled v != 0.
PdWitnessResult pd_witness_check(const QuotientContext& ctx, std::size_t num_samples = kDefaultNumSamples,
                                 std::uint64_t seed = 0, Execution exec = Execution::Parallel);

}  // namespace hyperdet
