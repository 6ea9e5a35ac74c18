#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperdet/detrep.hpp"

namespace hyperdet::cli {

enum class Command { Check, Bezoutian, Certify, Verify };
enum class Format { Json, Text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefused = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  Command command = Command::Check;
  std::optional<std::string> poly;        // inline polynomial
  std::optional<std::string> input_path;  // file holding the polynomial
  std::optional<std::string> cert_path;   // verify only
  std::string e;                          // comma-separated rationals
  unsigned lmax = SosOptions{}.ell_max;
  double sdp_tol = kDefaultSdpTol;
  std::string denominator_bound = "4294967296";
  std::size_t num_samples = kDefaultNumSamples;
  std::uint64_t seed = 0;
  Format format = Format::Json;
  std::optional<std::string> output_path;
};

// Exit code: 0 success, 1 mathematical refusal, 2 input error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a config and runs it.
int main_with_args(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hyperdet::cli
