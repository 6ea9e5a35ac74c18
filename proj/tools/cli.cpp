#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "hyperdet/json_io.hpp"

namespace hyperdet::cli {

namespace {

// Input problems that are not mathematical refusals.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NvarsMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ZeroPolynomial:
      return kExitInputError;
    default:
      return kExitRefused;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Direction direction_of(const RunConfig& c) {
  if (c.e.empty()) throw InputError("--e is required");
  return Direction(parse_rational_list(c.e));
}

Poly poly_of(const RunConfig& c, std::size_t nvars) {
  if (c.poly && c.input_path) throw InputError("give either --poly or --input, not both");
  if (!c.poly && !c.input_path) throw InputError("--poly or --input is required");
  Poly h = c.poly ? parse_poly(*c.poly, nvars) : parse_poly(read_file(*c.input_path), nvars);
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "h is the zero polynomial");
  if (!h.is_homogeneous()) throw InputError("h must be homogeneous");
  return h;
}

std::string vector_text(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string matrix_text(const RationalMatrix& m, const std::string& indent) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += indent + "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]\n";
  }
  return s;
}

std::string poly_matrix_text(const PolyMatrix& m, const std::string& indent) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += indent + "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_string();
    s += "]\n";
  }
  return s;
}

std::string report_text(const VerifyReport& r) {
  std::string s;
  for (const auto& c : r.checks) {
    s += std::string(c.passed ? "  PASS " : "  FAIL ") + c.name;
    if (!c.detail.empty()) s += ": " + c.detail;
    s += "\n";
  }
  s += std::string("verified: ") + (r.ok ? "yes" : "no") + "\n";
  return s;
}

struct Output {
  std::string text;
  int code = kExitOk;
};

Output run_check(const RunConfig& c) {
  const Direction e = direction_of(c);
  const Poly h = poly_of(c, e.size());
  HyperbolicityVerdict verdict = check_hyperbolic_sampled(h, e, c.num_samples, c.seed);
  std::optional<PdWitnessResult> pd;
  if (verdict.status == HyperbolicityStatus::HyperbolicSampled && h.degree() > 0 && h.nvars() > 0) {
    const NormalizedPoly norm = normalize_direction(h, e);
    pd = pd_witness_check(QuotientContext(norm.poly), c.num_samples, c.seed);
    if (!pd->passed) verdict.status = HyperbolicityStatus::SingularSuspected;
  }
  Output o;
  o.code = verdict.status == HyperbolicityStatus::HyperbolicSampled ? kExitOk : kExitRefused;
  if (c.format == Format::Json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "check";
    j["h"] = h.to_string();
    j["e"] = rational_vector_json(e.coords());
    j["hyperbolicity"] = to_json(verdict);
    j["pd_witness"] = pd ? to_json(*pd) : Json(nullptr);
    o.text = j.dump(2) + "\n";
  } else {
    o.text = "h: " + h.to_string() + "\ne: " + vector_text(e.coords()) + "\nstatus: " + to_string(verdict.status) +
             " (" + std::to_string(verdict.samples_used) + " line samples)\n";
    if (verdict.witness) o.text += "witness v: " + vector_text(*verdict.witness) + "\n";
    if (pd) {
      o.text += std::string("pd witness check: ") + (pd->passed ? "passed" : "failed") + " (" +
                std::to_string(pd->samples_used) + " samples)\n";
      if (pd->witness) o.text += "pd witness v: " + vector_text(*pd->witness) + "\n";
    }
  }
  return o;
}

Output run_bezoutian(const RunConfig& c) {
  const Direction e = direction_of(c);
  const Poly h = poly_of(c, e.size());
  const NormalizedPoly norm = normalize_direction(h, e);
  const QuotientContext ctx(norm.poly);
  const BezoutianForm delta = delta_h(ctx);
  const BezoutianForm omega0 = bezoutian_of(ctx, partial_derivative(ctx.h_monic(), 0));
  Output o;
  if (c.format == Format::Json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "bezoutian";
    j["h"] = h.to_string();
    j["e"] = rational_vector_json(e.coords());
    j["h_monic"] = ctx.h_monic().to_string();
    j["delta_h"] = to_json(delta);
    j["omega0"] = to_json(omega0);
    o.text = j.dump(2) + "\n";
  } else {
    o.text = "h_monic: " + ctx.h_monic().to_string() + "\ndelta_h (degree " + std::to_string(delta.total_degree) +
             "):\n" + poly_matrix_text(delta.entries, "  ") + "omega0 = B(dh/dx0) (degree " +
             std::to_string(omega0.total_degree) + "):\n" + poly_matrix_text(omega0.entries, "  ");
  }
  return o;
}

Output run_certify(const RunConfig& c) {
  const Direction e = direction_of(c);
  const Poly h = poly_of(c, e.size());
  CertifyOptions options;
  options.sos.ell_max = c.lmax;
  options.sos.sdp_tol = c.sdp_tol;
  try {
    options.sos.denominator_bound = Integer(c.denominator_bound);
  } catch (const std::invalid_argument&) {
    throw InputError("--denominator-bound must be an integer");
  }
  if (options.sos.denominator_bound < 1) throw InputError("--denominator-bound must be positive");
  options.num_samples = c.num_samples;
  options.seed = c.seed;
  const DetRepCertificate cert = certify(h, e, options);
  const VerifyReport report = verify_certificate(cert);
  if (!report.ok) throw std::logic_error("certificate failed self-verification:\n" + report_text(report));
  Output o;
  if (c.format == Format::Json) {
    o.text = to_json(cert).dump(2) + "\n";
  } else {
    o.text = "h: " + cert.h.to_string() + "\ne: " + vector_text(cert.e.coords()) + "\nN: " + std::to_string(cert.N) +
             "\nmultiplier: " + cert.q_multiplier.to_string() + "\ncofactor: " + cert.cofactor.to_string() +
             "\nD: " + vector_text(cert.D) + "\n";
    for (std::size_t l = 0; l < cert.G.size(); ++l) {
      o.text += "G" + std::to_string(l + 1) + ":\n" + matrix_text(cert.G[l], "  ");
    }
    o.text += report_text(report);
  }
  return o;
}

Output run_verify(const RunConfig& c) {
  if (!c.cert_path) throw InputError("--cert is required");
  const DetRepCertificate cert = parse_certificate(read_file(*c.cert_path));
  const VerifyReport report = verify_certificate(cert);
  Output o;
  o.code = report.ok ? kExitOk : kExitRefused;
  if (c.format == Format::Json) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "verify";
    j["report"] = to_json(report);
    o.text = j.dump(2) + "\n";
  } else {
    o.text = report_text(report);
  }
  return o;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Output o;
  try {
    switch (config.command) {
      case Command::Check: o = run_check(config); break;
      case Command::Bezoutian: o = run_bezoutian(config); break;
      case Command::Certify: o = run_certify(config); break;
      case Command::Verify: o = run_verify(config); break;
    }
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.detail() << "\n";
    return kExitInputError;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code_for(ex.kind());
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
  if (config.output_path) {
    std::ofstream f(*config.output_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << *config.output_path << "'\n";
      return kExitInputError;
    }
    f << o.text;
  } else {
    out << o.text;
  }
  return o.code;
}

int main_with_args(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact determinantal certificates for hyperbolic polynomials"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";

  auto add_poly_options = [&](CLI::App* sub) {
    sub->add_option("--poly", config.poly, "polynomial, e.g. \"x0^2 - x1^2 - x2^2\"");
    sub->add_option("--input", config.input_path, "file containing the polynomial");
    sub->add_option("--e", config.e, "direction as comma-separated rationals")->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", config.output_path, "write to this file instead of stdout");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", config.num_samples, "number of sampled directions");
    sub->add_option("--seed", config.seed, "sampling seed");
  };

  CLI::App* check = app.add_subcommand("check", "sampled hyperbolicity and Bezoutian definiteness");
  add_poly_options(check);
  add_sampling(check);
  add_common(check);

  CLI::App* bez = app.add_subcommand("bezoutian", "delta_h and the Bezoutian of dh/dx0");
  add_poly_options(bez);
  add_common(bez);

  CLI::App* cert = app.add_subcommand("certify", "build and self-verify a determinantal certificate");
  add_poly_options(cert);
  add_sampling(cert);
  cert->add_option("--lmax", config.lmax, "largest multiplier exponent");
  cert->add_option("--sdp-tol", config.sdp_tol, "interior-point tolerance");
  cert->add_option("--denominator-bound", config.denominator_bound, "rounding denominator bound");
  add_common(cert);

  CLI::App* ver = app.add_subcommand("verify", "replay a certificate exactly");
  ver->add_option("--cert", config.cert_path, "certificate JSON file")->required();
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (*check) config.command = Command::Check;
  if (*bez) config.command = Command::Bezoutian;
  if (*cert) config.command = Command::Certify;
  if (*ver) config.command = Command::Verify;
  config.format = format == "text" ? Format::Text : Format::Json;
  return run(config, out, err);
}

}  // namespace hyperdet::cli
