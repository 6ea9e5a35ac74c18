#include "hyperdet/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperdet/error.hpp"

namespace hyperdet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NvarsMismatch: return "NvarsMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DirectionVanishes: return "DirectionVanishes";
    case ErrorKind::DegreeViolation: return "DegreeViolation";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::RoundingFailed: return "RoundingFailed";
    case ErrorKind::NotPD: return "NotPD";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::NoSymmetricLift: return "NoSymmetricLift";
    case ErrorKind::SingularSuspected: return "SingularSuspected";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty rational");
  if (s.front() == '+') s.erase(0, 1);
  auto valid = [](const std::string& part) {
    std::size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-') {
    throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  Integer d(den);
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational rationalize(double x, const Integer& max_denominator) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "cannot rationalize non-finite value");
  if (max_denominator < 1) throw Error(ErrorKind::InvalidArgument, "denominator bound must be >= 1");
  Rational exact(x);
  Integer p = exact.get_num();
  Integer q = exact.get_den();

  // Convergents h/k.
  Integer h_prev2 = 0, h_prev1 = 1;
  Integer k_prev2 = 1, k_prev1 = 0;
  while (q != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Integer h = a * h_prev1 + h_prev2;
    Integer k = a * k_prev1 + k_prev2;
    if (k > max_denominator) {
      // Largest admissible semiconvergent versus the last convergent.
      Integer s = (max_denominator - k_prev2) / k_prev1;
      Rational last(h_prev1, k_prev1);
      if (s > 0) {
        Rational semi(s * h_prev1 + h_prev2, s * k_prev1 + k_prev2);
        semi.canonicalize();
        last.canonicalize();
        if (abs(semi - exact) < abs(last - exact)) return semi;
      }
      last.canonicalize();
      return last;
    }
    h_prev2 = h_prev1;
    h_prev1 = h;
    k_prev2 = k_prev1;
    k_prev1 = k;
    Integer r = p - a * q;
    p = q;
    q = r;
  }
  Rational result(h_prev1, k_prev1);
  result.canonicalize();
  return result;
}

}  // namespace hyperdet
