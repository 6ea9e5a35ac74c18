#include "hyperdet/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace hyperdet {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, unsigned power) {
  std::vector<unsigned> e(nvars, 0);
  e.at(var) = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<unsigned> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  std::vector<unsigned> e(other.exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::with_exponent(std::size_t var, unsigned power) const {
  std::vector<unsigned> e(exps_);
  e.at(var) = power;
  return Monomial(std::move(e));
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i);
    if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // Lex with x0 most significant.
  return a.exponents() < b.exponents();
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1, Rational(0));
  v[power] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational UniPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> v(coeffs_);
  for (auto& c : v) c = -c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const Rational& c) const {
  std::vector<Rational> v(coeffs_);
  for (auto& x : v) x *= c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return *this * inv;
}

std::string UniPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << var;
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

UniDivision divmod(const UniPoly& f, const UniPoly& g) {
  if (g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  std::vector<Rational> r(f.coeffs());
  int dg = g.degree();
  if (f.degree() < dg) return {UniPoly{}, f};
  std::vector<Rational> q(static_cast<std::size_t>(f.degree() - dg + 1), Rational(0));
  Rational inv = 1 / g.leading();
  for (int i = f.degree(); i >= dg; --i) {
    Rational c = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - dg)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) {
      r[static_cast<std::size_t>(i - dg + j)] -= c * g.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(dg));
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(const UniPoly& f, const UniPoly& g) {
  UniPoly a = f, b = g;
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------------- Direction

Direction::Direction(RationalVector coords) : coords_(std::move(coords)) {
  if (coords_.empty() ||
      std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; })) {
    throw Error(ErrorKind::InvalidArgument, "direction must be a nonzero vector");
  }
}

Direction Direction::first_unit(std::size_t nvars) {
  RationalVector v(nvars, Rational(0));
  v.at(0) = 1;
  return Direction(std::move(v));
}

// ---------------------------------------------------------------- CoordinateChange

CoordinateChange CoordinateChange::identity(std::size_t n) {
  CoordinateChange m{n, std::vector<Rational>(n * n, Rational(0))};
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector CoordinateChange::apply(std::span<const Rational> v) const {
  if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "coordinate change applied to wrong size");
  RationalVector out(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

CoordinateChange CoordinateChange::inverse() const {
  CoordinateChange a = *this;
  CoordinateChange inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::InvalidArgument, "singular coordinate change");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    Rational p = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::size_t nvars, const Rational& constant) : nvars_(nvars) {
  if (constant != 0) terms_.emplace(Monomial(nvars), constant);
}

Poly Poly::variable(std::size_t nvars, std::size_t var) {
  return term(Monomial::unit(nvars, var), Rational(1));
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

unsigned Poly::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return is_homogeneous_of(degree());
}

bool Poly::is_homogeneous_of(unsigned deg) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [deg](const auto& t) { return t.first.degree() == deg; });
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_) throw Error(ErrorKind::NvarsMismatch, "monomial has wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_same_nvars(const Poly& o) const {
  if (nvars_ != o.nvars_) {
    throw Error(ErrorKind::NvarsMismatch, "polynomials in " + std::to_string(nvars_) + " and " +
                                              std::to_string(o.nvars_) + " variables");
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_nvars(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_nvars(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same_nvars(o);
  Poly r(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  if (c == 0) return Poly(nvars_);
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(nvars_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "evaluation point has wrong size");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_ && t != 0; ++i) {
      for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.degree() == 0) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += m.to_string();
    } else {
      out += mag.get_str() + '*' + m.to_string();
    }
  }
  return out;
}

Poly mul(const Poly& a, const Poly& b) { return a * b; }

Poly exact_divide(const Poly& f, const Poly& g) {
  if (f.nvars() != g.nvars()) throw Error(ErrorKind::NvarsMismatch, "exact_divide operands differ in nvars");
  if (g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  const Monomial& lg = g.leading_monomial();
  Rational inv = 1 / g.leading_coeff();
  Poly q(f.nvars());
  Poly r = f;
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lg.divides(lr)) {
      throw Error(ErrorKind::NotDivisible, "(" + f.to_string() + ") is not divisible by (" +
                                               g.to_string() + ")");
    }
    Poly step = Poly::term(lg.quotient_of(lr), r.leading_coeff() * inv);
    q += step;
    r -= step * g;
  }
  return q;
}

Poly partial_derivative(const Poly& p, std::size_t var) {
  if (var >= p.nvars()) throw Error(ErrorKind::DimensionMismatch, "derivative variable out of range");
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    r.add_term(m.with_exponent(var, m[var] - 1), c * static_cast<long>(m[var]));
  }
  return r;
}

Rational evaluate(const Poly& p, std::span<const Rational> point) { return p.evaluate(point); }

UniPoly substitute_line(const Poly& h, const Direction& e, std::span<const Rational> v) {
  const std::size_t n = h.nvars();
  if (e.size() != n || v.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "line data does not match the number of variables");
  }
  // powers[i][k] = (t*e_i + v_i)^k
  std::vector<std::vector<UniPoly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    powers[i].push_back(UniPoly({Rational(1)}));
    UniPoly lin({v[i], e[i]});
    for (unsigned k = 1; k <= h.degree_in(i); ++k) powers[i].push_back(powers[i].back() * lin);
  }
  UniPoly acc;
  for (const auto& [m, c] : h.terms()) {
    UniPoly t({c});
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] > 0) t = t * powers[i][m[i]];
    }
    acc = acc + t;
  }
  return acc;
}

Poly linear_substitute(const Poly& p, const CoordinateChange& m) {
  const std::size_t n = p.nvars();
  if (m.n != n) throw Error(ErrorKind::DimensionMismatch, "coordinate change size differs from nvars");
  std::vector<std::vector<Poly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly lin(n);
    for (std::size_t j = 0; j < n; ++j) lin.add_term(Monomial::unit(n, j), m(i, j));
    powers[i].push_back(Poly(n, Rational(1)));
    for (unsigned k = 1; k <= p.degree_in(i); ++k) powers[i].push_back(powers[i].back() * lin);
  }
  Poly acc(n);
  for (const auto& [mono, c] : p.terms()) {
    Poly t(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (mono[i] > 0) t = t * powers[i][mono[i]];
    }
    acc += t;
  }
  return acc;
}

NormalizedPoly normalize_direction(const Poly& h, const Direction& e) {
  const std::size_t n = h.nvars();
  if (e.size() != n) throw Error(ErrorKind::DimensionMismatch, "direction size differs from nvars");
  if (h.evaluate(e.coords()) == 0) {
    throw Error(ErrorKind::DirectionVanishes, "h vanishes at the direction e");
  }
  std::size_t pivot = 0;
  while (e[pivot] == 0) ++pivot;
  CoordinateChange tinv{n, std::vector<Rational>(n * n, Rational(0))};
  for (std::size_t i = 0; i < n; ++i) tinv(i, 0) = e[i];
  std::size_t col = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == pivot) continue;
    // w = e_pivot * u_i - e_i * u_pivot, orthogonal to e.
    tinv(i, col) = e[pivot];
    tinv(pivot, col) = -e[i];
    ++col;
  }
  CoordinateChange t = tinv.inverse();
  return {linear_substitute(h, tinv), std::move(t), std::move(tinv)};
}

std::vector<Poly> coefficients_in_x0(const Poly& p) {
  std::vector<Poly> out(p.degree_in(0) + 1, Poly(p.nvars()));
  for (const auto& [m, c] : p.terms()) out[m[0]].add_term(m.with_exponent(0, 0), c);
  return out;
}

Poly sum_of_squares_form(std::size_t nvars) {
  Poly q(nvars);
  for (std::size_t i = 1; i < nvars; ++i) q.add_term(Monomial::unit(nvars, i, 2), Rational(1));
  return q;
}

namespace {

void enumerate_monomials(std::vector<unsigned>& exps, std::size_t var, unsigned remaining,
                         std::vector<Monomial>& out) {
  if (var + 1 == exps.size()) {
    exps[var] = remaining;
    out.emplace_back(exps);
    exps[var] = 0;
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    exps[var] = k;
    enumerate_monomials(exps, var + 1, remaining - k, out);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::size_t first_var, unsigned deg) {
  std::vector<Monomial> out;
  if (first_var >= nvars) {
    if (deg == 0) out.emplace_back(nvars);
    return out;
  }
  std::vector<unsigned> exps(nvars, 0);
  enumerate_monomials(exps, first_var, deg, out);
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Poly parse(std::size_t nvars) {
    struct RawTerm {
      Rational coeff;
      std::vector<std::pair<std::size_t, unsigned>> factors;
    };
    std::vector<RawTerm> raw;
    std::size_t max_var = 0;
    bool any_var = false;

    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sgn = 1;
      if (peek() == '+' || peek() == '-') {
        sgn = peek() == '-' ? -1 : 1;
        advance();
        skip_ws();
      } else if (!first) {
        fail(std::string("expected '+' or '-', found '") + peek() + "'");
      }
      first = false;
      RawTerm term{Rational(sgn), {}};
      if (at_end()) fail("expected a term");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        term.coeff *= parse_coeff();
        skip_ws();
        if (!at_end() && peek() == '*') {
          advance();
          skip_ws();
          parse_mono(term.factors);
        }
      } else if (peek() == 'x') {
        parse_mono(term.factors);
      } else {
        fail(std::string("unexpected character '") + peek() + "'");
      }
      for (const auto& f : term.factors) {
        max_var = std::max(max_var, f.first);
        any_var = true;
      }
      raw.push_back(std::move(term));
      skip_ws();
    }

    std::size_t n = nvars;
    if (n == 0) n = any_var ? max_var + 1 : 1;
    if (any_var && max_var >= n) {
      throw ParseError(1, 1, "variable x" + std::to_string(max_var) + " exceeds " +
                                 std::to_string(n) + " variables");
    }
    Poly p(n);
    for (const auto& t : raw) {
      std::vector<unsigned> exps(n, 0);
      for (const auto& [var, e] : t.factors) exps[var] += e;
      p.add_term(Monomial(std::move(exps)), t.coeff);
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  std::string digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s.push_back(peek());
      advance();
    }
    if (s.empty()) fail("expected digits");
    return s;
  }

  Rational parse_coeff() {
    std::string num = digits();
    skip_ws();
    if (!at_end() && peek() == '/') {
      advance();
      skip_ws();
      std::size_t line = line_, col = col_;
      std::string den = digits();
      Integer d(den);
      if (d == 0) throw ParseError(line, col, "zero denominator");
      Rational q(Integer(num), d);
      q.canonicalize();
      return q;
    }
    return Rational(Integer(num));
  }

  void parse_mono(std::vector<std::pair<std::size_t, unsigned>>& factors) {
    while (true) {
      skip_ws();
      if (at_end() || peek() != 'x') fail("expected a variable 'xI'");
      advance();
      std::size_t var = std::stoul(digits());
      unsigned e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        advance();
        skip_ws();
        e = static_cast<unsigned>(std::stoul(digits()));
      }
      factors.emplace_back(var, e);
      skip_ws();
      if (!at_end() && peek() == '*') {
        advance();
        continue;
      }
      return;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Poly parse_poly(std::string_view text, std::size_t nvars) { return PolyParser(text).parse(nvars); }

RationalVector parse_rational_list(std::string_view text) {
  RationalVector out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start);
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace hyperdet
