#include "hyperdet/quotient.hpp"

#include <algorithm>

namespace hyperdet {

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "polynomial matrix shape mismatch");
  const std::size_t nv = data_.empty() ? (o.data_.empty() ? 0 : o.data_[0].nvars()) : data_[0].nvars();
  PolyMatrix r(rows_, o.cols_, nv);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
      }
    }
  }
  return r;
}

PolyMatrix PolyMatrix::operator*(const Poly& scalar) const {
  PolyMatrix r = *this;
  for (auto& e : r.data_) e = e * scalar;
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(cols_, rows_, data_.empty() ? 0 : data_[0].nvars());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

QuotientContext::QuotientContext(const Poly& h) {
  if (h.nvars() < 1) throw Error(ErrorKind::InvalidArgument, "polynomial without variables");
  if (!h.is_homogeneous() || h.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "quotient context needs a nonzero homogeneous polynomial");
  }
  d_ = h.degree();
  if (d_ == 0) throw Error(ErrorKind::InvalidArgument, "quotient context needs positive degree");
  scale_ = h.coeff(Monomial::unit(h.nvars(), 0, static_cast<unsigned>(d_)));
  if (scale_ == 0) throw Error(ErrorKind::DirectionVanishes, "h(1,0,...,0) = 0");
  h_ = h * (1 / scale_);
  auto coeffs = coefficients_in_x0(h_);
  lower_.assign(coeffs.begin(), coeffs.begin() + static_cast<long>(d_));
}

bool QuotientElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Poly& p) { return p.is_zero(); });
}

namespace {

// rows[a] += ... : replaces x0^a for a >= d using h. `rows` is indexed by x0
// power; each entry is an R-polynomial.
void reduce_powers(const QuotientContext& ctx, std::vector<Poly>& rows) {
  const std::size_t d = ctx.degree();
  for (std::size_t a = rows.size(); a-- > d;) {
    if (rows[a].is_zero()) continue;
    Poly top = std::move(rows[a]);
    rows[a] = Poly(ctx.nvars());
    for (std::size_t j = 0; j < d; ++j) {
      if (!ctx.lower(j).is_zero()) rows[a - d + j] -= ctx.lower(j) * top;
    }
  }
  rows.resize(d, Poly(ctx.nvars()));
}

}  // namespace

QuotientElement reduce_mod_h(const QuotientContext& ctx, const Poly& p) {
  if (p.nvars() != ctx.nvars()) throw Error(ErrorKind::NvarsMismatch, "reduce_mod_h: nvars mismatch");
  std::vector<Poly> rows = coefficients_in_x0(p);
  if (rows.size() < ctx.degree()) rows.resize(ctx.degree(), Poly(ctx.nvars()));
  reduce_powers(ctx, rows);
  return QuotientElement{std::move(rows)};
}

QuotientElement multiply_by_x0(const QuotientContext& ctx, const QuotientElement& z) {
  std::vector<Poly> rows(ctx.degree() + 1, Poly(ctx.nvars()));
  for (std::size_t i = 0; i < z.coeffs.size(); ++i) rows[i + 1] = z.coeffs[i];
  reduce_powers(ctx, rows);
  return QuotientElement{std::move(rows)};
}

PolyMatrix mult_x0_matrix(const QuotientContext& ctx) {
  const std::size_t d = ctx.degree();
  PolyMatrix f(d, d, ctx.nvars());
  for (std::size_t j = 0; j + 1 < d; ++j) f(j + 1, j) = Poly(ctx.nvars(), Rational(1));
  for (std::size_t i = 0; i < d; ++i) f(i, d - 1) = -ctx.lower(i);
  return f;
}

namespace {

template <typename C>
using Grid = std::vector<std::vector<C>>;

// Divides sum_{a,b} g[a][b] s^a t^b by (s - t). The division is exact for
// antisymmetric numerators.
template <typename C>
Grid<C> divide_by_s_minus_t(const Grid<C>& g, const C& zero) {
  const std::size_t sa = g.size();
  const std::size_t tb = sa == 0 ? 0 : g[0].size();
  if (sa == 0) return {};
  // Quotient has s-degree sa-2 and t-degree up to tb.
  Grid<C> q(sa > 1 ? sa - 1 : 1, std::vector<C>(tb + sa, zero));
  std::vector<C> carry(tb + sa, zero);  // Q_a(t), starting from the top
  for (std::size_t a = sa; a-- > 1;) {
    // Q_{a-1}(t) = N_a(t) + t * Q_a(t)
    std::vector<C> next(tb + sa, zero);
    for (std::size_t b = 0; b < tb; ++b) next[b] += g[a][b];
    for (std::size_t b = 0; b + 1 < carry.size(); ++b) next[b + 1] += carry[b];
    q[a - 1] = next;
    carry = std::move(next);
  }
  return q;
}

}  // namespace

RationalSymMatrix bezout_matrix_univariate(const UniPoly& f, const UniPoly& g) {
  const int d = f.degree();
  if (d < 1 || g.degree() >= d) {
    throw Error(ErrorKind::DegreeViolation, "Bezout matrix needs deg g < deg f, deg f >= 1");
  }
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  Grid<Rational> num(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) num[a][b] = f.coeff(a) * g.coeff(b) - f.coeff(b) * g.coeff(a);
  }
  Grid<Rational> q = divide_by_s_minus_t(num, Rational(0));
  RationalSymMatrix out(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = q[i][j];
  }
  return out;
}

BezoutianForm bezoutian_of(const QuotientContext& ctx, const Poly& p) {
  if (p.nvars() != ctx.nvars()) throw Error(ErrorKind::NvarsMismatch, "bezoutian_of: nvars mismatch");
  const std::size_t nv = ctx.nvars();
  const Poly zero(nv);
  std::vector<Poly> hc = coefficients_in_x0(ctx.h_monic());
  std::vector<Poly> pc = coefficients_in_x0(p);
  const std::size_t n = std::max(hc.size(), pc.size());
  hc.resize(n, zero);
  pc.resize(n, zero);

  Grid<Poly> num(n, std::vector<Poly>(n, zero));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      num[a][b] = hc[a] * pc[b] - hc[b] * pc[a];
    }
  }
  Grid<Poly> q = divide_by_s_minus_t(num, zero);

  // Bidegree reduction: rows (s powers) first, then columns (t powers).
  const std::size_t d = ctx.degree();
  const std::size_t tb = q.empty() ? 0 : q[0].size();
  Grid<Poly> rows_reduced(d, std::vector<Poly>(tb, zero));
  for (std::size_t b = 0; b < tb; ++b) {
    std::vector<Poly> col(q.size(), zero);
    for (std::size_t a = 0; a < q.size(); ++a) col[a] = q[a][b];
    if (col.size() < d) col.resize(d, zero);
    reduce_powers(ctx, col);
    for (std::size_t a = 0; a < d; ++a) rows_reduced[a][b] = std::move(col[a]);
  }
  BezoutianForm out{PolyMatrix(d, d, nv), 0};
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<Poly> row = rows_reduced[a];
    if (row.size() < d) row.resize(d, zero);
    reduce_powers(ctx, row);
    for (std::size_t b = 0; b < d; ++b) out.entries(a, b) = std::move(row[b]);
  }
  out.total_degree = static_cast<unsigned>(d - 1) + p.degree();
  return out;
}

BezoutianForm delta_h(const QuotientContext& ctx) {
  return bezoutian_of(ctx, Poly(ctx.nvars(), Rational(1)));
}

bool is_bezoutian(const QuotientContext& ctx, const PolyMatrix& b) {
  if (b.rows() != ctx.degree() || b.cols() != ctx.degree()) return false;
  if (!b.is_symmetric()) return false;
  PolyMatrix f = mult_x0_matrix(ctx);
  return f * b == b * f.transpose();
}

RationalMatrix evaluate_matrix(const PolyMatrix& m, std::span<const Rational> v) {
  RationalMatrix out(m.rows(), m.cols());
  if (m.rows() == 0) return out;
  const std::size_t nv = m(0, 0).nvars();
  if (v.size() + 1 != nv) throw Error(ErrorKind::DimensionMismatch, "evaluation point needs n coordinates");
  RationalVector point(nv, Rational(0));
  std::copy(v.begin(), v.end(), point.begin() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
  }
  return out;
}

RationalSymMatrix evaluate_form(const BezoutianForm& b, std::span<const Rational> v) {
  return evaluate_matrix(b.entries, v);
}

}  // namespace hyperdet
