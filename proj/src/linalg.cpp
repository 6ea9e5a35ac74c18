#include "hyperdet/linalg.hpp"

#include <algorithm>
#include <map>

#include "hyperdet/error.hpp"

namespace hyperdet {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  }
  return r;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

LdlDecomposition ldl_decompose(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw Error(ErrorKind::NotPD, "matrix is not symmetric");
  const std::size_t n = a.rows();
  RationalMatrix work = a;
  LdlDecomposition out{std::vector<Rational>(n), RationalMatrix::identity(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = work(k, k);
    if (pivot <= 0) {
      throw Error(ErrorKind::NotPD, "pivot " + std::to_string(k) + " is " + pivot.get_str());
    }
    out.weights[k] = pivot;
    for (std::size_t j = k + 1; j < n; ++j) out.factor(k, j) = work(k, j) / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (work(k, i) == 0) continue;
      const Rational f = out.factor(k, i);
      for (std::size_t j = i; j < n; ++j) {
        work(i, j) -= f * work(k, j);
        if (j != i) work(j, i) = work(i, j);
      }
    }
  }
  return out;
}

bool is_positive_definite(const RationalMatrix& a) {
  try {
    ldl_decompose(a);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotPD) return false;
    throw;
  }
}

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix w = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < w.cols() && r < w.rows(); ++col) {
    std::size_t piv = r;
    while (piv < w.rows() && w(piv, col) == 0) ++piv;
    if (piv == w.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(piv, j), w(r, j));
    }
    for (std::size_t i = r + 1; i < w.rows(); ++i) {
      if (w(i, col) == 0) continue;
      Rational f = w(i, col) / w(r, col);
      for (std::size_t j = col; j < w.cols(); ++j) w(i, j) -= f * w(r, j);
    }
    ++r;
  }
  return r;
}

void SparseSystem::add_equation(Row row, Rational rhs) {
  std::map<std::size_t, Rational> merged;
  for (auto& [c, v] : row) {
    if (c >= num_unknowns_) throw Error(ErrorKind::DimensionMismatch, "unknown index out of range");
    merged[c] += v;
  }
  Row clean;
  for (auto& [c, v] : merged) {
    if (v != 0) clean.emplace_back(c, std::move(v));
  }
  rows_.push_back(std::move(clean));
  rhs_.push_back(std::move(rhs));
}

namespace {

// r := r - f * p, both sorted by column.
void axpy_row(SparseSystem::Row& r, const Rational& f, const SparseSystem::Row& p) {
  SparseSystem::Row out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -f * p[j].second);
      ++j;
    } else {
      Rational v = r[i].second - f * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r = std::move(out);
}

}  // namespace

std::optional<std::vector<Rational>> SparseSystem::solve() const {
  // Echelon form: each stored pivot row has its pivot as its smallest column.
  std::vector<Row> pivot_rows;
  std::vector<Rational> pivot_rhs;
  std::vector<long> pivot_of_col(num_unknowns_, -1);

  for (std::size_t e = 0; e < rows_.size(); ++e) {
    Row r = rows_[e];
    Rational b = rhs_[e];
    std::size_t pos = 0;
    while (pos < r.size()) {
      const std::size_t c = r[pos].first;
      const long p = pivot_of_col[c];
      if (p < 0) {
        ++pos;
        continue;
      }
      const Rational f = r[pos].second;
      b -= f * pivot_rhs[static_cast<std::size_t>(p)];
      axpy_row(r, f, pivot_rows[static_cast<std::size_t>(p)]);
      // Pivot rows start at column c.
    }
    if (r.empty()) {
      if (b != 0) return std::nullopt;
      continue;
    }
    // First remaining entry whose column has no pivot becomes the pivot.
    const Rational inv = 1 / r.front().second;
    for (auto& [c, v] : r) v *= inv;
    b *= inv;
    pivot_of_col[r.front().first] = static_cast<long>(pivot_rows.size());
    pivot_rows.push_back(std::move(r));
    pivot_rhs.push_back(std::move(b));
  }

  // Back substitution in decreasing pivot column order; free variables = 0.
  std::vector<Rational> x(num_unknowns_, Rational(0));
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) order.emplace_back(pivot_rows[i].front().first, i);
  std::sort(order.rbegin(), order.rend());
  for (const auto& [col, idx] : order) {
    Rational v = pivot_rhs[idx];
    const Row& r = pivot_rows[idx];
    for (std::size_t k = 1; k < r.size(); ++k) v -= r[k].second * x[r[k].first];
    x[col] = std::move(v);
  }
  return x;
}

bool SparseSystem::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != num_unknowns_) return false;
  for (std::size_t e = 0; e < rows_.size(); ++e) {
    Rational acc = 0;
    for (const auto& [c, v] : rows_[e]) acc += v * x[c];
    if (acc != rhs_[e]) return false;
  }
  return true;
}

}  // namespace hyperdet
