#include "hyperdet/detrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hyperdet {

SymmetricLift solve_symmetric_lift(const QuotientContext& ctx, const SosDecomposition& dec) {
  const std::size_t m = dec.vectors.size();
  const std::size_t n = ctx.num_r_vars();
  const std::size_t d = ctx.degree();
  const std::size_t nv = ctx.nvars();
  if (dec.weights.size() != m) throw Error(ErrorKind::InvalidArgument, "weights and vectors differ in length");
  for (const auto& w : dec.weights) {
    if (w <= 0) throw Error(ErrorKind::InvalidArgument, "weights must be positive");
  }
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "lift needs at least one R-variable");

  // Unknowns S_l(i,j) = (D G_l)(i,j) for i <= j.
  std::vector<std::size_t> row_offset(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) row_offset[i + 1] = row_offset[i] + (m - i);
  auto unknown = [&](std::size_t i, std::size_t j, std::size_t l) {
    if (i > j) std::swap(i, j);
    return (row_offset[i] + (j - i)) * n + l;
  };
  const std::size_t num_unknowns = row_offset[m] * n;

  std::vector<Monomial> var_units;
  for (std::size_t l = 0; l < n; ++l) var_units.push_back(Monomial::unit(nv, l + 1));

  SparseSystem system(num_unknowns);
  for (std::size_t j = 0; j < m; ++j) {
    // With v_i = d_i u_i the intertwining reads
    //   sum_{i,l} S_l(i,j) x_l u_i = d_j x0 u_j.
    const QuotientElement target = multiply_by_x0(ctx, dec.vectors[j]);
    for (std::size_t a = 0; a < d; ++a) {
      std::map<Monomial, SparseSystem::Row, GrlexGreater> rows;
      for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [mono, c] : dec.vectors[i].coeffs[a].terms()) {
          for (std::size_t l = 0; l < n; ++l) rows[mono * var_units[l]].emplace_back(unknown(i, j, l), c);
        }
      }
      const Poly rhs = target.coeffs[a] * dec.weights[j];
      for (const auto& [mono, c] : rhs.terms()) rows[mono];  // ensure an equation exists
      for (auto& [mono, row] : rows) system.add_equation(std::move(row), rhs.coeff(mono));
    }
  }

  auto solution = system.solve();
  if (!solution) {
    throw Error(ErrorKind::NoSymmetricLift, "intertwining and D-symmetry constraints are inconsistent");
  }
  SymmetricLift lift;
  lift.d = dec.weights;
  lift.g.assign(n, RationalMatrix(m, m));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) lift.g[l](i, j) = (*solution)[unknown(i, j, l)] / dec.weights[i];
    }
  }
  return lift;
}

namespace {

std::size_t pencil_size(const std::vector<RationalMatrix>& g) {
  if (g.empty()) throw Error(ErrorKind::InvalidArgument, "pencil needs at least one matrix");
  const std::size_t n = g[0].rows();
  for (const auto& m : g) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "pencil matrices differ in size");
  }
  return n;
}

}  // namespace

Poly pencil_determinant_bareiss(const std::vector<RationalMatrix>& g) {
  const std::size_t n = pencil_size(g);
  const std::size_t nv = g.size() + 1;
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n, Poly(nv)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) a[i][j].add_term(Monomial::unit(nv, 0), Rational(1));
      for (std::size_t l = 0; l < g.size(); ++l) a[i][j].add_term(Monomial::unit(nv, l + 1), -g[l](i, j));
    }
  }
  if (n == 0) return Poly(nv, Rational(1));
  // Leading principal minors contain x0^k, so no pivoting is needed.
  Poly prev(nv, Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
    }
    prev = a[k][k];
  }
  return a[n - 1][n - 1];
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& input) {
  const std::size_t n = input.rows();
  RationalMatrix a = input;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && a(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, piv), a(r, j + 1));
    }
    const Rational inv = 1 / a(j + 1, j);
    for (std::size_t r = j + 2; r < n; ++r) {
      if (a(r, j) == 0) continue;
      const Rational f = a(r, j) * inv;
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= f * a(j + 1, c);
      for (std::size_t rr = 0; rr < n; ++rr) a(rr, j + 1) += f * a(rr, r);
    }
  }
  // p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{r=i+1}^{k} h_{r,r-1}) p_{i-1}
  std::vector<std::vector<Rational>> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Rational> cur(k + 1, Rational(0));
    for (std::size_t c = 0; c < k; ++c) {
      cur[c + 1] += p[k - 1][c];
      cur[c] -= a(k - 1, k - 1) * p[k - 1][c];
    }
    Rational prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= a(i + 1, i);
      if (prod == 0) break;
      const Rational f = a(i, k - 1) * prod;
      if (f == 0) continue;
      for (std::size_t c = 0; c < p[i].size(); ++c) cur[c] -= f * p[i][c];
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

namespace {

// Lattice points a in N^dim with |a| <= bound, in a fixed recursive order.
void lattice_points(std::size_t dim, unsigned bound, std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == dim) {
    out.push_back(cur);
    return;
  }
  for (unsigned v = 0; v <= bound; ++v) {
    cur.push_back(v);
    lattice_points(dim, bound - v, cur, out);
    cur.pop_back();
  }
}

using ValueMap = std::map<std::vector<unsigned>, std::vector<Rational>>;
// Polynomial in `dim` variables (as exponent vector -> coefficient), vector valued.
using VecPoly = std::map<std::vector<unsigned>, std::vector<Rational>>;

// Newton interpolation on the principal lattice {|a| <= bound}: recovers every
// polynomial of total degree <= bound from its values.
VecPoly interpolate_lattice(std::size_t dim, unsigned bound, const ValueMap& values, std::size_t width) {
  VecPoly out;
  if (dim == 0) {
    out[{}] = values.at({});
    return out;
  }
  // Divided differences along the first coordinate.
  std::vector<ValueMap> q(bound + 1);
  std::vector<std::vector<unsigned>> rest_points;
  {
    std::vector<unsigned> cur;
    lattice_points(dim - 1, bound, cur, rest_points);
  }
  for (const auto& rest : rest_points) {
    unsigned used = 0;
    for (unsigned r : rest) used += r;
    const unsigned len = bound - used + 1;
    std::vector<std::vector<Rational>> table;
    for (unsigned y = 0; y < len; ++y) {
      std::vector<unsigned> key{y};
      key.insert(key.end(), rest.begin(), rest.end());
      table.push_back(values.at(key));
    }
    // Nodes 0,1,2,...: f[y..y+s] = (f[y+1..y+s] - f[y..y+s-1]) / s
    for (unsigned s = 0; s < len; ++s) {
      q[s][rest] = table[0];
      for (unsigned y = 0; y + 1 < table.size(); ++y) {
        for (std::size_t w = 0; w < width; ++w) table[y][w] = (table[y + 1][w] - table[y][w]) / Rational(s + 1);
      }
      table.pop_back();
    }
  }
  // newton = prod_{t<s} (y - t), accumulated as a dense univariate polynomial.
  std::vector<Rational> newton{Rational(1)};
  for (unsigned s = 0; s <= bound; ++s) {
    VecPoly qs = interpolate_lattice(dim - 1, bound - s, q[s], width);
    for (const auto& [exps, coeffs] : qs) {
      for (std::size_t pw = 0; pw < newton.size(); ++pw) {
        if (newton[pw] == 0) continue;
        std::vector<unsigned> key{static_cast<unsigned>(pw)};
        key.insert(key.end(), exps.begin(), exps.end());
        auto& slot = out[key];
        if (slot.empty()) slot.assign(width, Rational(0));
        for (std::size_t w = 0; w < width; ++w) slot[w] += newton[pw] * coeffs[w];
      }
    }
    std::vector<Rational> next(newton.size() + 1, Rational(0));
    for (std::size_t pw = 0; pw < newton.size(); ++pw) {
      next[pw + 1] += newton[pw];
      next[pw] -= newton[pw] * Rational(s);
    }
    newton = std::move(next);
  }
  return out;
}

}  // namespace

Poly pencil_determinant_interpolated(const std::vector<RationalMatrix>& g, Execution exec) {
  const std::size_t n = pencil_size(g);
  const std::size_t r = g.size();  // R-variables
  const std::size_t nv = r + 1;
  const unsigned bound = static_cast<unsigned>(n);

  // Dehomogenize at x1 = 1; interpolate in x2..xr.
  std::vector<std::vector<unsigned>> points;
  {
    std::vector<unsigned> cur;
    lattice_points(r - 1, bound, cur, points);
  }
  std::vector<std::vector<Rational>> charpolys(points.size());
  for_each_index(exec, points.size(), [&](std::size_t pi) {
    RationalMatrix a = g[0];
    for (std::size_t l = 1; l < r; ++l) {
      const unsigned coord = points[pi][l - 1];
      if (coord == 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) += g[l](i, j) * coord;
      }
    }
    charpolys[pi] = characteristic_polynomial(a);
  });
  ValueMap values;
  for (std::size_t pi = 0; pi < points.size(); ++pi) values[points[pi]] = std::move(charpolys[pi]);
  const VecPoly interp = interpolate_lattice(r - 1, bound, values, n + 1);

  // Coefficient of x0^c is homogeneous of degree n - c in x1..xr.
  Poly out(nv);
  for (const auto& [exps, coeffs] : interp) {
    unsigned rest_degree = 0;
    for (unsigned e : exps) rest_degree += e;
    for (std::size_t c = 0; c <= n; ++c) {
      if (coeffs[c] == 0) continue;
      const unsigned total = static_cast<unsigned>(n - c);
      if (rest_degree > total) {
        throw Error(ErrorKind::DegreeViolation, "interpolated coefficient exceeds its degree");
      }
      std::vector<unsigned> mono(nv, 0);
      mono[0] = static_cast<unsigned>(c);
      mono[1] = total - rest_degree;
      for (std::size_t l = 1; l < r; ++l) mono[l + 1] = exps[l - 1];
      out.add_term(Monomial(std::move(mono)), coeffs[c]);
    }
  }
  return out;
}

Poly pencil_determinant(const std::vector<RationalMatrix>& g, Execution exec) {
  const std::size_t n = pencil_size(g);
  if (n <= kBareissMaxSize) return pencil_determinant_bareiss(g);
  return pencil_determinant_interpolated(g, exec);
}

Poly extract_cofactor(const Poly& detp, const Poly& h_monic) {
  if (!detp.is_homogeneous() || !h_monic.is_homogeneous()) {
    throw Error(ErrorKind::InvalidArgument, "extract_cofactor needs homogeneous inputs");
  }
  return exact_divide(detp, h_monic);
}

Poly normalized_monic(const Poly& h, const Direction& e, const CoordinateChange& t) {
  const Rational he = h.evaluate(e.coords());
  if (he == 0) throw Error(ErrorKind::DirectionVanishes, "h(e) = 0");
  return linear_substitute(h, t.inverse()) * (1 / he);
}

std::vector<Eigen::MatrixXd> symmetric_float_pencil(const std::vector<Rational>& d,
                                                    const std::vector<RationalMatrix>& g) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& gl : g) {
    const auto n = static_cast<Eigen::Index>(gl.rows());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        // sqrt(d_i / d_j) * G(i,j)
        const double ratio = to_double(d[static_cast<std::size_t>(i)] / d[static_cast<std::size_t>(j)]);
        a(i, j) = std::sqrt(ratio) * to_double(gl(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

DetRepCertificate certify(const Poly& h, const Direction& e, const CertifyOptions& options,
                          CertifyTrace* trace) {
  std::string stage;
  auto enter = [&](const char* s) {
    stage = s;
    if (trace) trace->stage = s;
  };
  try {
    enter("normalize_direction");
    if (!h.is_homogeneous() || h.is_zero()) {
      throw Error(ErrorKind::InvalidArgument, "h must be a nonzero homogeneous polynomial");
    }
    if (h.nvars() < 2) throw Error(ErrorKind::InvalidArgument, "h needs at least two variables");
    NormalizedPoly norm = normalize_direction(h, e);

    enter("quotient_context");
    QuotientContext ctx(norm.poly);

    enter("pd_witness_check");
    PdWitnessResult pd = pd_witness_check(ctx, options.num_samples, options.seed, options.sos.exec);
    if (!pd.passed) {
      std::string w;
      for (std::size_t i = 0; i < pd.witness->size(); ++i) w += (i ? "," : "") + (*pd.witness)[i].get_str();
      const Direction e1 = Direction::first_unit(h.nvars());
      const auto verdict = check_hyperbolic_sampled(ctx.h_monic(), e1, options.num_samples, options.seed);
      if (verdict.status == HyperbolicityStatus::NotHyperbolic) {
        throw Error(ErrorKind::NotHyperbolic, "Bezoutian of dh/dx0 is not positive definite at v = (" + w +
                                                  "); h is not hyperbolic");
      }
      throw Error(ErrorKind::SingularSuspected,
                  "Bezoutian of dh/dx0 is not positive definite at v = (" + w + ")");
    }

    enter("find_nice_bezoutian");
    SosDecomposition dec = find_nice_bezoutian(ctx, options.sos, trace ? &trace->sos_attempts : nullptr);

    enter("solve_symmetric_lift");
    SymmetricLift lift = solve_symmetric_lift(ctx, dec);

    enter("pencil_determinant");
    const Poly detp = pencil_determinant(lift.g, options.sos.exec);

    enter("extract_cofactor");
    Poly cofactor = extract_cofactor(detp, ctx.h_monic());

    enter("definiteness_at_e");
    const std::size_t nmat = lift.d.size();
    RationalVector e1(h.nvars(), Rational(0));
    e1[0] = 1;
    if (norm.T.apply(e.coords()) != e1) throw Error(ErrorKind::InvalidArgument, "T e is not the first unit vector");

    enter("cofactor_hyperbolicity");
    const auto cof_verdict = check_hyperbolic_sampled(cofactor, Direction(e1), options.num_samples, options.seed);
    if (cof_verdict.status != HyperbolicityStatus::HyperbolicSampled) {
      throw Error(ErrorKind::NotHyperbolic, "cofactor failed the sampled hyperbolicity check");
    }

    enter("assemble");
    DetRepCertificate cert{h, e, norm.T, nmat, lift.d, lift.g, std::move(cofactor), dec.q, std::nullopt};
    if (options.float_pencil) cert.float_pencil = symmetric_float_pencil(cert.D, cert.G);
    return cert;
  } catch (const Error& err) {
    throw Error(err.kind(), "stage " + stage + ": " + err.detail());
  }
}

VerifyReport verify_certificate(const DetRepCertificate& cert) {
  VerifyReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const std::size_t n = cert.N;
  const std::size_t nv = cert.h.nvars();

  bool shapes = cert.D.size() == n && cert.G.size() + 1 == nv && cert.e.size() == nv && cert.T.n == nv &&
                cert.T.entries.size() == nv * nv;
  for (const auto& g : cert.G) shapes = shapes && g.rows() == n && g.cols() == n;
  add("shapes", shapes, shapes ? "" : "sizes of N, D, G, e, T are inconsistent");
  if (!shapes) {
    report.ok = false;
    return report;
  }

  // (a)
  bool pd = true;
  for (const auto& di : cert.D) pd = pd && di > 0;
  add("(a) D positive diagonal", pd, pd ? "" : "a diagonal weight is not positive");

  // (b)
  bool sym = true;
  std::string sym_detail;
  for (std::size_t l = 0; l < cert.G.size() && sym; ++l) {
    for (std::size_t i = 0; i < n && sym; ++i) {
      for (std::size_t j = i + 1; j < n && sym; ++j) {
        if (cert.D[i] * cert.G[l](i, j) != cert.D[j] * cert.G[l](j, i)) {
          sym = false;
          sym_detail = "D*G" + std::to_string(l + 1) + " is not symmetric at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")";
        }
      }
    }
  }
  add("(b) D*G_i symmetric", sym, sym_detail);

  // (c)
  bool det_ok = false;
  std::string det_detail;
  try {
    const Poly h_monic = normalized_monic(cert.h, cert.e, cert.T);
    const Poly detp = pencil_determinant(cert.G);
    det_ok = detp == cert.cofactor * h_monic;
    if (!det_ok) det_detail = "det(x0 I - sum x_i G_i) differs from cofactor * h_monic";
  } catch (const Error& err) {
    det_detail = err.what();
  }
  add("(c) pencil determinant", det_ok, det_detail);

  // (d)
  RationalVector e1(nv, Rational(0));
  e1[0] = 1;
  const bool te = cert.T.apply(cert.e.coords()) == e1;
  add("(d) pencil at e is I", te, te ? "" : "T e is not (1,0,...,0)");

  // (e)
  bool mult_ok = false;
  if (cert.q_multiplier.nvars() == nv && cert.q_multiplier.is_homogeneous() &&
      cert.q_multiplier.degree() % 2 == 0) {
    mult_ok = cert.q_multiplier == sum_of_squares_form(nv).pow(cert.q_multiplier.degree() / 2);
  }
  add("(e) multiplier form", mult_ok, mult_ok ? "" : "q_multiplier is not (x1^2+...+xn^2)^l");

  // (f) optional floating-point view
  if (cert.float_pencil) {
    bool fp_ok = cert.float_pencil->size() == cert.G.size() && pd;
    std::string fp_detail;
    if (fp_ok) {
      const auto expected = symmetric_float_pencil(cert.D, cert.G);
      for (std::size_t l = 0; l < expected.size() && fp_ok; ++l) {
        const Eigen::MatrixXd& a = (*cert.float_pencil)[l];
        if (a.rows() != expected[l].rows() || a.cols() != expected[l].cols()) {
          fp_ok = false;
          break;
        }
        const double scale = 1.0 + expected[l].cwiseAbs().maxCoeff();
        if ((a - expected[l]).cwiseAbs().maxCoeff() > kFloatPencilTolerance * scale) fp_ok = false;
      }
    }
    if (!fp_ok) fp_detail = "float_pencil differs from D^(1/2) G D^(-1/2)";
    add("(f) float pencil", fp_ok, fp_detail);
  }

  report.ok = std::all_of(report.checks.begin(), report.checks.end(), [](const VerifyCheck& c) { return c.passed; });
  return report;
}

}  // namespace hyperdet
