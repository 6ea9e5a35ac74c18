#include "hyperdet/json_io.hpp"

namespace hyperdet {

Json rational_vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json rational_matrix_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json poly_matrix_json(const PolyMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const BezoutianForm& b) {
  Json out;
  out["total_degree"] = b.total_degree;
  out["entries"] = poly_matrix_json(b.entries);
  return out;
}

Json to_json(const HyperbolicityVerdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  out["witness"] = v.witness ? rational_vector_json(*v.witness) : Json(nullptr);
  out["samples_used"] = v.samples_used;
  return out;
}

Json to_json(const PdWitnessResult& r) {
  Json out;
  out["passed"] = r.passed;
  out["witness"] = r.witness ? rational_vector_json(*r.witness) : Json(nullptr);
  out["samples_used"] = r.samples_used;
  return out;
}

Json to_json(const SosDecomposition& dec) {
  Json out;
  out["ell"] = dec.ell;
  out["k"] = dec.k;
  out["q"] = dec.q.to_string();
  out["weights"] = rational_vector_json(dec.weights);
  Json vectors = Json::array();
  for (const auto& u : dec.vectors) {
    Json coords = Json::array();
    for (const auto& c : u.coeffs) coords.push_back(c.to_string());
    vectors.push_back(std::move(coords));
  }
  out["vectors"] = std::move(vectors);
  return out;
}

Json to_json(const VerifyReport& r) {
  Json out;
  out["ok"] = r.ok;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  out["checks"] = std::move(checks);
  return out;
}

Json to_json(const DetRepCertificate& cert) {
  Json out;
  out["schema"] = kSchema;
  out["h"] = cert.h.to_string();
  out["e"] = rational_vector_json(cert.e.coords());
  Json t = Json::array();
  for (std::size_t i = 0; i < cert.T.n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cert.T.n; ++j) row.push_back(to_string(cert.T(i, j)));
    t.push_back(std::move(row));
  }
  out["T"] = std::move(t);
  out["N"] = cert.N;
  out["D"] = rational_vector_json(cert.D);
  Json g = Json::array();
  for (const auto& gi : cert.G) g.push_back(rational_matrix_json(gi));
  out["G"] = std::move(g);
  out["cofactor"] = cert.cofactor.to_string();
  out["q_multiplier"] = cert.q_multiplier.to_string();
  if (cert.float_pencil) {
    Json fp = Json::array();
    for (const auto& a : *cert.float_pencil) {
      Json m = Json::array();
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
        m.push_back(std::move(row));
      }
      fp.push_back(std::move(m));
    }
    out["float_pencil"] = std::move(fp);
  }
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, "certificate: " + msg); }

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

Rational rational_of(const Json& j) {
  if (!j.is_string()) bad("rational entries must be strings");
  return parse_rational(j.get<std::string>());
}

RationalVector rational_vector_of(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_of(x));
  return out;
}

RationalMatrix square_matrix_of(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) bad("expected " + std::to_string(n) + " rows");
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) bad("expected " + std::to_string(n) + " columns");
    for (std::size_t k = 0; k < n; ++k) out(i, k) = rational_of(j[i][k]);
  }
  return out;
}

Poly poly_of(const Json& j, std::size_t nvars) {
  if (!j.is_string()) bad("polynomials must be strings");
  return parse_poly(j.get<std::string>(), nvars);
}

}  // namespace

DetRepCertificate certificate_from_json(const Json& j) {
  if (!j.is_object()) bad("top level must be an object");
  const Json& schema = field(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) {
    bad(std::string("unsupported schema, expected '") + kSchema + "'");
  }
  DetRepCertificate cert;
  cert.e = Direction(rational_vector_of(field(j, "e")));
  const std::size_t nv = cert.e.size();
  cert.h = poly_of(field(j, "h"), nv);

  const Json& t = field(j, "T");
  const RationalMatrix tm = square_matrix_of(t, nv);
  cert.T.n = nv;
  cert.T.entries.assign(nv * nv, Rational(0));
  for (std::size_t r = 0; r < nv; ++r) {
    for (std::size_t c = 0; c < nv; ++c) cert.T(r, c) = tm(r, c);
  }

  const Json& n = field(j, "N");
  if (!n.is_number_unsigned()) bad("N must be a non-negative integer");
  cert.N = n.get<std::size_t>();
  cert.D = rational_vector_of(field(j, "D"));
  const Json& g = field(j, "G");
  if (!g.is_array()) bad("G must be an array of matrices");
  for (const auto& gi : g) cert.G.push_back(square_matrix_of(gi, cert.N));
  cert.cofactor = poly_of(field(j, "cofactor"), nv);
  cert.q_multiplier = poly_of(field(j, "q_multiplier"), nv);

  if (auto it = j.find("float_pencil"); it != j.end()) {
    if (!it->is_array()) bad("float_pencil must be an array");
    std::vector<Eigen::MatrixXd> fp;
    for (const auto& a : *it) {
      const auto size = static_cast<Eigen::Index>(cert.N);
      if (!a.is_array() || a.size() != cert.N) bad("float_pencil matrix has the wrong size");
      Eigen::MatrixXd m(size, size);
      for (Eigen::Index r = 0; r < size; ++r) {
        const Json& row = a[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != cert.N) bad("float_pencil matrix has the wrong size");
        for (Eigen::Index c = 0; c < size; ++c) {
          const Json& x = row[static_cast<std::size_t>(c)];
          if (!x.is_number()) bad("float_pencil entries must be numbers");
          m(r, c) = x.get<double>();
        }
      }
      fp.push_back(std::move(m));
    }
    cert.float_pencil = std::move(fp);
  }
  return cert;
}

DetRepCertificate parse_certificate(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& err) {
    // Byte offset to line/column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min(err.byte == 0 ? 0 : err.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, "malformed JSON");
  }
  return certificate_from_json(j);
}

}  // namespace hyperdet
