#pragma once

#include <json.hpp>

#include "hyperdet/detrep.hpp"
#include "hyperdet/hyperbolicity.hpp"
#include "hyperdet/quotient.hpp"
#include "hyperdet/sos.hpp"

namespace hyperdet {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hyperdet/1";

Json rational_vector_json(const RationalVector& v);
Json rational_matrix_json(const RationalMatrix& m);
Json poly_matrix_json(const PolyMatrix& m);

Json to_json(const BezoutianForm& b);
Json to_json(const HyperbolicityVerdict& v);
Json to_json(const PdWitnessResult& r);
Json to_json(const SosDecomposition& dec);
Json to_json(const VerifyReport& r);
Json to_json(const DetRepCertificate& cert);

// Throws ParseError on malformed JSON text and InvalidArgument on schema or
// shape violations.
DetRepCertificate certificate_from_json(const Json& j);
DetRepCertificate parse_certificate(std::string_view text);

}  // namespace hyperdet
