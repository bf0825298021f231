#pragma once

#include <string>

#include <json.hpp>

#include "iqsp/blockenc.hpp"
#include "iqsp/circuit.hpp"
#include "iqsp/polyapprox.hpp"
#include "iqsp/qsp.hpp"

namespace iqsp {

using json = nlohmann::json;

json to_json(const RealPolynomial& p);
RealPolynomial real_polynomial_from_json(const json& j);

json to_json(const ComplexPolynomial& p);
ComplexPolynomial complex_polynomial_from_json(const json& j);

json to_json(const QspSequence& s);
QspSequence qsp_sequence_from_json(const json& j);

json to_json(const GqspSequence& s);
GqspSequence gqsp_sequence_from_json(const json& j);

// Descriptor only: {alpha, ancillas, eps, dim, success_probability}.
json descriptor_json(const BlockEncoding& be);

json to_json(const Circuit& c);

// Binary matrix interchange: 16-byte header (magic "IQSPMAT1", u32 rows,
// u32 cols, little endian), then row-major interleaved re/im f64.
void write_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix(const std::string& path);

}  // namespace iqsp
