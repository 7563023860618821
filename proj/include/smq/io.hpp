#pragma once

#include <string>

#include "json.hpp"
#include "smq/hopf.hpp"
#include "smq/parser.hpp"
#include "smq/quantization.hpp"
#include "smq/symmetry.hpp"

namespace smq {

using Json = nlohmann::json;

/// Shortest round-trip decimal form ("%.17g" trimmed); identical for identical doubles.
std::string format_double(double v);

/// {"m", "n", "backend", "expression", "terms": [{"blade": [1, 2], "exponents": [...], "re", "im"}]}.
/// Blades are one-based generator lists; exact parts are "p/q" strings, float parts decimal strings.
Json to_json(const PolySuper<QComplex>& f, const VariableNames& names);
Json to_json(const PolySuper<CDouble>& f);
/// As above with "widths" (the envelope a_i as "p/q") on every term.
Json to_json(const GaussSuper<QComplex>& f, const VariableNames& names);
PolySuper<QComplex> polysuper_from_json(const Json& j);

Json to_json(const GrassmannElement<QComplex>& a);
Json to_json(const GrassmannElement<CDouble>& a);

/// Leg-suffixed names for a tensor of `legs` copies: x1 on leg 2 becomes x1_2.
VariableNames tensor_names(const VariableNames& base, int legs);
Json to_json(const TensorSuper<QComplex>& t, const VariableNames& base);

/// Supermatrix over ⋀ℝ^N from {"m", "n", "N", "entries": [[...], ...]} with every entry an
/// expression in e1..eN, or {"m", "n", "identity": true}. m, n default to the given values.
ExactMatrix supermatrix_from_json(const Json& j, int m, int n);
Json to_json(const ExactMatrix& A);

/// {"basis": {...}, "dim", "entries": [[re, im], ...]} row-major.
Json to_json(const OperatorMatrix& op);

}  // namespace smq
