#pragma once

// JSON encodings shared by the command-line front end. Scalars travel as
// literal strings in the parser's syntax; integers are also accepted on input.

#include <json.hpp>

#include "gha/modtheory.hpp"
#include "gha/parse.hpp"
#include "gha/structure.hpp"

namespace gha::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const Scalar& s);
json to_json(const std::vector<Scalar>& v);
json to_json(const Orbit& o);
json to_json(const ModuleDescriptor& d);
json to_json(const MatrixModule& m);
json to_json(const RelationReport& r);
json to_json(const CenterDescription& c);
json to_json(const IsoVerdict& v);
json to_json(const SimpleModules& s);

/// Approximate if `requested` is, or if any string in `doc` holds a decimal literal.
Backend document_backend(const json& doc, Backend requested);

Scalar scalar_from_json(const json& j, const ParseOptions& opts);
/// Weights are checked against f; malformed input throws InputError.
ModuleDescriptor descriptor_from_json(const json& j, const Poly& f, const ParseOptions& opts);
MatrixModule module_from_json(const json& j, const ParseOptions& opts);

}  // namespace gha::cli
