#pragma once

// JSON (de)serialization. Scalars and rationals travel as strings; integer
// data (rays, characters, filtration indices, exponents) as JSON integers.
// Every reader validates its input by hand and throws Error(Schema) with the
// offending path, Error(Parse) for malformed scalars.

#include <json.hpp>

#include <string>

#include "btt/pamap.hpp"

namespace btt::io {

using json = nlohmann::ordered_json;

Field field_from_json(const json& j);
json to_json(const Field& f);
/// "padic:P" or "laurent" (as used by --field).
Field field_from_string(const std::string& s);

Rational rational_from_json(const json& j, const std::string& path);
Scalar scalar_from_json(const Field& f, const json& j, const std::string& path);

/// Row-major array of scalars.
Matrix matrix_from_json(const Field& f, const json& j, const std::string& path);
json to_json(const Field& f, const Matrix& m);

QPoint point_from_json(const json& j, const std::string& path);
json to_json(const QPoint& x);

Complex complex_from_json(const json& j);
json to_json(const Complex& c);

/// {"field","complex","rank","pieces"}; `field` overrides the stored field.
PAMap pamap_from_json(const json& j, const std::optional<Field>& field = std::nullopt);
json to_json(const PAMap& phi);

json to_json(const AdaptedNorm& v);
json to_json(const Lattice& l);
json to_json(const ComplexReport& r);
json to_json(const GluingReport& r);
json to_json(const LinearPart& lp, const Field& f);
json to_json(const MorphismResult& r);
json to_json(const tree::Certificate& c);
json to_json(const Field& f, const DistributivityWitness& w);
json to_json(const SplitVerdict& v, const Field& f);

/// Parses text, turning nlohmann errors into Error(Parse).
json parse_text(const std::string& text);

}  // namespace btt::io
