#pragma once

#include <json.hpp>

#include "taut/expression.hpp"

namespace taut {

using Json = nlohmann::ordered_json;

/// {num, den} with both parts as decimal strings.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {vertices:[{id,genus}], half_edges:[{id,vertex,exponent}], involution:[[a,b]],
///  legs:[{id,kind,index|name}]}. Extra legs are written as half-edges of kind
/// "extra" after the real ones and folded back into vertex counts on reading.
Json graph_to_json(const DecoratedGraph& g);
DecoratedGraph graph_from_json(const Json& j);

/// {schema:1, ambient:{genus,labels}, terms:[{coefficient,graph}]}; coefficients
/// are the internal (not Aut-normalized) ones.
Json expression_to_json(const Expression& e);
Expression expression_from_json(const Json& j);

}  // namespace taut
