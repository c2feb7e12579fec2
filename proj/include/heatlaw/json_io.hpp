#pragma once

// JSON encodings. Rationals are written as "p/q" strings (or "p"); on input,
// integers, floats and decimal strings are also accepted and read exactly.

#include "heatlaw/coefficients.hpp"
#include "heatlaw/kernel.hpp"
#include "heatlaw/law.hpp"

#include "json.hpp"

namespace heatlaw {

using Json = nlohmann::json;

Rational rational_from_json(const Json& j);
RationalVec rationals_from_json(const Json& j);
Json to_json_value(const Rational& r);
Json to_json_value(const RationalVec& values);

void to_json(Json& j, const ParameterSequence& p);
void from_json(const Json& j, ParameterSequence& p);

void to_json(Json& j, const CoefficientTable& t);
void from_json(const Json& j, CoefficientTable& t);

Json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const Json& j);

void to_json(Json& j, const HeatLaw& law);
HeatLaw law_from_json(const Json& j);

void to_json(Json& j, const EvolutionEquation& eq);
EvolutionEquation equation_from_json(const Json& j);

/// %.17g
std::string format_double(double v);

}  // namespace heatlaw
