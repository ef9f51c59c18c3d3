#pragma once

#include <json.hpp>

#include "multipole/algebra.hpp"
#include "multipole/deconstruct.hpp"
#include "multipole/maxwell.hpp"
#include "multipole/planar.hpp"
#include "multipole/sylvester.hpp"

namespace multipole {

using Json = nlohmann::ordered_json;

// Parsers throw Error(InvalidArgument) on malformed input.

// [re, im]; a bare number is accepted on input.
Json complex_to_json(cd z);
cd complex_from_json(const Json& j);

Json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);

// {"degree": d, "terms": [{"exp": [a,b,c], "re": r, "im": s}, ...]}
Json poly_to_json(const HomogPoly& p);
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);
// Throws unless every term has degree j["degree"].
HomogPoly homog_from_json(const Json& j);

// {"B": [[...],[...],[...]], "real": bool}
Json quadform_to_json(const QuadForm& q);
QuadForm quadform_from_json(const Json& j);

Json parcelling_to_json(const Parcelling& p);
Parcelling parcelling_from_json(const Json& j);

// {"lambda", "lines", "remainder", "parcelling"}, plus "q_power" when nonzero.
Json factorization_to_json(const MultipoleFactorization& f);
MultipoleFactorization factorization_from_json(const Json& j);

// {"lambda", "lines"}
Json multipole_to_json(const Multipole& m);
Multipole multipole_from_json(const Json& j);

// {"lambda", "terms": {"k": multipole}}; "terms" is omitted when empty.
Json sequence_to_json(const MultipoleSequence& s);
MultipoleSequence sequence_from_json(const Json& j);

Json maxwell_to_json(const MaxwellVectors& m);
MaxwellVectors maxwell_from_json(const Json& j);

// [{"point": [3 complex], "multiplicity": m}, ...]
Json conic_divisor_to_json(const ConicDivisor& d);
ConicDivisor conic_divisor_from_json(const Json& j);

}  // namespace multipole
