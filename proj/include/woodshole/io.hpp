#pragma once

#include <string>

#include "json.hpp"

#include "woodshole/indices.hpp"
#include "woodshole/polyalg.hpp"
#include "woodshole/projgeom.hpp"
#include "woodshole/report.hpp"
#include "woodshole/vector_field.hpp"

namespace woodshole::io {

using nlohmann::json;

// Polynomial literal: [{"exp": [e0, e1, ...], "re": float, "im": float}, ...].
MultiPoly poly_from_json(const json& j, int num_vars);
json poly_to_json(const MultiPoly& p);

// {"n": int, "degree": int, "components": [poly, ...]}
ProjEndo endo_from_json(const json& j);
json endo_to_json(const ProjEndo& f);

// {"degree_hint": int (optional), "P": poly, "Q": poly}
PlaneVectorField vf_from_json(const json& j);
json vf_to_json(const PlaneVectorField& v);

// {"n": int, "monomials": [{"a": [a1, ..., an], "re": float, "im": float}]}
InvariantPolySpec invariant_from_json(const json& j);
json invariant_to_json(const InvariantPolySpec& b);

// {"re": ..., "im": ...} rounded at 1e-15.
json complex_to_json(Complex z);

json report_to_json(const VerificationReport& r);
// One table per relation: per-point terms, sum, expected value, residual.
std::string report_to_text(const VerificationReport& r);

// Reads and parses a JSON file; InputError on I/O or syntax problems.
json read_json_file(const std::string& path);

}  // namespace woodshole::io
