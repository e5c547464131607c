#pragma once

// JSON encodings. Numbers are exact strings; objects use sorted keys so the
// same value always serializes to the same bytes. Readers throw
// MalformedInput on anything that does not match the schema.

#include <json.hpp>

#include <string_view>

#include "ellsurf/error.hpp"
#include "ellsurf/family.hpp"
#include "ellsurf/quadric.hpp"
#include "ellsurf/torsion.hpp"

namespace ellsurf {

using Json = nlohmann::json;

// Rationals: "p/q" strings ("p" when q = 1); integers are accepted on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// Field elements: a rational string, or ["c0","c1","c2","c3"] in powers of zeta8.
Json to_json(const FieldElem& a);
FieldElem field_from_json(const Json& j);

// Polynomials: ascending coefficient arrays.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);
/// Parses inline text such as "[1,0,-1]".
Poly parse_poly(std::string_view text);

// Rational functions: {"den": Poly, "num": Poly}. A bare polynomial or a
// constant is accepted on input.
Json to_json(const RatFun& r);
RatFun ratfun_from_json(const Json& j);

Json to_json(const Place& v);

// Models: {"a": [a1, a2, a3, a4, a6], "chart": "t" | {"s": n}, "field": "Q" | "Qzeta8"}.
Json to_json(const WeierstrassModel& m);
WeierstrassModel model_from_json(const Json& j);

// Points: {"x": RatFun, "y": RatFun} or "O".
Json to_json(const CurvePoint& p);
CurvePoint point_from_json(const Json& j);

Json to_json(const KodairaFiber& f);
Json to_json(const SurfaceSummary& s);
Json to_json(const GramReport& g);
Json to_json(const TorsionReport& t);
Json to_json(const Certificate& c);
/// [class of x, class of x - f^2] as squarefree representatives.
Json to_json(const DescentImage& d);
Json to_json(const QbarCertificate& c);
Json to_json(const QtStructure& s);
Json to_json(const RankThreeExample& e);

// Families: {"h1": Poly, "h2": Poly} or {"f": Poly, "g": Poly, "h": Poly}.
PythagoreanTriple triple_from_json(const Json& j);
Json to_json(const PythagoreanTriple& t);

// Quadrics: {"alpha": "1", "beta": "1", "gamma": "2"}.
Quadric quadric_from_json(const Json& j);
Json to_json(const Quadric& q);
Json to_json(const RationalTriple& t);
Json to_json(const ParamSolution& s);
Json to_json(const RankCertificate& c);
Json to_json(const QuadricFamily& f);
Json to_json(const Specialization& s);
Json to_json(const Rank3Member& r);

/// A quadric family: quadric keys (default 1, 1, 1) next to "f", "g", "h".
QuadricFamily quadric_family_from_json(const Json& j);

/// {"error": kind, "message": text}.
Json error_json(const Error& e);

/// Parses text; MalformedInput on syntax errors.
Json parse_json(std::string_view text);

}  // namespace ellsurf
