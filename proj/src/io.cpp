#include "ellsurf/io.hpp"

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

[[noreturn]] void malformed(const std::string& msg) { fail(ErrorKind::MalformedInput, msg); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key '") + key + "'");
  return *it;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) malformed("expected an object, got " + j.dump());
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) malformed("unknown key '" + it.key() + "'");
  }
}

Json points_json(const std::vector<CurvePoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

Json named_points(const std::vector<CurvePoint>& pts, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back({{"name", i < names.size() ? names[i] : ""}, {"point", to_json(pts[i])}});
  }
  return out;
}

Json square_class_json(const SquareClass& c) { return to_json(c.representative); }

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.dump(), 10);
  malformed("expected a rational string, got " + j.dump());
}

Json to_json(const FieldElem& a) {
  if (a.is_rational()) return to_json(a.rational());
  const Zeta8Elem z = a.to_zeta8();
  Json out = Json::array();
  for (const auto& c : z.coeffs()) out.push_back(to_json(c));
  return out;
}

FieldElem field_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 4) malformed("a zeta8 element needs 4 coefficients");
    return FieldElem(Zeta8Elem(rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]),
                               rational_from_json(j[3])));
  }
  return FieldElem(rational_from_json(j));
}

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) malformed("a polynomial is an array of coefficients, got " + j.dump());
  std::vector<FieldElem> c;
  for (const auto& e : j) c.push_back(field_from_json(e));
  return Poly(std::move(c));
}

Poly parse_poly(std::string_view text) { return poly_from_json(parse_json(text)); }

Json to_json(const RatFun& r) { return {{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }

RatFun ratfun_from_json(const Json& j) {
  if (j.is_array()) return RatFun(poly_from_json(j));
  if (j.is_string() || j.is_number_integer()) return RatFun(FieldElem(rational_from_json(j)));
  only_keys(j, {"num", "den"});
  Poly num = poly_from_json(need(j, "num"));
  Poly den = j.contains("den") ? poly_from_json(j["den"]) : Poly(1);
  if (den.is_zero()) malformed("zero denominator");
  return RatFun(std::move(num), std::move(den));
}

Json to_json(const Place& v) {
  if (v.is_infinity()) return {{"type", "infinity"}};
  return {{"type", "finite"}, {"poly", to_json(v.cluster())}};
}

Json to_json(const WeierstrassModel& m) {
  Json a = Json::array();
  for (const auto& c : m.a) a.push_back(to_json(c));
  Json chart = m.s_chart ? Json{{"s", *m.s_chart}} : Json("t");
  return {{"a", a}, {"chart", chart}, {"field", m.is_rational() ? "Q" : "Qzeta8"}};
}

WeierstrassModel model_from_json(const Json& j) {
  only_keys(j, {"a", "chart", "field"});
  const Json& a = need(j, "a");
  if (!a.is_array() || a.size() != 5) malformed("\"a\" must list a1, a2, a3, a4, a6");
  WeierstrassModel m = WeierstrassModel::from(ratfun_from_json(a[0]), ratfun_from_json(a[1]),
                                              ratfun_from_json(a[2]), ratfun_from_json(a[3]),
                                              ratfun_from_json(a[4]));
  if (j.contains("chart")) {
    const Json& c = j["chart"];
    if (c.is_object()) {
      const Json& n = need(c, "s");
      if (!n.is_number_integer() || n.get<int>() < 1) malformed("chart weight must be a positive integer");
      m.s_chart = n.get<int>();
    } else if (c != "t") {
      malformed("chart must be \"t\" or {\"s\": n}");
    }
  }
  if (j.contains("field")) {
    const Json& f = j["field"];
    if (f != "Q" && f != "Qzeta8") malformed("field must be \"Q\" or \"Qzeta8\"");
    if (f == "Q" && !m.is_rational()) malformed("field \"Q\" with non-rational coefficients");
  }
  return m;
}

Json to_json(const CurvePoint& p) {
  if (p.is_zero()) return "O";
  return {{"x", to_json(p.x())}, {"y", to_json(p.y())}};
}

CurvePoint point_from_json(const Json& j) {
  if (j == "O") return CurvePoint();
  only_keys(j, {"x", "y"});
  return CurvePoint(ratfun_from_json(need(j, "x")), ratfun_from_json(need(j, "y")));
}

Json to_json(const KodairaFiber& f) {
  return {{"place", to_json(f.place)}, {"type", f.type.name()}, {"components", f.components},
          {"group", f.group_order},    {"count", f.count},        {"v_delta", f.v_delta}};
}

Json to_json(const SurfaceSummary& s) {
  Json fibers = Json::array();
  int total = 0;
  for (const auto& f : s.fibers) {
    fibers.push_back(to_json(f));
    total += f.count * f.type.components();
  }
  return {{"chi", s.chi}, {"pg", s.pg}, {"fibers", fibers}, {"euler_number", total}};
}

Json to_json(const GramReport& g) {
  Json rows = Json::array();
  for (const auto& row : g.matrix) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    rows.push_back(r);
  }
  return {{"matrix", rows}, {"det", to_json(g.det)}};
}

Json to_json(const TorsionReport& t) {
  return {{"structure", t.structure}, {"generators", points_json(t.generators)}, {"bound", t.bound},
          {"group", t.describe()}};
}

Json to_json(const Certificate& c) {
  Json stages = Json::array();
  for (const auto& s : c.stages) {
    stages.push_back({{"name", s.name}, {"status", s.passed ? "PASS" : "FAIL"}, {"detail", s.detail}});
  }
  return {{"status", c.passed() ? "PASS" : "FAIL"}, {"stages", stages}};
}

Json to_json(const DescentImage& d) { return Json::array({square_class_json(d.first), square_class_json(d.second)}); }

Json to_json(const QbarCertificate& c) {
  Json out = to_json(c.certificate);
  if (!c.certificate.passed()) return out;
  Json images = Json::array();
  for (const auto& d : c.images) images.push_back(to_json(d));
  out["fibers"] = to_json(c.fibers);
  out["trivial_rank"] = c.trivial_rank;
  out["rank"] = c.rank_lower_bound;
  out["rank_upper_bound"] = c.rank_upper_bound;
  out["gram"] = to_json(c.gram);
  out["scaled_gram"] = to_json(c.scaled_gram);
  out["torsion"] = c.torsion_structure;
  out["index_bound"] = c.index_bound;
  out["descent_images"] = images;
  out["generators"] = named_points(c.generators, {"P1", "P2", "T1", "T2"});
  return out;
}

Json to_json(const QtStructure& s) {
  Json out = to_json(s.certificate);
  if (!s.certificate.passed()) return out;
  Json tau = Json::array();
  for (const auto& row : s.tau_table) tau.push_back({{"point", row.point}, {"image", row.image}});
  out["rank"] = s.rank;
  out["torsion"] = s.torsion_structure;
  out["fixed_index"] = s.fixed_index;
  out["generators"] = named_points(s.generators, s.generator_names);
  out["tau"] = tau;
  return out;
}

Json to_json(const RankThreeExample& e) {
  Json out = to_json(e.certificate);
  out["rank"] = e.rank;
  out["torsion"] = e.torsion_structure;
  out["e3"] = to_json(e.e3);
  out["e4"] = to_json(e.e4);
  out["generators"] = named_points(e.e4_generators, e.generator_names);
  out["gram"] = to_json(e.gram);
  return out;
}

PythagoreanTriple triple_from_json(const Json& j) {
  if (!j.is_object()) malformed("a family is an object");
  if (j.contains("h1") || j.contains("h2")) {
    only_keys(j, {"h1", "h2"});
    return triple_from_generators(poly_from_json(need(j, "h1")), poly_from_json(need(j, "h2")));
  }
  only_keys(j, {"f", "g", "h"});
  return make_triple(poly_from_json(need(j, "f")), poly_from_json(need(j, "g")), poly_from_json(need(j, "h")));
}

Json to_json(const PythagoreanTriple& t) {
  Json out = {{"f", to_json(t.f)}, {"g", to_json(t.g)}, {"h", to_json(t.h)}};
  if (t.generators) {
    out["h1"] = to_json(t.generators->first);
    out["h2"] = to_json(t.generators->second);
  }
  return out;
}

Quadric quadric_from_json(const Json& j) {
  only_keys(j, {"alpha", "beta", "gamma"});
  return Quadric(rational_from_json(need(j, "alpha")), rational_from_json(need(j, "beta")),
                 rational_from_json(need(j, "gamma")));
}

Json to_json(const Quadric& q) {
  return {{"alpha", to_json(q.alpha)},
          {"beta", to_json(q.beta)},
          {"gamma", to_json(q.gamma)},
          {"alpha_beta_gamma", to_json(q.abc_product)},
          {"beta2_plus_4_alpha_gamma", to_json(q.side_quantity)}};
}

Json to_json(const RationalTriple& t) { return Json::array({to_json(t.a), to_json(t.b), to_json(t.c)}); }

Json to_json(const ParamSolution& s) {
  return {{"f", to_json(s.f)}, {"g", to_json(s.g)}, {"h", to_json(s.h)}, {"base_point", to_json(s.base_point)}};
}

Json to_json(const RankCertificate& c) {
  return {{"rank_lower_bound", c.rank_lower_bound},
          {"unconditional_checks",
           {{"on_curve", c.on_curve}, {"non_torsion", c.non_torsion}, {"descent_rank_bound", c.descent_rank_bound}}},
          {"caveat", c.caveat},
          {"claim", c.describe()}};
}

Json to_json(const QuadricFamily& f) {
  Json out = to_json(f.sol);
  out["quadric"] = to_json(f.quadric);
  out["model"] = to_json(f.model);
  out["Q1"] = f.q1 ? to_json(*f.q1) : Json(nullptr);
  out["Q2"] = f.q2 ? to_json(*f.q2) : Json(nullptr);
  out["rank_bound"] = f.rank_bound;
  return out;
}

Json to_json(const Specialization& s) {
  return {{"t0", to_json(s.t0)},
          {"triple", to_json(s.triple)},
          {"curve", to_json(s.curve)},
          {"points", named_points(s.points, s.labels)},
          {"certificate", to_json(s.certificate)}};
}

Json to_json(const Rank3Member& r) {
  return {{"t0", to_json(r.t0)},
          {"triple", to_json(r.triple)},
          {"curve", to_json(r.curve)},
          {"witness", to_json(r.witness)},
          {"points", named_points(r.points, {"Q1", "Q2", "Q3"})},
          {"certificate", to_json(r.certificate)}};
}

QuadricFamily quadric_family_from_json(const Json& j) {
  only_keys(j, {"alpha", "beta", "gamma", "f", "g", "h", "base_point"});
  auto coeff = [&](const char* k) { return j.contains(k) ? rational_from_json(j[k]) : Rational(1); };
  Quadric q(coeff("alpha"), coeff("beta"), coeff("gamma"));
  ParamSolution sol{poly_from_json(need(j, "f")), poly_from_json(need(j, "g")), poly_from_json(need(j, "h")), {}};
  if (!sol.f.is_rational() || !sol.g.is_rational() || !sol.h.is_rational()) {
    fail(ErrorKind::UnsupportedInput, "a family specialized over Q needs f, g, h in Q[t]");
  }
  return family_of(q, sol);
}

Json error_json(const Error& e) { return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace ellsurf
