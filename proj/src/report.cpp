#include "ellsurf/report.hpp"

#include "ellsurf/roots.hpp"

namespace ellsurf {

namespace {

// y^2 = x (x - F)(x - G) with F, G squares of polynomials: (f, g), deg f >= deg g.
std::optional<std::pair<Poly, Poly>> family_shape(const WeierstrassModel& m) {
  if (!m.a1().is_zero() || !m.a3().is_zero() || !m.a6().is_zero() || m.s_chart) return std::nullopt;
  auto roots = quadratic_roots(RatFun(1), m.a2(), m.a4(), true);
  if (roots.size() != 2) return std::nullopt;
  auto f = ratfun_sqrt(roots[0]), g = ratfun_sqrt(roots[1]);
  if (!f || !g || !f->is_polynomial() || !g->is_polynomial()) return std::nullopt;
  if (f->degree() < g->degree()) std::swap(f, g);
  return std::make_pair(f->num(), g->num());
}

}  // namespace

Json analyze_report(const WeierstrassModel& input) {
  Json out;
  auto verdict = is_globally_minimal(input);
  out["minimal"] = verdict.minimal;
  WeierstrassModel m = input;
  if (!verdict.minimal) {
    out["non_minimal_place"] = to_json(*verdict.place);
    m = minimize(input).model;
    out["minimal_model"] = to_json(m);
  }
  out["chi"] = euler_characteristic(m);
  out["delta"] = to_json(standard_invariants(m).delta);
  out["fibers"] = to_json(classify_fibers(m));
  return out;
}

TorsionReport torsion_of(const WeierstrassModel& m, bool over_q) {
  if (over_q) return torsion_over_Q(m);
  auto shape = family_shape(m);
  if (!shape) {
    fail(ErrorKind::UnsupportedInput,
         "torsion over k(t) needs a curve y^2 = x (x - f^2)(x - g^2); use the over-Q mode for a curve over Q");
  }
  return torsion_structure_family(shape->first, shape->second);
}

Json family_report(const PythagoreanTriple& t, FamilyCertificate mode, bool& passed) {
  Json j;
  passed = true;
  if (mode == FamilyCertificate::Qbar) {
    auto c = mw_certificate_qbar(t);
    j = to_json(c);
    passed = c.certificate.passed();
  } else if (mode == FamilyCertificate::Qt) {
    auto s = mw_structure_qt(t);
    j = to_json(s);
    passed = s.certificate.passed();
  } else {
    auto p = canonical_points(t);
    j["curve"] = to_json(curve_of(t));
    j["points"] = {{"P1", to_json(p.P1)}, {"P2", to_json(p.P2)}, {"T1", to_json(p.T1)},
                   {"T2", to_json(p.T2)}, {"Q1", to_json(p.Q1)}, {"Q2", to_json(p.Q2)}};
  }
  j["triple"] = to_json(t);
  return j;
}

Json descent_report(const PythagoreanTriple& t, const std::vector<CurvePoint>& points) {
  auto m = curve_of(t);
  Json images = Json::array();
  std::vector<DescentImage> all;
  for (const auto& p : points) {
    require_on_curve(m, p);
    all.push_back(descent_image(t, p));
    images.push_back({{"point", to_json(p)}, {"image", to_json(all.back())}});
  }
  return {{"images", images}, {"independent", descent_images_independent(all)}};
}

}  // namespace ellsurf
