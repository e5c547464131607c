#include "ellsurf/weierstrass.hpp"

#include <algorithm>

#include "ellsurf/error.hpp"
#include "ellsurf/roots.hpp"

namespace ellsurf {

WeierstrassModel WeierstrassModel::from(RatFun a1, RatFun a2, RatFun a3, RatFun a4, RatFun a6) {
  WeierstrassModel m;
  m.a = {std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)};
  return m;
}

WeierstrassModel WeierstrassModel::short_form(RatFun a2, RatFun a4, RatFun a6) {
  return from(RatFun(), std::move(a2), RatFun(), std::move(a4), std::move(a6));
}

bool WeierstrassModel::is_integral() const {
  return std::all_of(a.begin(), a.end(), [](const RatFun& c) { return c.is_polynomial(); });
}

bool WeierstrassModel::is_rational() const {
  return std::all_of(a.begin(), a.end(), [](const RatFun& c) { return c.is_rational(); });
}

bool WeierstrassModel::is_constant() const {
  return std::all_of(a.begin(), a.end(), [](const RatFun& c) { return c.is_constant(); });
}

WeierstrassModel WeierstrassModel::galois(int k) const {
  WeierstrassModel m = *this;
  for (auto& c : m.a) c = c.galois(k);
  return m;
}

bool CoordinateChange::is_admissible() const { return u.is_constant() && !u.is_zero(); }

CoordinateChange CoordinateChange::compose(const CoordinateChange& then) const {
  CoordinateChange c;
  c.u = u * then.u;
  c.r = u * u * then.r + r;
  c.s = u * then.s + s;
  c.w = pow(u, 3) * then.w + u * u * s * then.r + w;
  return c;
}

CoordinateChange CoordinateChange::inverse() const {
  if (u.is_zero()) fail(ErrorKind::DivisionByZero, "coordinate change with u = 0");
  CoordinateChange c;
  c.u = u.inverse();
  c.r = -r / (u * u);
  c.s = -s / u;
  c.w = (r * s - w) / pow(u, 3);
  return c;
}

WeierstrassModel transform(const WeierstrassModel& m, const CoordinateChange& c) {
  if (c.u.is_zero()) fail(ErrorKind::DivisionByZero, "coordinate change with u = 0");
  const RatFun &a1 = m.a1(), &a2 = m.a2(), &a3 = m.a3(), &a4 = m.a4(), &a6 = m.a6();
  const RatFun &u = c.u, &r = c.r, &s = c.s, &w = c.w;
  RatFun u2 = u * u;
  WeierstrassModel out;
  out.s_chart = m.s_chart;
  out.a[0] = (a1 + RatFun(2) * s) / u;
  out.a[1] = (a2 - s * a1 + RatFun(3) * r - s * s) / u2;
  out.a[2] = (a3 + r * a1 + RatFun(2) * w) / (u2 * u);
  out.a[3] = (a4 - s * a3 + RatFun(2) * r * a2 - (w + r * s) * a1 + RatFun(3) * r * r -
              RatFun(2) * s * w) /
             (u2 * u2);
  out.a[4] = (a6 + r * a4 + r * r * a2 + pow(r, 3) - w * a3 - w * w - r * w * a1) / (u2 * u2 * u2);
  return out;
}

StandardInvariants standard_invariants(const WeierstrassModel& m) {
  const RatFun &a1 = m.a1(), &a2 = m.a2(), &a3 = m.a3(), &a4 = m.a4(), &a6 = m.a6();
  StandardInvariants inv;
  inv.b2 = a1 * a1 + RatFun(4) * a2;
  inv.b4 = RatFun(2) * a4 + a1 * a3;
  inv.b6 = a3 * a3 + RatFun(4) * a6;
  inv.b8 = a1 * a1 * a6 + RatFun(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  inv.c4 = inv.b2 * inv.b2 - RatFun(24) * inv.b4;
  inv.c6 = -pow(inv.b2, 3) + RatFun(36) * inv.b2 * inv.b4 - RatFun(216) * inv.b6;
  inv.delta = -inv.b2 * inv.b2 * inv.b8 - RatFun(8) * pow(inv.b4, 3) - RatFun(27) * inv.b6 * inv.b6 +
              RatFun(9) * inv.b2 * inv.b4 * inv.b6;
  return inv;
}

RatFun StandardInvariants::j() const {
  if (delta.is_zero()) fail(ErrorKind::SingularModel, "j-invariant of a singular model");
  return pow(c4, 3) / delta;
}

std::vector<RatFun> two_division_roots(const WeierstrassModel& m) {
  StandardInvariants inv = standard_invariants(m);
  return cubic_roots(inv.b2 / RatFun(4), inv.b4 / RatFun(2), inv.b6 / RatFun(4), !m.is_rational());
}

namespace {

void require_integral(const WeierstrassModel& m) {
  if (!m.is_integral()) fail(ErrorKind::NonPolynomial, "model coefficients are not all polynomials");
}

bool fails_criterion(const Place& v, const StandardInvariants& inv) {
  auto vd = valuation(v, inv.delta);
  auto vc = valuation(v, inv.c4);
  return (!vd || *vd >= 12) && (!vc || *vc >= 4);
}

std::vector<Poly> bad_sources(const StandardInvariants& inv) {
  std::vector<Poly> src{inv.delta.num()};
  if (!inv.c4.is_zero()) src.push_back(inv.c4.num());
  return src;
}

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

int chart_weight(const WeierstrassModel& m) {
  int n = 0;
  for (size_t i = 0; i < 5; ++i) {
    if (m.a[i].is_zero()) continue;
    n = std::max(n, ceil_div(m.a[i].degree(), kCoefficientWeights[i]));
  }
  return n;
}

WeierstrassModel infinity_chart(const WeierstrassModel& m, int n) {
  if (n < 0) fail(ErrorKind::DegreeOverflow, "negative chart weight");
  WeierstrassModel out;
  for (size_t i = 0; i < 5; ++i) {
    const RatFun& c = m.a[i];
    int w = kCoefficientWeights[i] * n;
    if (!c.is_zero() && c.is_polynomial() && c.degree() > w) {
      fail(ErrorKind::DegreeOverflow, "coefficient degree exceeds n*i in the chart at infinity");
    }
    out.a[i] = c.to_s_chart(w);
  }
  if (m.s_chart) {
    out.s_chart.reset();
  } else {
    out.s_chart = n;
  }
  return out;
}

WeierstrassModel model_at_infinity(const WeierstrassModel& m) {
  return infinity_chart(m, chart_weight(m));
}

MinimalityVerdict is_globally_minimal(const WeierstrassModel& m) {
  require_integral(m);
  StandardInvariants inv = standard_invariants(m);
  if (inv.delta.is_zero()) fail(ErrorKind::SingularModel, "discriminant vanishes identically");
  for (const auto& c : gcd_free_basis(bad_sources(inv)).clusters) {
    Place v = Place::finite(c);
    if (fails_criterion(v, inv)) return {false, v};
  }
  StandardInvariants at_inf = standard_invariants(model_at_infinity(m));
  if (fails_criterion(Place::finite(Poly::t()), at_inf)) return {false, Place::infinity()};
  return {true, std::nullopt};
}

int euler_characteristic(const WeierstrassModel& m) {
  auto verdict = is_globally_minimal(m);
  if (!verdict.minimal) fail(ErrorKind::NotMinimal, "model is not globally minimal");
  return chart_weight(m);
}

MinimalModel minimize(const WeierstrassModel& m) {
  MinimalModel out{m, CoordinateChange{}};
  if (m.is_integral()) {
    if (is_globally_minimal(m).minimal) return out;
  }
  // Clear denominators: u = 1/D scales a_i by D^i.
  Poly lcm(1);
  for (const auto& c : m.a) lcm = lcm * (c.den() / poly_gcd(lcm, c.den()));
  CoordinateChange change;
  change.u = RatFun(Poly(1), lcm);
  WeierstrassModel cur = transform(m, change);

  // Reduced form y^2 = x^3 + A x + B: complete the square, then kill a2.
  CoordinateChange square;
  square.s = -cur.a1() / RatFun(2);
  square.w = -cur.a3() / RatFun(2);
  cur = transform(cur, square);
  change = change.compose(square);
  CoordinateChange shift;
  shift.r = -cur.a2() / RatFun(3);
  cur = transform(cur, shift);
  change = change.compose(shift);

  StandardInvariants inv = standard_invariants(cur);
  if (inv.delta.is_zero()) fail(ErrorKind::SingularModel, "discriminant vanishes identically");
  for (const auto& c : gcd_free_basis(bad_sources(inv)).clusters) {
    Place v = Place::finite(c);
    while (fails_criterion(v, inv)) {
      CoordinateChange scale;
      scale.u = RatFun(c);
      cur = transform(cur, scale);
      change = change.compose(scale);
      inv = standard_invariants(cur);
    }
  }
  if (!cur.is_integral() || !is_globally_minimal(cur).minimal) {
    fail(ErrorKind::NotMinimal, "minimization did not converge");
  }
  return {cur, change};
}

// ---------------------------------------------------------------------------
// Kodaira types

std::string FiberType::name() const {
  switch (kind) {
    case FiberKind::In: return "I" + std::to_string(n);
    case FiberKind::II: return "II";
    case FiberKind::III: return "III";
    case FiberKind::IV: return "IV";
    case FiberKind::InStar: return "I" + std::to_string(n) + "*";
    case FiberKind::IVStar: return "IV*";
    case FiberKind::IIIStar: return "III*";
    case FiberKind::IIStar: return "II*";
  }
  return "?";
}

int FiberType::components() const {
  switch (kind) {
    case FiberKind::In: return std::max(n, 1);
    case FiberKind::II: return 1;
    case FiberKind::III: return 2;
    case FiberKind::IV: return 3;
    case FiberKind::InStar: return n + 5;
    case FiberKind::IVStar: return 7;
    case FiberKind::IIIStar: return 8;
    case FiberKind::IIStar: return 9;
  }
  return 0;
}

int FiberType::group_order() const {
  switch (kind) {
    case FiberKind::In: return std::max(n, 1);
    case FiberKind::II: return 1;
    case FiberKind::III: return 2;
    case FiberKind::IV: return 3;
    case FiberKind::InStar: return 4;
    case FiberKind::IVStar: return 3;
    case FiberKind::IIIStar: return 2;
    case FiberKind::IIStar: return 1;
  }
  return 0;
}

FiberType kodaira_type(std::optional<int> v_c4, int v_delta) {
  if (v_c4 && *v_c4 == 0) return {FiberKind::In, v_delta};
  if (v_delta == 0) return {FiberKind::In, 0};
  if (v_delta == 6) return {FiberKind::InStar, 0};
  if (v_c4 && *v_c4 == 2 && v_delta > 6) return {FiberKind::InStar, v_delta - 6};
  switch (v_delta) {
    case 2: return {FiberKind::II, 0};
    case 3: return {FiberKind::III, 0};
    case 4: return {FiberKind::IV, 0};
    case 8: return {FiberKind::IVStar, 0};
    case 9: return {FiberKind::IIIStar, 0};
    case 10: return {FiberKind::IIStar, 0};
    default: break;
  }
  fail(ErrorKind::Unclassifiable, "valuation pattern (v(c4), v(delta)) matches no Kodaira type");
}

namespace {

KodairaFiber make_fiber(const Place& place, const Place& local, const StandardInvariants& inv) {
  int vd = *valuation(local, inv.delta);
  FiberType type = kodaira_type(valuation(local, inv.c4), vd);
  KodairaFiber f{place, type, type.components(), type.group_order(), place.count(), vd};
  return f;
}

}  // namespace

SurfaceSummary classify_fibers(const WeierstrassModel& m, const std::vector<Poly>& extra_sources) {
  int chi = euler_characteristic(m);
  StandardInvariants inv = standard_invariants(m);
  SurfaceSummary out;
  out.chi = chi;
  out.pg = std::max(chi - 1, 0);
  // Where two roots of the 2-division cubic collide separates clusters that
  // the discriminant alone would merge.
  std::vector<Poly> sources = bad_sources(inv);
  auto roots = two_division_roots(m);
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) sources.push_back((roots[i] - roots[j]).num());
  }
  for (const auto& p : extra_sources) {
    if (p.degree() > 0) sources.push_back(p);
  }
  for (const auto& c : gcd_free_basis(sources).clusters) {
    Place v = Place::finite(c);
    if (*valuation(v, inv.delta) == 0) continue;
    out.fibers.push_back(make_fiber(v, v, inv));
  }
  StandardInvariants at_inf = standard_invariants(infinity_chart(m, chi));
  Place s0 = Place::finite(Poly::t());
  if (*valuation(s0, at_inf.delta) > 0) out.fibers.push_back(make_fiber(Place::infinity(), s0, at_inf));
  out.no_singular_fibers = out.fibers.empty();
  return out;
}

}  // namespace ellsurf
