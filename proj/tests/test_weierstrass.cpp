#include <map>

#include "doctest.h"
#include "ellsurf/error.hpp"
#include "ellsurf/weierstrass.hpp"
#include "support.hpp"

using namespace ellsurf;
using testing_support::Gen;
using testing_support::P;
using testing_support::T;

namespace {

WeierstrassModel family_model(const Poly& f, const Poly& g) {
  Poly f2 = f * f, g2 = g * g;
  return WeierstrassModel::short_form(RatFun(-(f2 + g2)), RatFun(f2 * g2), RatFun());
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::MalformedInput;  // sentinel: nothing thrown
}

// Small random model with polynomial coefficients of bounded degree.
WeierstrassModel random_model(Gen& gen) {
  WeierstrassModel m;
  for (size_t i = 0; i < 5; ++i) m.a[i] = RatFun(gen.poly(kCoefficientWeights[i] / 2 + 1));
  return m;
}

CoordinateChange random_admissible(Gen& gen) {
  CoordinateChange c;
  c.u = RatFun(gen.nonzero_rational(5));
  c.r = RatFun(gen.poly(2));
  c.s = RatFun(gen.poly(1));
  c.w = RatFun(gen.poly(3));
  return c;
}

std::map<std::string, int> type_census(const SurfaceSummary& s) {
  std::map<std::string, int> out;
  for (const auto& f : s.fibers) out[f.type.name()] += f.count;
  return out;
}

}  // namespace

TEST_CASE("transform examples") {
  auto m = family_model(P({-1, 0, 1}), P({0, 2}));
  CHECK(transform(m, CoordinateChange{}) == m);
  CoordinateChange c;
  c.u = RatFun(T());
  auto m2 = transform(m, c);
  Poly f2 = pow(P({-1, 0, 1}), 2), g2 = pow(P({0, 2}), 2);
  CHECK(m2.a2() == RatFun(-(f2 + g2), pow(T(), 2)));
  CHECK(m2.a4() == RatFun(f2 * g2, pow(T(), 4)));
  CHECK(transform(m2, c.inverse()) == m);
  CHECK(kind_of([&] {
          CoordinateChange z;
          z.u = RatFun();
          transform(m, z);
        }) == ErrorKind::DivisionByZero);
}

TEST_CASE("invariants scale under random changes") {
  Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_model(gen);
    auto c = random_admissible(gen);
    if (trial % 3 == 0) c.u = RatFun(gen.nonzero_poly(1));  // non-admissible u also obeys the law
    auto m2 = transform(m, c);
    auto i1 = standard_invariants(m), i2 = standard_invariants(m2);
    REQUIRE(i2.delta * pow(c.u, 12) == i1.delta);
    REQUIRE(i2.c4 * pow(c.u, 4) == i1.c4);
    REQUIRE(i2.c6 * pow(c.u, 6) == i1.c6);
    REQUIRE(pow(i1.c4, 3) - i1.c6 * i1.c6 == RatFun(1728) * i1.delta);
    REQUIRE(RatFun(4) * i1.b8 == i1.b2 * i1.b6 - i1.b4 * i1.b4);
    if (!i1.delta.is_zero()) REQUIRE(i1.j() == i2.j());
    REQUIRE(transform(m2, c.inverse()) == m);
  }
}

TEST_CASE("transform composition") {
  Gen gen(22);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_model(gen);
    auto c1 = random_admissible(gen), c2 = random_admissible(gen);
    REQUIRE(transform(transform(m, c1), c2) == transform(m, c1.compose(c2)));
  }
}

TEST_CASE("standard invariants examples") {
  Poly f = P({-1, 0, 1}), g = P({0, 2});
  auto inv = standard_invariants(family_model(f, g));
  CHECK(inv.delta == RatFun(Poly(16) * pow(f, 4) * pow(g, 4) * pow(f * f - g * g, 2)));

  auto e = WeierstrassModel::short_form(RatFun(), RatFun(1), RatFun());
  Rational a4 = 1, a6 = 0;
  CHECK(standard_invariants(e).delta == RatFun(FieldElem(Rational(-16 * (4 * a4 * a4 * a4 + 27 * a6 * a6)))));
  CHECK(standard_invariants(e).delta == RatFun(-64));

  auto degenerate = family_model(T(), T());
  auto dinv = standard_invariants(degenerate);
  CHECK(dinv.delta.is_zero());
  CHECK(kind_of([&] { dinv.j(); }) == ErrorKind::SingularModel);
}

TEST_CASE("global minimality examples") {
  auto m = family_model(P({-1, 0, 1}), P({0, 2}));
  CHECK(is_globally_minimal(m).minimal);

  CoordinateChange c;
  c.u = RatFun(Poly(1), T());
  auto scaled = transform(m, c);
  auto v = is_globally_minimal(scaled);
  CHECK_FALSE(v.minimal);
  CHECK(*v.place == Place::finite(T()));

  auto t12 = WeierstrassModel::short_form(RatFun(), RatFun(), RatFun(pow(T(), 12)));
  auto v12 = is_globally_minimal(t12);
  CHECK_FALSE(v12.minimal);
  CHECK(*v12.place == Place::finite(T()));
  auto reduced = minimize(t12);
  CHECK(reduced.model == WeierstrassModel::short_form(RatFun(), RatFun(), RatFun(1)));
  CHECK(is_globally_minimal(reduced.model).minimal);

  auto nonpoly = WeierstrassModel::short_form(RatFun(), RatFun(Poly(1), T()), RatFun(1));
  CHECK(kind_of([&] { is_globally_minimal(nonpoly); }) == ErrorKind::NonPolynomial);
}

TEST_CASE("minimality at infinity") {
  // x -> x + t^4 turns a constant model into one that only looks like chi = 2.
  auto base = WeierstrassModel::short_form(RatFun(), RatFun(1), RatFun(1));
  CoordinateChange c;
  c.r = RatFun(pow(T(), 4));
  auto moved = transform(base, c);
  auto v = is_globally_minimal(moved);
  CHECK_FALSE(v.minimal);
  CHECK(v.place->is_infinity());
  auto mm = minimize(moved);
  CHECK(is_globally_minimal(mm.model).minimal);
  CHECK(standard_invariants(mm.model).j() == standard_invariants(base).j());
  CHECK(transform(moved, mm.change) == mm.model);
}

TEST_CASE("minimize recovers scaled models") {
  Gen gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    Poly f = gen.nonzero_poly(2), g = gen.nonzero_poly(2);
    if (f.degree() < 1 || poly_gcd(f, g).degree() > 0) continue;
    auto m = family_model(f, g);
    if (standard_invariants(m).delta.is_zero()) continue;
    CoordinateChange c;
    c.u = RatFun(Poly(1), gen.nonzero_poly(2));
    auto mm = minimize(transform(m, c));
    REQUIRE(is_globally_minimal(mm.model).minimal);
    auto i0 = standard_invariants(m), i1 = standard_invariants(mm.model);
    REQUIRE(i0.j() == i1.j());
    // minimal discriminants agree up to a constant
    REQUIRE(i0.delta.num().monic() == i1.delta.num().monic());
  }
}

TEST_CASE("euler characteristic examples") {
  CHECK(euler_characteristic(family_model(P({-1, 0, 1}), P({0, 2}))) == 2);
  CHECK(euler_characteristic(family_model(P({-1, 0, 1}), P({1, 0, 1}))) == 2);
  CHECK(euler_characteristic(WeierstrassModel::short_form(RatFun(), RatFun(1), RatFun(T()))) == 1);
  auto t12 = WeierstrassModel::short_form(RatFun(), RatFun(), RatFun(pow(T(), 12)));
  CHECK(kind_of([&] { euler_characteristic(t12); }) == ErrorKind::NotMinimal);
}

TEST_CASE("infinity chart examples") {
  Poly f = P({-1, 0, 1}), g = P({0, 2});
  auto m = family_model(f, g);
  auto s = infinity_chart(m, 2);
  REQUIRE(s.s_chart == 2);
  RatFun fs = RatFun(f).to_s_chart(2), gs = RatFun(g).to_s_chart(2);
  CHECK(s.a2() == -(fs * fs + gs * gs));
  CHECK(s.a4() == fs * fs * gs * gs);
  CHECK(infinity_chart(s, 2) == m);

  auto c = WeierstrassModel::from(RatFun(1), RatFun(2), RatFun(3), RatFun(4), RatFun(5));
  auto cs = infinity_chart(c, 3);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(cs.a[i] == RatFun(Poly::monomial(c.a[i].num().leading(), 3 * kCoefficientWeights[i])));
  }
  CHECK(kind_of([&] { infinity_chart(m, 1); }) == ErrorKind::DegreeOverflow);
}

TEST_CASE("fiber classification examples") {
  Poly f = P({-1, 0, 1}), g = P({0, 2});
  auto s = classify_fibers(family_model(f, g));
  CHECK(s.chi == 2);
  CHECK(s.pg == 1);
  REQUIRE(s.fibers.size() == 4);
  CHECK(s.fibers[0].place == Place::finite(T()));
  CHECK(s.fibers[0].type.name() == "I4");
  CHECK(s.fibers[0].count == 1);
  CHECK(s.fibers[1].place == Place::finite(f));
  CHECK(s.fibers[1].type.name() == "I4");
  CHECK(s.fibers[1].count == 2);
  CHECK(s.fibers[2].place == Place::finite(P({1, 0, -6, 0, 1})));
  CHECK(s.fibers[2].type.name() == "I2");
  CHECK(s.fibers[2].count == 4);
  CHECK(s.fibers[3].place.is_infinity());
  CHECK(s.fibers[3].type.name() == "I4");
  int components = 0;
  for (const auto& fb : s.fibers) components += fb.count * fb.components;
  CHECK(components == 24);

  auto s2 = classify_fibers(family_model(P({-1, 0, 1}), P({1, 0, 1})));
  auto census = type_census(s2);
  CHECK(census == std::map<std::string, int>{{"I4", 6}});
  CHECK(s2.fibers.back().place.is_infinity());

  auto add = classify_fibers(WeierstrassModel::short_form(RatFun(), RatFun(), RatFun(pow(T(), 2))));
  REQUIRE(!add.fibers.empty());
  CHECK(add.fibers[0].place == Place::finite(T()));
  CHECK(add.fibers[0].type.name() == "IV");
  CHECK(add.fibers[0].group_order == 3);

  auto smooth = classify_fibers(WeierstrassModel::short_form(RatFun(), RatFun(1), RatFun(1)));
  CHECK(smooth.no_singular_fibers);
}

TEST_CASE("kodaira table") {
  CHECK(kodaira_type(0, 5).name() == "I5");
  CHECK(kodaira_type(std::nullopt, 2).name() == "II");
  CHECK(kodaira_type(1, 3).name() == "III");
  CHECK(kodaira_type(2, 6).name() == "I0*");
  CHECK(kodaira_type(2, 9).name() == "I3*");
  CHECK(kodaira_type(3, 8).name() == "IV*");
  CHECK(kodaira_type(3, 9).name() == "III*");
  CHECK(kodaira_type(4, 10).name() == "II*");
  CHECK(kodaira_type(2, 9).components() == 8);
  CHECK(kind_of([] { kodaira_type(4, 12); }) == ErrorKind::Unclassifiable);
}

TEST_CASE("family fibers follow the multiplicity rule") {
  Gen gen(24);
  int checked = 0;
  while (checked < 50) {
    Poly f = gen.poly(2), g = gen.poly(2);
    if (f.degree() != 2 || g.is_zero() || poly_gcd(f, g).degree() > 0) continue;
    Poly d = f * f - g * g;
    if (d.is_zero()) continue;
    auto m = family_model(f, g);
    auto s = classify_fibers(m);
    REQUIRE(s.chi == 2);
    int twelve_chi = 0;
    for (const auto& fb : s.fibers) {
      twelve_chi += fb.count * fb.v_delta;
      REQUIRE(fb.type.kind == FiberKind::In);
      if (fb.place.is_infinity()) {
        REQUIRE(fb.type.n == 8 * f.degree() - 4 * std::max(g.degree(), 0) - 2 * d.degree());
        continue;
      }
      const Place& v = fb.place;
      int ef = *valuation(v, f), eg = *valuation(v, g), ed = *valuation(v, d);
      if (ef > 0) REQUIRE(fb.type.n == 4 * ef);
      if (eg > 0) REQUIRE(fb.type.n == 4 * eg);
      if (ed > 0) REQUIRE(fb.type.n == 2 * ed);
    }
    REQUIRE(twelve_chi == 24);
    ++checked;
  }
}

TEST_CASE("minimality verdict is invariant under admissible changes") {
  Gen gen(25);
  for (int trial = 0; trial < 60; ++trial) {
    Poly f = gen.poly(2), g = gen.poly(2);
    if (f.degree() != 2 || g.is_zero() || poly_gcd(f, g).degree() > 0) continue;
    auto m = family_model(f, g);
    if (standard_invariants(m).delta.is_zero()) continue;
    auto c = random_admissible(gen);
    auto m2 = transform(m, c);
    REQUIRE(is_globally_minimal(m2).minimal == is_globally_minimal(m).minimal);
    REQUIRE(euler_characteristic(m2) == euler_characteristic(m));
  }
}
