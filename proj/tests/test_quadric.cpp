#include <doctest.h>

#include "ellsurf/quadric.hpp"
#include "ellsurf/roots.hpp"
#include "ellsurf/torsion.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

Rational x_of(const CurvePoint& p) { return p.x().num().coeff(0).rational(); }

Poly at_t(const Poly& p, const Poly& s) {
  Poly out;
  for (int i = p.degree(); i >= 0; --i) out = out * s + Poly(p.coeff(i));
  return out;
}

// Oracle for the set S: direct substitution u = -16 t / (t^2 - 10).
RationalTriple s_member(const Rational& t) {
  Rational u = -16 * t / (t * t - 10);
  return {u * u + 32, -16 * u, -(u * u - 32)};
}

}  // namespace

TEST_CASE("quadric nondegeneracy") {
  Quadric q(1, 1, 2);
  CHECK(q.abc_product == 2);
  CHECK(q.side_quantity == 9);
  CHECK(error_kind_of([] { Quadric(0, 1, 2); }) == ErrorKind::DegenerateConic);
  CHECK(error_kind_of([] { Quadric(1, 1, 0); }) == ErrorKind::DegenerateConic);
  CHECK(error_kind_of([] { Quadric(1, 2, -1); }) == ErrorKind::DegenerateConic);  // 4 - 4 = 0
}

TEST_CASE("parametrize a^2 + b^2 = 2 c^2 from (1, 1, 1)") {
  Quadric q(1, 1, 2);
  auto sol = parametrize(q, {1, 1, 1});
  CHECK(is_parametrization(q, sol.f, sol.g, sol.h));
  CHECK(sol.f.degree() == 2);
  CHECK(sol.h.degree() == 2);
  CHECK(sol.g.degree() <= 2);
  CHECK(sol.base_point == RationalTriple{1, 1, 1});
  // scan starts with the direction (t, 1, 0)
  CHECK(sol.f == P({1, -2, -1}));
  CHECK(sol.g == P({-1, -2, 1}));
  CHECK(sol.h == P({1, 0, 1}));
  // the printed instance, equal to ours after t -> -t
  Poly a = P({1, 2, -1}), b = P({-1, 2, 1}), c = P({1, 0, 1});
  CHECK(is_parametrization(q, a, b, c));
  CHECK(at_t(sol.f, -T()) == a);
  CHECK_FALSE(is_parametrization(q, a, b, c + P({1})));

  CHECK(error_kind_of([&] { parametrize(q, {1, 0, 1}); }) == ErrorKind::PointNotOnQuadric);
  CHECK(error_kind_of([&] { parametrize(q, {0, 0, 0}); }) == ErrorKind::PointNotOnQuadric);
}

TEST_CASE("parametrize -2 a^2 + b^2 = -2 c^2") {
  Quadric q(-2, 1, -2);
  auto sol = parametrize(q, {1, 0, 1});
  CHECK(is_parametrization(q, sol.f, sol.g, sol.h));
  CHECK(sol.f == P({1, 0, 2}));
  CHECK(sol.g == P({0, 4}));
  CHECK(sol.h == P({1, 0, -2}));
  auto s1 = rank3_parametrization();
  CHECK(is_parametrization(q, s1.f, s1.g, s1.h));
  CHECK(s1.f.degree() == 2);
  CHECK(s1.g.degree() == 1);
  CHECK(s1.h.degree() == 2);
  // t -> -t/8 and scaling by 32 turn ours into the printed one
  Poly s = P({Rational(0), Rational(-1, 8)});
  CHECK(at_t(sol.f, s) * Poly(32) == s1.f);
  CHECK(at_t(sol.g, s) * Poly(32) == s1.g);
  CHECK(at_t(sol.h, s) * Poly(32) == s1.h);
}

TEST_CASE("parametrization identity on random conics") {
  Gen gen(9001);
  int done = 0;
  while (done < 200) {
    RationalTriple p0{gen.rational(9), gen.rational(9), gen.nonzero_rational(9)};
    Rational alpha = gen.nonzero_rational(9), beta = gen.nonzero_rational(9);
    Rational gamma = (alpha * p0.a * p0.a + beta * p0.b * p0.b) / (p0.c * p0.c);
    if (gamma == 0 || beta * beta + 4 * alpha * gamma == 0) continue;
    Quadric q(alpha, beta, gamma);
    auto sol = parametrize(q, p0);
    REQUIRE(is_parametrization(q, sol.f, sol.g, sol.h));
    CHECK(sol.f.degree() == 2);
    CHECK(sol.h.degree() == 2);
    CHECK(sol.g.degree() <= 2);
    for (int i = 0; i < 3; ++i) {
      FieldElem t0(gen.rational(20));
      CHECK(q.eval(sol.f.eval(t0).rational(), sol.g.eval(t0).rational(), sol.h.eval(t0).rational()) == 0);
    }
    ++done;
  }
}

TEST_CASE("family templates follow the square conditions") {
  Quadric q(-2, 1, -2);
  auto fam = family_of(q, rank3_parametrization());
  REQUIRE(fam.q1);
  REQUIRE(fam.q2);
  CHECK(fam.rank_bound == 2);
  const auto& s = fam.sol;
  CHECK(fam.q1->x() == RatFun(-(s.g * s.g)));
  CHECK(fam.q1->y() == RatFun(Poly(-2) * s.g * s.g * s.h));
  CHECK(fam.q2->x() == RatFun(Poly(-2) * s.h * s.h));
  CHECK(fam.q2->y() == RatFun(Poly(-2) * s.f * s.g * s.h));
  CHECK(on_curve(fam.model, *fam.q1));
  CHECK(on_curve(fam.model, *fam.q2));
  // y^2 = x (x + 2 f^2)(x - g^2)
  CHECK(fam.model.a2() == RatFun(Poly(2) * s.f * s.f - s.g * s.g));

  Quadric q2(1, 1, 2);
  auto fam2 = family_of(q2, parametrize(q2, {1, 1, 1}));
  CHECK_FALSE(fam2.q1);
  CHECK_FALSE(fam2.q2);
  CHECK(fam2.rank_bound == 0);

  Quadric q3(1, -3, -2);  // -2 gamma = 4, alpha beta gamma = 6
  auto fam3 = family_of(q3, parametrize(q3, {1, 1, 1}));
  CHECK(fam3.q1);
  CHECK_FALSE(fam3.q2);
  CHECK(fam3.rank_bound == 1);

  CHECK(error_kind_of([&] { family_of(q2, rank3_parametrization()); }) == ErrorKind::OutOfFamily);
}

TEST_CASE("template conditions agree with square tests") {
  Gen gen(77);
  int done = 0, with_q1 = 0, with_q2 = 0;
  while (done < 200) {
    RationalTriple p0{gen.nonzero_rational(6), gen.nonzero_rational(6), gen.nonzero_rational(6)};
    Rational alpha = gen.nonzero_rational(6), beta, gamma;
    switch (gen.small(0, 2)) {
      case 0:  // -2 gamma a square
        gamma = gen.nonzero_rational(5);
        gamma *= -2 * gamma;
        beta = (gamma * p0.c * p0.c - alpha * p0.a * p0.a) / (p0.b * p0.b);
        break;
      case 1: {  // beta = alpha gamma s^2 makes alpha beta gamma a square
        gamma = gen.nonzero_rational(6);
        Rational s2 = gen.nonzero_rational(5);
        s2 *= s2;
        Rational d = p0.a * p0.a + gamma * s2 * p0.b * p0.b;
        if (d == 0) continue;
        alpha = gamma * p0.c * p0.c / d;
        beta = alpha * gamma * s2;
        break;
      }
      default:
        beta = gen.nonzero_rational(6);
        gamma = (alpha * p0.a * p0.a + beta * p0.b * p0.b) / (p0.c * p0.c);
    }
    if (beta == 0 || gamma == 0 || beta * beta + 4 * alpha * gamma == 0) continue;
    Quadric q(alpha, beta, gamma);
    auto sol = parametrize(q, p0);
    std::optional<QuadricFamily> built;
    try {
      built = family_of(q, sol);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularModel);  // alpha f^2 = beta g^2 identically
      continue;
    }
    const QuadricFamily& fam = *built;
    auto sq = [](const Rational& c) { return is_square_rational(c).has_value(); };
    CHECK(fam.q1.has_value() == sq(-2 * gamma));
    CHECK(fam.q2.has_value() == sq(alpha * beta * gamma));
    CHECK(fam.rank_bound == int(sq(-2 * gamma)) + int(sq(alpha * beta * gamma)));
    if (fam.q1) CHECK(on_curve(fam.model, *fam.q1));
    if (fam.q2) CHECK(on_curve(fam.model, *fam.q2));
    with_q1 += fam.q1.has_value();
    with_q2 += fam.q2.has_value();
    ++done;
  }
  CHECK(with_q1 > 20);
  CHECK(with_q2 > 20);
}

TEST_CASE("specialization") {
  Quadric q(1, 1, 2);
  auto fam = family_of(q, parametrize(q, {1, 1, 1}));
  // t0 = 0 gives (1, -1, 1): alpha a^2 = beta b^2, a singular curve
  CHECK(fam.sol.f.eval(FieldElem(0)).rational() == 1);
  CHECK(fam.sol.g.eval(FieldElem(0)).rational() == -1);
  CHECK(error_kind_of([&] { specialize(fam, 0); }) == ErrorKind::SingularSpecialization);
  auto s = specialize(fam, 2);
  CHECK(s.triple == RationalTriple{-7, -1, 5});
  CHECK(q.eval(s.triple.a, s.triple.b, s.triple.c) == 0);
  CHECK(s.points.empty());
  CHECK(s.certificate.rank_lower_bound == 0);

  auto fam1 = family_of(Quadric(-2, 1, -2), rank3_parametrization());
  CHECK(error_kind_of([&] { specialize(fam1, 0); }) == ErrorKind::SingularSpecialization);
  auto s1 = specialize(fam1, 2);
  CHECK(s1.triple == RationalTriple{36, -32, 28});
  // y^2 = x (x + 2 a^2)(x - b^2)
  CHECK(s1.curve.a2() == RatFun(2 * 36 * 36 - 32 * 32));
  CHECK(s1.curve.a4() == RatFun(-2 * 36 * 36 * 32 * 32));
  REQUIRE(s1.points.size() == 2);
  CHECK(s1.points[0] == CurvePoint(RatFun(-1024), RatFun(-2 * 1024 * 28)));
  CHECK(s1.points[1] == CurvePoint(RatFun(-2 * 28 * 28), RatFun(2 * 36 * 32 * 28)));
  CHECK(s1.labels == std::vector<std::string>{"Q1", "Q2"});
  CHECK(s1.certificate.on_curve);
  CHECK(s1.certificate.non_torsion);
  CHECK(s1.certificate.rank_lower_bound == 2);
  CHECK(s1.certificate.caveat == "silverman-finite-exceptions");
  CHECK(s1.certificate.describe() == "rank >= 2 (finite exceptions)");

  // a conic with a point at c = 0 has h with a rational root
  Quadric q4(1, -1, 3);
  auto fam4 = family_of(q4, parametrize(q4, {2, 1, 1}));
  auto poles = rational_roots(fam4.sol.h);
  REQUIRE_FALSE(poles.empty());
  CHECK(error_kind_of([&] { specialize(fam4, poles.front()); }) == ErrorKind::ParametrizationPole);
}

TEST_CASE("specializations satisfy the conic and the curve") {
  Gen gen(31337);
  auto fam = family_of(Quadric(-2, 1, -2), rank3_parametrization());
  Quadric q3(1, -3, -2);
  auto fam3 = family_of(q3, parametrize(q3, {1, 1, 1}));
  for (int i = 0; i < 100; ++i) {
    for (const auto* f : {&fam, &fam3}) {
      Rational t0 = gen.rational(30);
      Specialization s;
      try {
        s = specialize(*f, t0);
      } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::SingularSpecialization || e.kind() == ErrorKind::ParametrizationPole));
        continue;
      }
      CHECK(f->quadric.eval(s.triple.a, s.triple.b, s.triple.c) == 0);
      CHECK(s.points.size() == std::size_t(f->rank_bound));
      for (const auto& p : s.points) CHECK(on_curve(s.curve, p));
    }
  }
}

TEST_CASE("rank three member at t0 = 1") {
  auto r = rank3_member(1);
  CHECK(r.triple == RationalTriple{q("2848/81"), q("-256/9"), q("2336/81")});
  CHECK(r.triple == s_member(1));
  CHECK(r.witness == q("11264/81"));
  const auto& [a, b, c] = r.triple;
  CHECK(-2 * a * a + b * b == -2 * c * c);
  CHECK(r.witness * r.witness == 2 * (a - 32) * (64 * a + b * b));
  REQUIRE(r.points.size() == 3);
  CHECK(x_of(r.points[2]) == -64 * a);
  for (const auto& p : r.points) {
    CHECK(on_curve(r.curve, p));
    CHECK(is_nontorsion_Q(r.curve, p));
  }
  CHECK(r.certificate.rank_lower_bound == 3);
  CHECK(r.certificate.describe() == "rank >= 3 (finite exceptions)");
  CHECK(r.certificate.on_curve);
  CHECK(r.certificate.non_torsion);
  // also obtained by factoring the square classes of the five images by hand
  CHECK(r.certificate.descent_rank_bound == 3);

  auto r2 = rank3_member(2);
  CHECK(r2.triple == RationalTriple{q("544/9"), q("-256/3"), q("32/9")});
  CHECK(r2.witness == q("7168/9"));
  CHECK(-2 * r2.triple.a * r2.triple.a + r2.triple.b * r2.triple.b == -2 * r2.triple.c * r2.triple.c);

  CHECK(error_kind_of([] { rank3_member(0); }) == ErrorKind::DegenerateMember);
}

TEST_CASE("random members of S carry a square witness") {
  Gen gen(2718);
  for (int i = 0; i < 100; ++i) {
    Rational t0 = gen.nonzero_rational(40);
    auto r = rank3_member(t0);
    CHECK(r.triple == s_member(t0));
    const auto& [a, b, c] = r.triple;
    CHECK(-2 * a * a + b * b == -2 * c * c);
    CHECK(r.witness > 0);
    CHECK(r.witness * r.witness == 2 * (a - 32) * (64 * a + b * b));
    for (const auto& p : r.points) CHECK(on_curve(r.curve, p));
    CHECK(r.certificate.non_torsion);
    CHECK(r.certificate.descent_rank_bound <= 3);
    CHECK(r.certificate.descent_rank_bound >= 0);
  }
}

TEST_CASE("2-descent rank bound") {
  // y^2 = x^3 - 25 x = x (x - 5)(x + 5): rank 1 with (-4, 6)
  CurvePoint p(RatFun(-4), RatFun(6));
  CHECK(descent_rank_bound(5, -5, {}) == 0);
  CHECK(descent_rank_bound(5, -5, {p}) == 1);
  auto m = WeierstrassModel::short_form(RatFun(), RatFun(-25), RatFun());
  auto p2 = mul_scalar(m, p, 2), p3 = mul_scalar(m, p, 3);
  CHECK(descent_rank_bound(5, -5, {p, p2, negate(m, p)}) == 1);
  CHECK(descent_rank_bound(5, -5, {p2}) == 0);
  CHECK(descent_rank_bound(5, -5, {p3}) == 1);
  // 2-torsion points add nothing
  CHECK(descent_rank_bound(5, -5, {CurvePoint(RatFun(5), RatFun()), CurvePoint(RatFun(), RatFun())}) == 0);
}
