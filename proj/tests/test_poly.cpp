#include <map>
#include <vector>

#include "doctest.h"
#include "ellsurf/error.hpp"
#include "support.hpp"

using namespace ellsurf;
using testing_support::Gen;
using testing_support::P;
using testing_support::q;
using testing_support::T;

namespace {

// Determinant of the Sylvester matrix by Gaussian elimination.
FieldElem sylvester_resultant(const Poly& p, const Poly& qq) {
  int m = p.degree(), n = qq.degree();
  int size = m + n;
  std::vector<std::vector<FieldElem>> a(size, std::vector<FieldElem>(size));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + i] = p.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + i] = qq.coeff(n - i);
  FieldElem det(1);
  for (int c = 0; c < size; ++c) {
    int piv = c;
    while (piv < size && a[piv][c].is_zero()) ++piv;
    if (piv == size) return FieldElem(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < size; ++r) {
      if (a[r][c].is_zero()) continue;
      FieldElem f = a[r][c] / a[c][c];
      for (int k = c; k < size; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Polynomial with prescribed rational roots and multiplicities.
Poly from_roots(const std::map<int, int>& roots) {
  Poly p(1);
  for (auto [r, e] : roots) p *= pow(P({-r, 1}), e);
  return p;
}

Poly classic_delta() {
  Poly f = P({-1, 0, 1}), g = P({0, 2});
  return Poly(16) * pow(f, 4) * pow(g, 4) * pow(f * f - g * g, 2);
}

}  // namespace

TEST_CASE("degree conventions") {
  CHECK(Poly().degree() == kDegreeMinusInfinity);
  CHECK(P({0, 0, 0}).is_zero());
  CHECK(P({1, 2, 3}).degree() == 2);
}

TEST_CASE("gcd examples") {
  CHECK(poly_gcd(P({-1, 0, 1}), P({0, 2})) == P({1}));
  CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
  CHECK_THROWS_AS(poly_gcd(Poly(), Poly()), Error);
  Poly f = P({-1, 0, 1}), g = P({0, 2});
  CHECK(poly_gcd(f * f, f * g) == f);
}

TEST_CASE("gcd against a root-multiset oracle") {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<int, int> ra, rb, common;
    for (int k = 0; k < 4; ++k) ra[gen.small(-4, 4)] += gen.small(1, 2);
    for (int k = 0; k < 4; ++k) rb[gen.small(-4, 4)] += gen.small(1, 2);
    for (auto [r, e] : ra) {
      auto it = rb.find(r);
      if (it != rb.end()) common[r] = std::min(e, it->second);
    }
    Poly a = from_roots(ra) * Poly(gen.nonzero_rational());
    Poly b = from_roots(rb) * Poly(gen.nonzero_rational());
    REQUIRE(poly_gcd(a, b) == from_roots(common));
  }
}

TEST_CASE("squarefree decomposition examples") {
  Poly delta = classic_delta();
  auto sf = squarefree_decompose(delta);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].factor == P({1, 0, -6, 0, 1}));
  CHECK(sf[0].multiplicity == 2);
  CHECK(sf[1].factor == P({0, -1, 0, 1}));
  CHECK(sf[1].multiplicity == 4);

  auto t2 = squarefree_decompose(P({0, 0, 1}));
  REQUIRE(t2.size() == 1);
  CHECK(t2[0].factor == T());
  CHECK(t2[0].multiplicity == 2);

  auto sep = squarefree_decompose(P({3, 1, 2}));
  REQUIRE(sep.size() == 1);
  CHECK(sep[0].factor == P({3, 1, 2}).monic());
  CHECK_THROWS_AS(squarefree_decompose(Poly()), Error);
}

TEST_CASE("squarefree decomposition reconstructs random inputs") {
  Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p = gen.nonzero_poly(3, trial % 2 == 0) * gen.nonzero_poly(2) * pow(gen.nonzero_poly(2), 2);
    auto sf = squarefree_decompose(p);
    Poly rebuilt(p.leading());
    for (size_t i = 0; i < sf.size(); ++i) {
      REQUIRE(sf[i].factor.is_monic());
      if (sf[i].factor.degree() > 1) REQUIRE_FALSE(discriminant(sf[i].factor).is_zero());
      if (i > 0) REQUIRE(sf[i - 1].multiplicity < sf[i].multiplicity);
      for (size_t j = 0; j < i; ++j) REQUIRE(poly_gcd(sf[i].factor, sf[j].factor) == Poly(1));
      rebuilt *= pow(sf[i].factor, sf[i].multiplicity);
    }
    REQUIRE(rebuilt == p);
  }
}

TEST_CASE("discriminant examples") {
  Poly p = P({1, 0, -6, 0, 1});
  CHECK(discriminant(p) == FieldElem(16384));
  CHECK(sylvester_resultant(p, p.derivative()) == FieldElem(16384));
  CHECK(discriminant(P({0, 0, 1})) == FieldElem(0));
  CHECK_THROWS_AS(discriminant(P({5})), Error);
  Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    Rational a = gen.nonzero_rational(), b = gen.rational(), c = gen.rational();
    CHECK(discriminant(P({c, b, a})) == FieldElem(b * b - 4 * a * c));
  }
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
  Gen gen(14);
  for (int i = 0; i < 200; ++i) {
    Poly a = gen.nonzero_poly(4, true), b = gen.nonzero_poly(4, true);
    if (a.degree() < 1 || b.degree() < 1) continue;
    REQUIRE(resultant(a, b) == sylvester_resultant(a, b));
  }
}

TEST_CASE("valuation examples") {
  Place t = Place::finite(T());
  CHECK(valuation(t, RatFun(P({0, 2}))) == 1);
  CHECK(valuation(t, RatFun(P({-1, 0, 1}), T())) == -1);
  CHECK(valuation(Place::infinity(), RatFun(pow(P({-1, 0, 1}), 2))) == -4);
  CHECK(valuation(Place::finite(P({1, 0, -6, 0, 1})), RatFun(classic_delta())) == 2);
  CHECK_FALSE(valuation(t, RatFun()).has_value());
  try {
    valuation(Place::finite(P({-1, 0, 1})), RatFun(P({-1, 1})));
    FAIL("expected cluster split");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClusterSplits);
  }
}

TEST_CASE("valuation is additive and satisfies the degree formula") {
  Gen gen(15);
  for (int trial = 0; trial < 200; ++trial) {
    RatFun r1(gen.nonzero_poly(4), gen.nonzero_poly(3));
    RatFun r2(gen.nonzero_poly(4), gen.nonzero_poly(3));
    auto basis = gcd_free_basis({r1.num(), r1.den(), r2.num(), r2.den()});
    std::vector<Place> places{Place::infinity()};
    for (const auto& c : basis.clusters) places.push_back(Place::finite(c));
    int total = 0;
    for (const auto& v : places) {
      REQUIRE(*valuation(v, r1 * r2) == *valuation(v, r1) + *valuation(v, r2));
      total += *valuation(v, r1) * v.count();
    }
    REQUIRE(total == 0);
  }
}

TEST_CASE("gcd-free basis examples") {
  auto b = gcd_free_basis({P({-1, 0, 1}), P({0, 2}), P({1, 0, -6, 0, 1})});
  std::vector<Poly> expected{T(), P({-1, 0, 1}), P({1, 0, -6, 0, 1})};
  CHECK(b.clusters == expected);
  auto split = gcd_free_basis({P({-1, 0, 1}), P({-1, 1})});
  std::vector<Poly> two{P({-1, 1}), P({1, 1})};
  CHECK(split.clusters == two);
  auto single = gcd_free_basis({P({4, 0, 2})});
  REQUIRE(single.clusters.size() == 1);
  CHECK(single.clusters[0] == P({2, 0, 1}));
}

TEST_CASE("gcd-free basis properties") {
  Gen gen(16);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Poly> sources;
    int n = gen.small(1, 4);
    for (int i = 0; i < n; ++i) sources.push_back(gen.nonzero_poly(2) * gen.nonzero_poly(2));
    auto b = gcd_free_basis(sources);
    for (size_t i = 0; i < b.clusters.size(); ++i) {
      REQUIRE(b.clusters[i].is_monic());
      REQUIRE(b.clusters[i].degree() >= 1);
      for (size_t j = 0; j < i; ++j) REQUIRE(poly_gcd(b.clusters[i], b.clusters[j]) == Poly(1));
    }
    for (const auto& s : sources) {
      Poly rebuilt(s.leading());
      for (const auto& c : b.clusters) {
        int e = *valuation(Place::finite(c), s);
        rebuilt *= pow(c, e);
      }
      REQUIRE(rebuilt == s);
    }
    auto again = gcd_free_basis(b.clusters);
    REQUIRE(again.clusters == b.clusters);
  }
}

TEST_CASE("rational function normalization and charts") {
  RatFun r(P({-2, 0, 2}), P({-2, 2}));  // 2(t^2-1)/(2(t-1)) = t+1
  CHECK(r.num() == P({1, 1}));
  CHECK(r.den() == P({1}));
  RatFun s(P({1}), P({0, 3}));
  CHECK(s.den() == T());
  CHECK(s.num() == P({q("1/3")}));
  // (t^2 + 1) in the s-chart with shift 2 is 1 + s^2
  CHECK(RatFun(P({1, 0, 1})).to_s_chart(2) == RatFun(P({1, 0, 1})));
  CHECK(RatFun(T()).to_s_chart(0) == RatFun(P({1}), T()));
  CHECK(RatFun(P({1, 1})).compose(RatFun(P({0, 0, 1}))) == RatFun(P({1, 0, 1})));
  CHECK_THROWS_AS(RatFun(P({1}), Poly()), Error);
}

TEST_CASE("polynomial square roots") {
  Gen gen(17);
  for (int i = 0; i < 200; ++i) {
    Poly p = gen.poly(3, true);
    auto r = poly_sqrt(p * p);
    REQUIRE(r.has_value());
    REQUIRE(*r * *r == p * p);
  }
  CHECK_FALSE(poly_sqrt(P({-1, 0, 1})).has_value());
  CHECK(poly_sqrt(P({-1})).has_value());
}
