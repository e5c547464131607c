#include <vector>

#include "doctest.h"
#include "ellsurf/error.hpp"
#include "support.hpp"

using namespace ellsurf;
using testing_support::Gen;
using testing_support::q;

namespace {

// Solve a * x = 1 by Gaussian elimination on the 4x4 multiplication matrix.
Zeta8Elem inverse_by_linear_solve(const Zeta8Elem& a) {
  Rational m[4][5];
  for (int j = 0; j < 4; ++j) {
    Zeta8Elem basis(0, 0, 0, 0);
    basis = Zeta8Elem(j == 0 ? 1 : 0, j == 1 ? 1 : 0, j == 2 ? 1 : 0, j == 3 ? 1 : 0);
    Zeta8Elem col = a * basis;
    for (int i = 0; i < 4; ++i) m[i][j] = col[i];
  }
  for (int i = 0; i < 4; ++i) m[i][4] = (i == 0) ? 1 : 0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (m[piv][c] == 0) ++piv;
    for (int k = 0; k < 5; ++k) std::swap(m[c][k], m[piv][k]);
    for (int r = 0; r < 4; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = 0; k < 5; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return Zeta8Elem(m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]);
}

// Integer square root by bisection; independent of GMP's sqrt.
bool bisect_sqrt(const Integer& n, Integer& root) {
  if (n < 0) return false;
  Integer lo = 0, hi = n + 1;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (mid * mid <= n) lo = mid; else hi = mid;
  }
  root = lo;
  return lo * lo == n;
}

}  // namespace

TEST_CASE("parse and print rationals") {
  CHECK(to_string(q("6/4")) == "3/2");
  CHECK(to_string(q("-10/5")) == "-2");
  CHECK(to_string(q("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("zeta8 multiplication examples") {
  Zeta8Elem z = named_constant("zeta");
  Zeta8Elem z3 = z * z * z;
  CHECK(z * z3 == Zeta8Elem(-1));
  Zeta8Elem sm2(0, 1, 0, 1);
  CHECK(sm2 * sm2 == Zeta8Elem(-2));
  Zeta8Elem s2(0, 1, 0, -1);
  CHECK(s2 * s2 == Zeta8Elem(2));
}

TEST_CASE("zeta8 inverse examples") {
  CHECK(zeta8_inv(Zeta8Elem(1)) == Zeta8Elem(1));
  Zeta8Elem z = named_constant("zeta");
  CHECK(zeta8_inv(z) == Zeta8Elem(0, 0, 0, -1));
  Zeta8Elem one_plus_z(1, 1, 0, 0);
  Zeta8Elem expected = inverse_by_linear_solve(one_plus_z);
  CHECK(zeta8_inv(one_plus_z) == expected);
  CHECK(one_plus_z * expected == Zeta8Elem(1));
  try {
    zeta8_inv(Zeta8Elem());
    FAIL("expected division by zero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("named constants") {
  CHECK(named_constant("i") == Zeta8Elem(0, 0, 1, 0));
  CHECK(named_constant("sqrt2") == Zeta8Elem(0, 1, 0, -1));
  CHECK(named_constant("sqrt_minus2") == Zeta8Elem(0, 1, 0, 1));
  CHECK(named_constant("zeta") == Zeta8Elem(0, 1, 0, 0));
  auto sq = [](const Zeta8Elem& a) { return a * a; };
  CHECK(sq(named_constant("i")) == Zeta8Elem(-1));
  CHECK(sq(named_constant("sqrt2")) == Zeta8Elem(2));
  CHECK(sq(named_constant("sqrt_minus2")) == Zeta8Elem(-2));
  try {
    named_constant("pi");
    FAIL("expected unknown name");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownName);
  }
}

TEST_CASE("rational square test examples") {
  CHECK(is_square_rational(q("4/9")) == q("2/3"));
  CHECK_FALSE(is_square_rational(q("-1")).has_value());
  CHECK_FALSE(is_square_rational(q("2")).has_value());
  CHECK(is_square_rational(q("0")) == q("0"));
  Integer n, d;
  REQUIRE(bisect_sqrt(Integer("126877696"), n));
  REQUIRE(bisect_sqrt(Integer("6561"), d));
  Rational oracle(n, d);
  oracle.canonicalize();
  CHECK(oracle == q("11264/81"));
  CHECK(is_square_rational(q("126877696/6561")) == oracle);
}

TEST_CASE("field axioms on random samples") {
  Gen gen(0xF1E1D5);
  for (int i = 0; i < 1000; ++i) {
    Rational a = gen.rational(), b = gen.rational(), c = gen.rational();
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);

    Zeta8Elem x = gen.zeta8(), y = gen.zeta8(), z = gen.zeta8();
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE(x * (y + z) == x * y + x * z);
    REQUIRE(x * y == y * x);
    REQUIRE((x + y) + z == x + (y + z));
    if (!x.is_zero()) REQUIRE(x * zeta8_inv(x) == Zeta8Elem(1));
  }
}

TEST_CASE("rational square witness on random squares") {
  Gen gen(0x5A5A);
  for (int i = 0; i < 1000; ++i) {
    Rational w = gen.rational(1000);
    Rational w2 = w * w;
    auto r = is_square_rational(w2);
    REQUIRE(r.has_value());
    REQUIRE(*r * *r == w2);
    REQUIRE(*r >= 0);
  }
}

TEST_CASE("promotion and mixed arithmetic") {
  FieldElem r(q("3/2"));
  FieldElem z(named_constant("i"));
  CHECK(r.to_zeta8() == Zeta8Elem(q("3/2"), 0, 0, 0));
  FieldElem prod = r * z;
  CHECK_FALSE(prod.is_rational());
  // i * i demotes back to the rational alternative
  FieldElem m1 = z * z;
  CHECK(m1.is_rational());
  CHECK(m1 == FieldElem(-1));
  CHECK((FieldElem(1) / FieldElem(Zeta8Elem(1, 1, 0, 0))) * FieldElem(Zeta8Elem(1, 1, 0, 0)) == FieldElem(1));
}

TEST_CASE("galois action is a field automorphism") {
  Gen gen(77);
  for (int i = 0; i < 300; ++i) {
    Zeta8Elem x = gen.zeta8(), y = gen.zeta8();
    for (int k : {1, 3, 5, 7}) {
      REQUIRE((x * y).galois(k) == x.galois(k) * y.galois(k));
      REQUIRE((x + y).galois(k) == x.galois(k) + y.galois(k));
    }
    REQUIRE(x.galois(3).galois(3) == x);
  }
  // complex conjugation fixes sqrt2 and negates i
  CHECK(named_constant("sqrt2").galois(7) == named_constant("sqrt2"));
  CHECK(named_constant("i").galois(7) == -named_constant("i"));
}

TEST_CASE("square roots in the cyclotomic field") {
  Gen gen(4242);
  for (int i = 0; i < 300; ++i) {
    Zeta8Elem x = gen.zeta8(6);
    auto r = zeta8_sqrt(x * x);
    REQUIRE(r.has_value());
    REQUIRE(*r * *r == x * x);
  }
  // every rational is a square in Q(zeta_8) up to the classes 1, -1, 2, -2
  CHECK(zeta8_sqrt(Zeta8Elem(-1)).has_value());
  CHECK(zeta8_sqrt(Zeta8Elem(2)).has_value());
  CHECK(zeta8_sqrt(Zeta8Elem(-2)).has_value());
  CHECK_FALSE(zeta8_sqrt(Zeta8Elem(3)).has_value());
  CHECK_FALSE(zeta8_sqrt(named_constant("zeta")).has_value());
  // 1 + i = sqrt2 * zeta, and zeta is not a square, so 1 + i is not one either
  CHECK_FALSE(zeta8_sqrt(Zeta8Elem(1, 0, 1, 0)).has_value());
  // 2i = (1 + i)^2
  CHECK(zeta8_sqrt(Zeta8Elem(0, 0, 2, 0)).has_value());
}
