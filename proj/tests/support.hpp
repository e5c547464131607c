#pragma once

// Shared helpers for the test suites: literal builders and seeded generators.

#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ellsurf/error.hpp"
#include "ellsurf/fields.hpp"
#include "ellsurf/poly.hpp"

namespace testing_support {

using namespace ellsurf;

inline Rational q(const char* s) { return parse_rational(s); }

inline Poly P(std::initializer_list<int> coeffs) {
  std::vector<FieldElem> v;
  for (int c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

inline Poly P(std::initializer_list<Rational> coeffs) {
  std::vector<FieldElem> v;
  for (const auto& c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

inline Poly T() { return Poly::t(); }

// Kind of the Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorKind> error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int small(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int bound = 50) {
    int n = small(-bound, bound);
    int d = small(1, bound);
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(int bound = 50) {
    Rational r;
    do r = rational(bound);
    while (r == 0);
    return r;
  }

  Zeta8Elem zeta8(int bound = 20) {
    return Zeta8Elem(rational(bound), rational(bound), rational(bound), rational(bound));
  }

  FieldElem field(bool cyclotomic, int bound = 9) {
    if (cyclotomic) return FieldElem(zeta8(bound));
    return FieldElem(rational(bound));
  }

  Poly poly(int max_degree, bool cyclotomic = false, int bound = 9) {
    int d = small(0, max_degree);
    std::vector<FieldElem> c;
    for (int i = 0; i <= d; ++i) c.push_back(field(cyclotomic && small(0, 2) == 0, bound));
    return Poly(std::move(c));
  }

  Poly nonzero_poly(int max_degree, bool cyclotomic = false) {
    Poly p;
    do p = poly(max_degree, cyclotomic);
    while (p.is_zero());
    return p;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace testing_support
