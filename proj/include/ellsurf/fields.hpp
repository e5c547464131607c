#pragma once

// Exact arithmetic in Q and in the cyclotomic field Q(zeta_8).

#include <gmpxx.h>

#include <array>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace ellsurf {

/// Arbitrary precision rational; GMP keeps it canonical (den > 0, reduced).
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Witness w >= 0 with w^2 == c, or nullopt when c is not a square in Q.
std::optional<Rational> is_square_rational(const Rational& c);

/// c0 + c1*z + c2*z^2 + c3*z^3 with z = exp(2*pi*i/8), reduced by z^4 = -1.
class Zeta8Elem {
 public:
  Zeta8Elem() = default;
  Zeta8Elem(const Rational& c0) : c_{c0, 0, 0, 0} {}  // NOLINT: implicit promotion
  Zeta8Elem(Rational c0, Rational c1, Rational c2, Rational c3)
      : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  const Rational& operator[](int i) const { return c_[i]; }
  const std::array<Rational, 4>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;

  Zeta8Elem operator-() const;
  Zeta8Elem& operator+=(const Zeta8Elem& o);
  Zeta8Elem& operator-=(const Zeta8Elem& o);
  Zeta8Elem& operator*=(const Zeta8Elem& o);

  /// Image under the automorphism z -> z^k, k in {1,3,5,7}.
  Zeta8Elem galois(int k) const;
  /// Absolute norm to Q (product of the four conjugates).
  Rational norm() const;

  friend bool operator==(const Zeta8Elem& a, const Zeta8Elem& b) { return a.c_ == b.c_; }

 private:
  std::array<Rational, 4> c_{};
};

Zeta8Elem operator+(Zeta8Elem a, const Zeta8Elem& b);
Zeta8Elem operator-(Zeta8Elem a, const Zeta8Elem& b);
Zeta8Elem zeta8_mul(const Zeta8Elem& a, const Zeta8Elem& b);
inline Zeta8Elem operator*(const Zeta8Elem& a, const Zeta8Elem& b) { return zeta8_mul(a, b); }
/// Throws DivisionByZero on a == 0.
Zeta8Elem zeta8_inv(const Zeta8Elem& a);

/// One of "i", "sqrt2", "sqrt_minus2", "zeta"; throws UnknownName otherwise.
Zeta8Elem named_constant(std::string_view name);

/// Exact square root in Q(zeta_8), if one exists. Works down the tower
/// Q < Q(sqrt2) < Q(sqrt2, i) = Q(zeta_8).
std::optional<Zeta8Elem> zeta8_sqrt(const Zeta8Elem& a);

std::ostream& operator<<(std::ostream& os, const Zeta8Elem& a);

/// Element of Q or Q(zeta_8). Kept canonical: a value lying in Q is always
/// stored in the Rational alternative, so equality is structural.
class FieldElem {
 public:
  FieldElem() : v_(Rational(0)) {}
  FieldElem(int n) : v_(Rational(n)) {}  // NOLINT
  FieldElem(const Rational& q) : v_(q) {}  // NOLINT
  FieldElem(const Zeta8Elem& z);  // NOLINT

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_zero() const;
  bool is_one() const;
  const Rational& rational() const;  // precondition: is_rational()
  Zeta8Elem to_zeta8() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  FieldElem inverse() const;
  FieldElem galois(int k) const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);
  /// Total order (componentwise lexicographic) used only for determinism.
  friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b);

 private:
  std::variant<Rational, Zeta8Elem> v_;
};

FieldElem operator+(FieldElem a, const FieldElem& b);
FieldElem operator-(FieldElem a, const FieldElem& b);
FieldElem operator*(FieldElem a, const FieldElem& b);
FieldElem operator/(FieldElem a, const FieldElem& b);
FieldElem pow(const FieldElem& a, unsigned e);

std::optional<FieldElem> field_sqrt(const FieldElem& a);

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

}  // namespace ellsurf
