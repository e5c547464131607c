#include "ellsurf/fields.hpp"

#include <cctype>
#include <sstream>

#include "ellsurf/error.hpp"

namespace ellsurf {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ')) s.pop_back();
  if (s.empty()) fail(ErrorKind::MalformedInput, "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-')) {
      fail(ErrorKind::MalformedInput, "bad rational literal '" + std::string(text) + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::MalformedInput, "bad rational literal '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::MalformedInput, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::optional<Rational> is_square_rational(const Rational& c) {
  if (sgn(c) < 0) return std::nullopt;
  if (sgn(c) == 0) return Rational(0);
  Integer n = c.get_num(), d = c.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational w(rn, rd);
  w.canonicalize();
  return w;
}

// ---------------------------------------------------------------------------
// Zeta8Elem

bool Zeta8Elem::is_zero() const {
  return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Zeta8Elem::is_rational() const {
  return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

Zeta8Elem Zeta8Elem::operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

Zeta8Elem& Zeta8Elem::operator+=(const Zeta8Elem& o) {
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

Zeta8Elem& Zeta8Elem::operator-=(const Zeta8Elem& o) {
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

Zeta8Elem& Zeta8Elem::operator*=(const Zeta8Elem& o) {
  *this = zeta8_mul(*this, o);
  return *this;
}

Zeta8Elem operator+(Zeta8Elem a, const Zeta8Elem& b) { return a += b; }
Zeta8Elem operator-(Zeta8Elem a, const Zeta8Elem& b) { return a -= b; }

Zeta8Elem zeta8_mul(const Zeta8Elem& a, const Zeta8Elem& b) {
  if (b.is_rational()) {
    return {a[0] * b[0], a[1] * b[0], a[2] * b[0], a[3] * b[0]};
  }
  if (a.is_rational()) {
    return {a[0] * b[0], a[0] * b[1], a[0] * b[2], a[0] * b[3]};
  }
  std::array<Rational, 4> r{};
  for (int i = 0; i < 4; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (sgn(b[j]) == 0) continue;
      int k = i + j;
      if (k < 4) {
        r[k] += a[i] * b[j];
      } else {
        r[k - 4] -= a[i] * b[j];
      }
    }
  }
  return {r[0], r[1], r[2], r[3]};
}

Zeta8Elem Zeta8Elem::galois(int k) const {
  k = ((k % 8) + 8) % 8;
  if (k % 2 == 0) fail(ErrorKind::UnsupportedInput, "galois exponent must be odd");
  std::array<Rational, 4> r{};
  r[0] = c_[0];
  for (int j = 1; j < 4; ++j) {
    int e = (j * k) % 8;
    if (e < 4) {
      r[e] += c_[j];
    } else {
      r[e - 4] -= c_[j];
    }
  }
  return {r[0], r[1], r[2], r[3]};
}

Rational Zeta8Elem::norm() const {
  Zeta8Elem p = zeta8_mul(zeta8_mul(*this, galois(3)), zeta8_mul(galois(5), galois(7)));
  return p[0];
}

Zeta8Elem zeta8_inv(const Zeta8Elem& a) {
  if (a.is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta8)");
  if (a.is_rational()) return Zeta8Elem(Rational(1) / a[0]);
  // a^{-1} = (conjugates other than a) / N(a)
  Zeta8Elem others = zeta8_mul(a.galois(3), zeta8_mul(a.galois(5), a.galois(7)));
  Rational n = zeta8_mul(a, others)[0];
  Rational inv_n = Rational(1) / n;
  return {others[0] * inv_n, others[1] * inv_n, others[2] * inv_n, others[3] * inv_n};
}

Zeta8Elem named_constant(std::string_view name) {
  if (name == "i") return {0, 0, 1, 0};
  if (name == "sqrt2") return {0, 1, 0, -1};
  if (name == "sqrt_minus2") return {0, 1, 0, 1};
  if (name == "zeta") return {0, 1, 0, 0};
  fail(ErrorKind::UnknownName, "unknown constant '" + std::string(name) + "'");
}

namespace {

// a + b*sqrt2
struct QSqrt2 {
  Rational a, b;
};

QSqrt2 mul(const QSqrt2& x, const QSqrt2& y) {
  return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
}
QSqrt2 add(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
QSqrt2 sub(const QSqrt2& x, const QSqrt2& y) { return {x.a - y.a, x.b - y.b}; }
bool is_zero(const QSqrt2& x) { return sgn(x.a) == 0 && sgn(x.b) == 0; }
QSqrt2 inv(const QSqrt2& x) {
  Rational n = x.a * x.a - 2 * x.b * x.b;
  return {x.a / n, -x.b / n};
}

std::optional<QSqrt2> sqrt_q_sqrt2(const QSqrt2& x) {
  if (is_zero(x)) return QSqrt2{0, 0};
  if (sgn(x.b) == 0) {
    if (auto r = is_square_rational(x.a)) return QSqrt2{*r, 0};
    if (auto r = is_square_rational(x.a / 2)) return QSqrt2{0, *r};
    return std::nullopt;
  }
  // (p + q sqrt2)^2 = a + b sqrt2: p^2 + 2q^2 = a, 2pq = b
  auto n = is_square_rational(x.a * x.a - 2 * x.b * x.b);
  if (!n) return std::nullopt;
  for (int sign : {1, -1}) {
    Rational p2 = (x.a + sign * *n) / 2;
    auto p = is_square_rational(p2);
    if (!p || sgn(*p) == 0) continue;
    QSqrt2 cand{*p, x.b / (2 * *p)};
    QSqrt2 sq = mul(cand, cand);
    if (sq.a == x.a && sq.b == x.b) return cand;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Zeta8Elem> zeta8_sqrt(const Zeta8Elem& z) {
  if (z.is_zero()) return Zeta8Elem{};
  // z = A + B*i with A, B in Q(sqrt2); zeta = (sqrt2/2)(1+i).
  QSqrt2 A{z[0], (z[1] - z[3]) / 2};
  QSqrt2 B{z[2], (z[1] + z[3]) / 2};
  const Zeta8Elem sqrt2 = named_constant("sqrt2");
  const Zeta8Elem i = named_constant("i");
  auto embed = [&](const QSqrt2& x) { return Zeta8Elem(x.a) + Zeta8Elem(x.b) * sqrt2; };

  std::optional<std::pair<QSqrt2, QSqrt2>> pq;
  if (is_zero(B)) {
    if (auto p = sqrt_q_sqrt2(A)) {
      pq = {{*p, {0, 0}}};
    } else if (auto q = sqrt_q_sqrt2({-A.a, -A.b})) {
      pq = {{{0, 0}, *q}};
    }
  } else {
    // (P + Qi)^2 = A + Bi: P^2 - Q^2 = A, 2PQ = B
    auto n = sqrt_q_sqrt2(add(mul(A, A), mul(B, B)));
    if (n) {
      for (int sign : {1, -1}) {
        QSqrt2 p2 = sign > 0 ? add(A, *n) : sub(A, *n);
        p2 = {p2.a / 2, p2.b / 2};
        auto p = sqrt_q_sqrt2(p2);
        if (!p || is_zero(*p)) continue;
        QSqrt2 q = mul(B, inv({2 * p->a, 2 * p->b}));
        pq = {{*p, q}};
        break;
      }
    }
  }
  if (!pq) return std::nullopt;
  Zeta8Elem root = embed(pq->first) + embed(pq->second) * i;
  if (!(root * root == z)) return std::nullopt;
  return root;
}

std::ostream& operator<<(std::ostream& os, const Zeta8Elem& a) {
  os << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "]";
  return os;
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem(const Zeta8Elem& z) {
  if (z.is_rational()) {
    v_ = z[0];
  } else {
    v_ = z;
  }
}

bool FieldElem::is_zero() const {
  return is_rational() && sgn(std::get<Rational>(v_)) == 0;
}

bool FieldElem::is_one() const { return is_rational() && std::get<Rational>(v_) == 1; }

const Rational& FieldElem::rational() const { return std::get<Rational>(v_); }

Zeta8Elem FieldElem::to_zeta8() const {
  if (is_rational()) return Zeta8Elem(std::get<Rational>(v_));
  return std::get<Zeta8Elem>(v_);
}

FieldElem FieldElem::operator-() const {
  if (is_rational()) return FieldElem(Rational(-std::get<Rational>(v_)));
  return FieldElem(-std::get<Zeta8Elem>(v_));
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(v_) += o.rational();
  } else {
    *this = FieldElem(to_zeta8() + o.to_zeta8());
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(v_) -= o.rational();
  } else {
    *this = FieldElem(to_zeta8() - o.to_zeta8());
  }
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(v_) *= o.rational();
  } else {
    *this = FieldElem(zeta8_mul(to_zeta8(), o.to_zeta8()));
  }
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
  if (is_rational()) return FieldElem(Rational(1 / rational()));
  return FieldElem(zeta8_inv(std::get<Zeta8Elem>(v_)));
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  if (o.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(v_) /= o.rational();
    return *this;
  }
  return *this *= o.inverse();
}

FieldElem FieldElem::galois(int k) const {
  if (is_rational()) return *this;
  return FieldElem(std::get<Zeta8Elem>(v_).galois(k));
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.is_rational() != b.is_rational()) return false;
  if (a.is_rational()) return a.rational() == b.rational();
  return std::get<Zeta8Elem>(a.v_) == std::get<Zeta8Elem>(b.v_);
}

std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b) {
  Zeta8Elem x = a.to_zeta8(), y = b.to_zeta8();
  for (int i = 0; i < 4; ++i) {
    int c = cmp(x[i], y[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

FieldElem pow(const FieldElem& a, unsigned e) {
  FieldElem result(1), base = a;
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

std::optional<FieldElem> field_sqrt(const FieldElem& a) {
  if (a.is_rational()) {
    if (auto w = is_square_rational(a.rational())) return FieldElem(*w);
  }
  if (auto z = zeta8_sqrt(a.to_zeta8())) return FieldElem(*z);
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) {
  if (a.is_rational()) return os << a.rational();
  return os << a.to_zeta8();
}

}  // namespace ellsurf
