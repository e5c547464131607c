#include "ellsurf/poly.hpp"

#include <algorithm>
#include <array>

#include "ellsurf/error.hpp"
#include "modgcd.hpp"

namespace ellsurf {

Poly::Poly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const FieldElem& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Poly Poly::monomial(const FieldElem& c, int degree) {
  if (c.is_zero()) return Poly();
  std::vector<FieldElem> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem(0);
  return c_[static_cast<size_t>(i)];
}

bool Poly::is_rational() const {
  return std::all_of(c_.begin(), c_.end(), [](const FieldElem& c) { return c.is_rational(); });
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  FieldElem inv = leading().inverse();
  Poly r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<FieldElem> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * FieldElem(static_cast<int>(i));
  return Poly(std::move(d));
}

FieldElem Poly::eval(const FieldElem& x) const {
  FieldElem acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Poly Poly::galois(int k) const {
  std::vector<FieldElem> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.galois(k));
  return Poly(std::move(v));
}

Poly Poly::scale_variable(const FieldElem& c) const {
  std::vector<FieldElem> v = c_;
  FieldElem power(1);
  for (auto& x : v) {
    x *= power;
    power *= c;
  }
  return Poly(std::move(v));
}

Poly Poly::reverse(int n) const {
  if (is_zero()) return Poly();
  if (n < degree()) fail(ErrorKind::DegreeOverflow, "reverse: n below degree");
  std::vector<FieldElem> v(static_cast<size_t>(n) + 1);
  for (size_t i = 0; i < c_.size(); ++i) v[static_cast<size_t>(n) - i] = c_[i];
  return Poly(std::move(v));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  if (a.is_rational() && b.is_rational()) {
    // plain mpq arithmetic avoids the variant dispatch in the hot loop
    std::vector<Rational> acc(x.size() + y.size() - 1);
    Rational tmp;
    for (size_t i = 0; i < x.size(); ++i) {
      const Rational& xi = x[i].rational();
      if (sgn(xi) == 0) continue;
      for (size_t j = 0; j < y.size(); ++j) {
        const Rational& yj = y[j].rational();
        if (sgn(yj) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), xi.get_mpq_t(), yj.get_mpq_t());
        acc[i + j] += tmp;
      }
    }
    return Poly(std::vector<FieldElem>(acc.begin(), acc.end()));
  }
  // Q(zeta8): split into four rational component polynomials and convolve,
  // reducing with zeta^4 = -1.
  std::array<std::vector<Rational>, 4> xa, ya;
  for (auto* comp : {&xa, &ya}) {
    for (auto& v : *comp) v.resize(comp == &xa ? x.size() : y.size());
  }
  for (size_t i = 0; i < x.size(); ++i) {
    Zeta8Elem z = x[i].to_zeta8();
    for (int k = 0; k < 4; ++k) xa[k][i] = z[k];
  }
  for (size_t j = 0; j < y.size(); ++j) {
    Zeta8Elem z = y[j].to_zeta8();
    for (int k = 0; k < 4; ++k) ya[k][j] = z[k];
  }
  std::array<std::vector<Rational>, 4> acc;
  for (auto& v : acc) v.resize(x.size() + y.size() - 1);
  Rational tmp;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const int e = (k + l) % 4;
      const bool neg = k + l >= 4;
      for (size_t i = 0; i < x.size(); ++i) {
        if (sgn(xa[k][i]) == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) {
          if (sgn(ya[l][j]) == 0) continue;
          mpq_mul(tmp.get_mpq_t(), xa[k][i].get_mpq_t(), ya[l][j].get_mpq_t());
          if (neg) acc[e][i + j] -= tmp;
          else acc[e][i + j] += tmp;
        }
      }
    }
  }
  std::vector<FieldElem> out;
  out.reserve(acc[0].size());
  for (size_t i = 0; i < acc[0].size(); ++i) {
    out.emplace_back(Zeta8Elem(acc[0][i], acc[1][i], acc[2][i], acc[3][i]));
  }
  return Poly(std::move(out));
}

Poly pow(const Poly& p, int e) {
  if (e < 0) fail(ErrorKind::DegreeOverflow, "negative polynomial power");
  Poly result(1), base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto c = a.coeff(i) <=> b.coeff(i);
    if (c != 0) return c < 0;
  }
  return false;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  const auto& d = b.coeffs();
  const int db = b.degree();
  if (a.is_rational() && b.is_rational()) {
    std::vector<Rational> rr;
    rr.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) rr.push_back(c.rational());
    std::vector<Rational> qq(static_cast<size_t>(a.degree() - db) + 1);
    const Rational inv = 1 / d.back().rational();
    Rational c, tmp;
    for (int i = a.degree(); i >= db; --i) {
      if (sgn(rr[static_cast<size_t>(i)]) == 0) continue;
      c = rr[static_cast<size_t>(i)] * inv;
      for (int j = 0; j <= db; ++j) {
        const Rational& dj = d[static_cast<size_t>(j)].rational();
        if (sgn(dj) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), dj.get_mpq_t());
        rr[static_cast<size_t>(i - db + j)] -= tmp;
      }
      qq[static_cast<size_t>(i - db)] = c;
    }
    rr.resize(static_cast<size_t>(db));
    return {Poly(std::vector<FieldElem>(qq.begin(), qq.end())),
            Poly(std::vector<FieldElem>(rr.begin(), rr.end()))};
  }
  if (b.is_rational()) {
    // divide each zeta-component separately
    std::array<std::vector<FieldElem>, 4> comp;
    for (const auto& c : a.coeffs()) {
      Zeta8Elem z = c.to_zeta8();
      for (int k = 0; k < 4; ++k) comp[k].emplace_back(z[k]);
    }
    std::array<std::pair<Poly, Poly>, 4> qr;
    for (int k = 0; k < 4; ++k) qr[k] = divmod(Poly(std::move(comp[k])), b);
    auto merge = [&](bool quotient) {
      int deg = kDegreeMinusInfinity;
      for (const auto& x : qr) deg = std::max(deg, (quotient ? x.first : x.second).degree());
      std::vector<FieldElem> out;
      for (int i = 0; i <= deg; ++i) {
        std::array<Rational, 4> c;
        for (int k = 0; k < 4; ++k) c[k] = (quotient ? qr[k].first : qr[k].second).coeff(i).rational();
        out.emplace_back(Zeta8Elem(c[0], c[1], c[2], c[3]));
      }
      return Poly(std::move(out));
    };
    return {merge(true), merge(false)};
  }
  std::vector<FieldElem> rem = a.coeffs();
  std::vector<FieldElem> q(static_cast<size_t>(a.degree() - db) + 1);
  FieldElem inv_lc = b.leading().inverse();
  for (int i = a.degree(); i >= db; --i) {
    FieldElem c = rem[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    c *= inv_lc;
    q[static_cast<size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      if (d[static_cast<size_t>(j)].is_zero()) continue;
      rem[static_cast<size_t>(i - db + j)] -= c * d[static_cast<size_t>(j)];
    }
  }
  rem.resize(static_cast<size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

bool divides(const Poly& d, const Poly& p) {
  if (d.is_zero()) return p.is_zero();
  return divmod(p, d).second.is_zero();
}

Poly poly_gcd(const Poly& p, const Poly& q) {
  if (p.is_zero() && q.is_zero()) fail(ErrorKind::BothZero, "gcd of two zero polynomials");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.degree() == 0 || q.degree() == 0) return Poly(1);
  if (std::max(p.degree(), q.degree()) >= 3) {
    if (auto g = detail::modular_gcd(p, q)) return *g;
  }
  Poly a = p.monic(), b = q.monic();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<SquarefreeFactor> squarefree_decompose(const Poly& p) {
  if (p.is_zero()) fail(ErrorKind::ZeroInput, "squarefree decomposition of zero");
  std::vector<SquarefreeFactor> out;
  if (p.degree() == 0) return out;
  // Yun's algorithm (characteristic zero).
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = poly_gcd(f, fp);
  Poly b = f / a;
  Poly c = fp / a;
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly g = d.is_zero() ? b : poly_gcd(b, d);
    if (g.degree() > 0) out.push_back({g.monic(), i});
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Poly squarefree_part(const Poly& p) {
  Poly r(1);
  for (const auto& [factor, mult] : squarefree_decompose(p)) {
    if (mult % 2 == 1) r *= factor;
  }
  return r;
}

FieldElem resultant(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return FieldElem(0);
  // Euclidean recursion: res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r)
  Poly a = p, b = q;
  FieldElem acc(1);
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      return acc * pow(b.leading(), static_cast<unsigned>(da));
    }
    Poly r = divmod(a, b).second;
    if (r.is_zero()) return FieldElem(0);
    int dr = r.degree();
    if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
    acc *= pow(b.leading(), static_cast<unsigned>(da - dr));
    a = std::move(b);
    b = std::move(r);
  }
}

FieldElem discriminant(const Poly& p) {
  int n = p.degree();
  if (n < 1) fail(ErrorKind::ConstantInput, "discriminant of a constant");
  FieldElem r = resultant(p, p.derivative()) / p.leading();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  auto lc_root = field_sqrt(p.leading());
  if (!lc_root) return std::nullopt;
  Poly root(*lc_root);
  for (const auto& [factor, mult] : squarefree_decompose(p)) {
    if (mult % 2 == 1) return std::nullopt;
    root *= pow(factor, mult / 2);
  }
  return root;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
  os << "[";
  for (size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) os << ",";
    os << p.coeffs()[i];
  }
  return os << "]";
}

// ---------------------------------------------------------------------------
// RatFun

RatFun::RatFun(Poly num) : num_(std::move(num)), den_(1) {}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
  normalize();
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.is_monic()) {
    FieldElem inv = den_.leading().inverse();
    num_ = num_ * Poly(inv);
    den_ = den_ * Poly(inv);
  }
}

int RatFun::degree() const {
  if (is_zero()) return kDegreeMinusInfinity;
  return num_.degree() - den_.degree();
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
  if (is_zero() || o.is_zero()) {
    *this = RatFun();
    return *this;
  }
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // cross-cancel before multiplying to keep degrees small
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  num_ = (num_ / g1) * (o.num_ / g2);
  den_ = (den_ / g2) * (o.den_ / g1);
  if (!den_.is_monic()) normalize();
  return *this;
}

RatFun RatFun::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero rational function");
  return RatFun(den_, num_);
}

RatFun& RatFun::operator/=(const RatFun& o) { return *this *= o.inverse(); }

RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }

RatFun pow(const RatFun& r, int e) {
  if (e < 0) return pow(r.inverse(), -e);
  return RatFun(pow(r.num(), e), pow(r.den(), e));
}

FieldElem RatFun::eval(const FieldElem& t0) const {
  FieldElem d = den_.eval(t0);
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "evaluation at a pole");
  return num_.eval(t0) / d;
}

RatFun RatFun::galois(int k) const { return RatFun(num_.galois(k), den_.galois(k)); }

RatFun RatFun::scale_variable(const FieldElem& c) const {
  return RatFun(num_.scale_variable(c), den_.scale_variable(c));
}

RatFun RatFun::to_s_chart(int shift) const {
  if (is_zero()) return RatFun();
  // r(1/s) = s^{dd - dn} * rev(num)/rev(den)
  int dn = num_.degree(), dd = den_.degree();
  int e = shift + dd - dn;
  Poly n = num_.reverse(dn), d = den_.reverse(dd);
  if (e >= 0) {
    n = n * Poly::monomial(FieldElem(1), e);
  } else {
    d = d * Poly::monomial(FieldElem(1), -e);
  }
  return RatFun(n, d);
}

RatFun RatFun::compose(const RatFun& q) const {
  auto horner = [&q](const Poly& p) {
    RatFun acc;
    for (int i = p.degree(); i >= 0; --i) {
      acc = acc * q + RatFun(p.coeff(i));
    }
    return acc;
  };
  return horner(num_) / horner(den_);
}

std::optional<RatFun> ratfun_sqrt(const RatFun& r) {
  auto n = poly_sqrt(r.num());
  if (!n) return std::nullopt;
  auto d = poly_sqrt(r.den());
  if (!d) return std::nullopt;
  return RatFun(*n, *d);
}

std::ostream& operator<<(std::ostream& os, const RatFun& r) {
  return os << "(" << r.num() << ")/(" << r.den() << ")";
}

// ---------------------------------------------------------------------------
// Places

Place Place::finite(Poly cluster) {
  if (cluster.degree() < 1) fail(ErrorKind::ConstantInput, "place cluster must be nonconstant");
  Place p;
  p.cluster_ = cluster.monic();
  return p;
}

bool operator<(const Place& a, const Place& b) {
  if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
  return a.cluster() < b.cluster();
}

std::optional<int> valuation(const Place& v, const Poly& p) {
  if (p.is_zero()) return std::nullopt;
  if (v.is_infinity()) return -p.degree();
  const Poly& c = v.cluster();
  int e = 0;
  Poly rest = p;
  while (true) {
    auto [quot, rem] = divmod(rest, c);
    if (rem.is_zero()) {
      rest = std::move(quot);
      ++e;
      continue;
    }
    // gcd(rest, c) = gcd(c, rem) must be trivial
    if (poly_gcd(c, rem).degree() != 0) {
      fail(ErrorKind::ClusterSplits, "cluster splits against the argument; refine the basis first");
    }
    return e;
  }
}

std::optional<int> valuation(const Place& v, const RatFun& r, int chart_weight) {
  if (r.is_zero()) return std::nullopt;
  int vn = *valuation(v, r.num());
  int vd = *valuation(v, r.den());
  return vn - vd + chart_weight;
}

PlaceBasis gcd_free_basis(const std::vector<Poly>& sources) {
  std::vector<Poly> work;
  for (const auto& s : sources) {
    if (s.is_zero()) fail(ErrorKind::ZeroInput, "gcd_free_basis: zero source");
    for (auto& sf : squarefree_decompose(s)) work.push_back(std::move(sf.factor));
  }
  // Repeatedly split pairs with a nontrivial gcd; total degree strictly drops.
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(work.begin(), work.end());
    work.erase(std::unique(work.begin(), work.end()), work.end());
    for (size_t i = 0; i < work.size() && !changed; ++i) {
      for (size_t j = i + 1; j < work.size() && !changed; ++j) {
        Poly g = poly_gcd(work[i], work[j]);
        if (g.degree() == 0) continue;
        Poly a = work[i] / g, b = work[j] / g;
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(i));
        for (Poly* p : {&g, &a, &b}) {
          if (p->degree() > 0) work.push_back(p->monic());
        }
        changed = true;
      }
    }
  }
  std::sort(work.begin(), work.end());
  return PlaceBasis{std::move(work), sources};
}

}  // namespace ellsurf
