#include "ellsurf/roots.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cstdint>

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

using IntPoly = std::vector<Integer>;  // ascending

// Primitive integer polynomial proportional to p.
IntPoly integer_primitive(const Poly& p) {
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) fail(ErrorKind::NonRationalCoefficients, "rational roots need Q coefficients");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
  }
  IntPoly out;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Rational v = c.rational() * lcm;
    out.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0) {
    for (auto& c : out) c /= g;
  }
  return out;
}

Integer eval_mod(const IntPoly& q, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    acc = (acc * x + *it) % m;
  }
  if (acc < 0) acc += m;
  return acc;
}

Integer eval_exact(const IntPoly& q, const Integer& x) {
  Integer acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly int_derivative(const IntPoly& q) {
  IntPoly d;
  for (size_t i = 1; i < q.size(); ++i) d.push_back(q[i] * static_cast<unsigned long>(i));
  return d;
}

// Polynomials over F_p with small p.
using ModPoly = std::vector<int64_t>;

ModPoly reduce(const IntPoly& q, int64_t p) {
  ModPoly out;
  for (const auto& c : q) {
    Integer r = c % p;
    if (r < 0) r += p;
    out.push_back(r.get_si());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

int64_t inv_mod(int64_t a, int64_t p) {
  int64_t r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, int64_t p) {
  int64_t inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    int64_t c = a.back() * inv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool coprime_mod(ModPoly a, ModPoly b, int64_t p) {
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

// Integer roots of a monic squarefree integer polynomial by Hensel lifting.
std::vector<Integer> integer_roots_monic(const IntPoly& q) {
  std::vector<Integer> roots;
  if (q.size() <= 1) return roots;
  Integer bound = 0;
  for (size_t i = 0; i + 1 < q.size(); ++i) bound = std::max(bound, Integer(abs(q[i])));
  bound += 1;
  IntPoly dq = int_derivative(q);

  static const int64_t primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                                   47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103,
                                   107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
                                   179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241,
                                   251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317,
                                   331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401};
  int64_t p = 0;
  for (int64_t cand : primes) {
    ModPoly qm = reduce(q, cand), dm = reduce(dq, cand);
    if (qm.size() != q.size() || dm.empty()) continue;
    if (coprime_mod(qm, dm, cand)) {
      p = cand;
      break;
    }
  }
  if (p == 0) fail(ErrorKind::UnsupportedInput, "no suitable prime for root lifting");

  Integer modulus_target = 2 * bound + 1;
  for (int64_t r0 = 0; r0 < p; ++r0) {
    if (eval_mod(q, r0, p) != 0) continue;
    Integer r = r0, m = p;
    while (m < modulus_target) {
      Integer m2 = m * m;
      Integer fx = eval_mod(q, r, m2);
      Integer dfx = eval_mod(dq, r, m2);
      Integer inv;
      mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), m2.get_mpz_t());
      r = (r - fx * inv) % m2;
      if (r < 0) r += m2;
      m = m2;
    }
    if (r > m / 2) r -= m;
    if (eval_exact(q, r) == 0) roots.push_back(r);
  }
  return roots;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& p) {
  if (p.is_zero()) fail(ErrorKind::ZeroInput, "roots of the zero polynomial");
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) fail(ErrorKind::NonRationalCoefficients, "rational roots need Q coefficients");
  }
  std::vector<Rational> out;
  if (p.degree() < 1) return out;
  Poly sf(1);
  for (const auto& [factor, mult] : squarefree_decompose(p)) sf *= factor;
  if (sf.coeff(0).is_zero()) {
    out.emplace_back(0);
    sf = sf / Poly::t();
  }
  IntPoly q = integer_primitive(sf);
  if (q.size() >= 2) {
    // y = a_n x turns q into a monic integer polynomial.
    const Integer an = q.back();
    const size_t n = q.size() - 1;
    IntPoly monic(q.size());
    monic[n] = 1;
    Integer power = 1;  // an^{n-1-i}
    for (size_t i = n; i-- > 0;) {
      monic[i] = q[i] * power;
      power *= an;
    }
    for (const auto& y : integer_roots_monic(monic)) {
      Rational x(y, an);
      x.canonicalize();
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void sort_unique(std::vector<RatFun>& v) {
  auto less = [](const RatFun& a, const RatFun& b) {
    if (a.num() == b.num()) return a.den() < b.den();
    return a.num() < b.num();
  };
  std::sort(v.begin(), v.end(), less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Polynomial root of the monic integral cubic C through the simple root rho
// of C(x, t0), by t-adic lifting to precision deg_bound + 1.
std::optional<Poly> lift_root(const std::array<Poly, 4>& c, const FieldElem& t0, const FieldElem& rho,
                              int deg_bound) {
  // Move t0 to the origin: t = t0 + u.
  std::array<Poly, 4> cu;
  RatFun shift(Poly(std::vector<FieldElem>{t0, FieldElem(1)}));
  for (size_t i = 0; i < 4; ++i) cu[i] = RatFun(c[i]).compose(shift).num();
  auto eval_c = [&](const Poly& x) {
    Poly acc = cu[3];
    for (int i = 2; i >= 0; --i) acc = acc * x + cu[static_cast<size_t>(i)];
    return acc;
  };
  auto truncate = [](const Poly& p, int n) {
    std::vector<FieldElem> v;
    for (int i = 0; i < n && i <= p.degree(); ++i) v.push_back(p.coeff(i));
    return Poly(std::move(v));
  };
  // derivative at (rho, u = 0)
  FieldElem d = FieldElem(3) * rho * rho * cu[3].coeff(0) + FieldElem(2) * rho * cu[2].coeff(0) +
                cu[1].coeff(0);
  if (d.is_zero()) return std::nullopt;
  FieldElem dinv = d.inverse();
  Poly x(rho);
  for (int j = 1; j <= deg_bound; ++j) {
    Poly val = truncate(eval_c(x), j + 1);
    FieldElem cj = -val.coeff(j) * dinv;
    x += Poly::monomial(cj, j);
  }
  if (!eval_c(x).is_zero()) return std::nullopt;
  // back to t: u = t - t0
  RatFun back(Poly(std::vector<FieldElem>{-t0, FieldElem(1)}));
  return RatFun(x).compose(back).num();
}

}  // namespace

std::vector<RatFun> quadratic_roots(const RatFun& a, const RatFun& b, const RatFun& c, bool cyclotomic) {
  if (a.is_zero()) fail(ErrorKind::DivisionByZero, "quadratic with zero leading coefficient");
  std::vector<RatFun> out;
  RatFun disc = b * b - RatFun(4) * a * c;
  auto root = ratfun_sqrt(disc);
  if (!root) return out;
  for (const RatFun& sgn : {*root, -*root}) {
    RatFun x = (-b + sgn) / (RatFun(2) * a);
    if (!cyclotomic && !x.is_rational()) continue;
    out.push_back(x);
  }
  sort_unique(out);
  return out;
}

std::vector<RatFun> cubic_roots(const RatFun& p, const RatFun& q, const RatFun& r, bool cyclotomic) {
  std::vector<RatFun> out;
  auto deflate = [&](const RatFun& e) {
    // x^3 + p x^2 + q x + r = (x - e)(x^2 + (p + e) x + (q + e(p + e)))
    RatFun b = p + e;
    RatFun c = q + e * b;
    out.push_back(e);
    for (auto& x : quadratic_roots(RatFun(1), b, c, cyclotomic)) out.push_back(x);
    sort_unique(out);
  };
  if (r.is_zero()) {
    deflate(RatFun());
    return out;
  }
  bool rational = p.is_rational() && q.is_rational() && r.is_rational();
  if (!rational) return out;

  // Clear denominators: X = D x makes the cubic monic with polynomial coefficients.
  Poly den(1);
  for (const RatFun* c : {&p, &q, &r}) den = den * (c->den() / poly_gcd(den, c->den()));
  RatFun D(den);
  std::array<Poly, 4> c{(r * pow(D, 3)).num(), (q * D * D).num(), (p * D).num(), Poly(1)};
  int deg_bound = 0;
  for (int i = 0; i < 3; ++i) {
    if (!c[static_cast<size_t>(i)].is_zero()) {
      int w = 3 - i;
      deg_bound = std::max(deg_bound, (c[static_cast<size_t>(i)].degree() + w - 1) / w);
    }
  }
  if (deg_bound == 0) {
    // constant cubic over Q
    std::vector<FieldElem> cc;
    for (const auto& x : c) cc.push_back(x.coeff(0));
    auto roots = rational_roots(Poly(cc));
    if (roots.empty()) return out;
    deflate(RatFun(FieldElem(roots.front())) / D);
    return out;
  }
  // Pick t0 where the specialized cubic is separable.
  for (int k = 0; k < 64; ++k) {
    FieldElem t0(k % 2 == 0 ? k / 2 : -(k + 1) / 2);
    std::vector<FieldElem> cc;
    for (const auto& x : c) cc.push_back(x.eval(t0));
    Poly spec(cc);
    if (discriminant(spec).is_zero()) continue;
    for (const auto& rho : rational_roots(spec)) {
      auto root = lift_root(c, t0, FieldElem(rho), deg_bound);
      if (root) {
        deflate(RatFun(*root) / D);
        return out;
      }
    }
    return out;
  }
  fail(ErrorKind::UnsupportedInput, "no separable specialization found for the cubic");
}

}  // namespace ellsurf
