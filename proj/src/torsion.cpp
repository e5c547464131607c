#include "ellsurf/torsion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ellsurf/error.hpp"
#include "ellsurf/roots.hpp"

namespace ellsurf {

namespace {

bool contains(const std::vector<CurvePoint>& v, const CurvePoint& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

// True when every squarefree factor of p occurs to an even power.
bool is_square_shape(const Poly& p) {
  if (p.degree() < 1) return true;
  for (const auto& [factor, mult] : squarefree_decompose(p)) {
    if (mult % 2 != 0) return false;
  }
  return true;
}

// Square root in Q(zeta8)(t). nullopt when r is not a square over Qbar(t);
// Unrepresentable when it is, but the constant root leaves Q(zeta8).
std::optional<RatFun> sqrt_or_throw(const RatFun& r) {
  if (r.is_zero()) return RatFun();
  if (!is_square_shape(r.num()) || !is_square_shape(r.den())) return std::nullopt;
  auto s = ratfun_sqrt(r);
  if (!s) fail(ErrorKind::Unrepresentable, "square root of a constant outside Q(zeta8)");
  return s;
}

std::vector<int> invariant_factors(int order, int exponent) {
  std::vector<int> out;
  if (order / exponent > 1) out.push_back(order / exponent);
  if (exponent > 1) out.push_back(exponent);
  return out;
}

std::vector<CurvePoint> cyclic_span(const WeierstrassModel& m, const CurvePoint& g, int n) {
  std::vector<CurvePoint> out{CurvePoint::zero()};
  CurvePoint acc = g;
  for (int k = 1; k < n; ++k) {
    out.push_back(acc);
    acc = add_points(m, acc, g);
  }
  return out;
}

// Generators matching the invariant factors of the finite group `elements`
// (rank <= 2 since E[2] has order 4). `preferred` are tried first.
TorsionReport assemble(const WeierstrassModel& m, std::vector<CurvePoint> elements,
                       const std::vector<CurvePoint>& preferred) {
  TorsionReport r;
  const int order = static_cast<int>(elements.size());
  std::vector<CurvePoint> candidates = preferred;
  for (const auto& e : elements) {
    if (!contains(candidates, e)) candidates.push_back(e);
  }
  std::map<size_t, int> orders;
  int exponent = 1;
  for (size_t i = 0; i < candidates.size(); ++i) {
    orders[i] = point_order(m, candidates[i], order);
    exponent = std::max(exponent, orders[i]);
  }
  r.structure = invariant_factors(order, exponent);
  if (r.structure.empty()) {
    r.elements = std::move(elements);
    return r;
  }
  const int n2 = r.structure.back();
  size_t big = 0;
  while (orders[big] != n2) ++big;
  const CurvePoint g2 = candidates[big];
  if (r.structure.size() == 1) {
    r.generators = {g2};
  } else {
    const int n1 = r.structure.front();
    const auto span2 = cyclic_span(m, g2, n2);
    std::optional<CurvePoint> g1;
    for (size_t i = 0; i < candidates.size() && !g1; ++i) {
      if (orders[i] != n1) continue;
      auto span1 = cyclic_span(m, candidates[i], n1);
      bool meets = false;
      for (size_t k = 1; k < span1.size(); ++k) meets = meets || contains(span2, span1[k]);
      if (!meets) g1 = candidates[i];
    }
    if (!g1) fail(ErrorKind::CertificateFailed, "no complement for the torsion generator");
    r.generators = n1 == n2 ? std::vector<CurvePoint>{g2, *g1} : std::vector<CurvePoint>{*g1, g2};
  }
  r.elements = std::move(elements);
  return r;
}

// Closure of a finite set of torsion points under addition, O first.
std::vector<CurvePoint> close_under_addition(const WeierstrassModel& m, std::vector<CurvePoint> pts) {
  std::vector<CurvePoint> group{CurvePoint::zero()};
  for (const auto& p : pts) {
    if (!contains(group, p)) group.push_back(p);
  }
  for (size_t i = 0; i < group.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      CurvePoint s = add_points(m, group[i], group[j]);
      if (!contains(group, s)) group.push_back(s);
    }
    if (group.size() > 16) fail(ErrorKind::CertificateFailed, "torsion exceeds the Mazur bound");
  }
  return group;
}

}  // namespace

std::string TorsionReport::describe() const {
  if (structure.empty()) return "trivial";
  std::string out;
  for (int n : structure) out += (out.empty() ? "Z/" : " + Z/") + std::to_string(n);
  return out;
}

int TorsionReport::order() const {
  return std::accumulate(structure.begin(), structure.end(), 1, std::multiplies<>());
}

int point_order(const WeierstrassModel& m, const CurvePoint& p, int max_order) {
  CurvePoint acc = p;
  for (int k = 1; k <= max_order; ++k) {
    if (acc.is_zero()) return max_order % k == 0 ? k : 0;
    acc = add_points(m, acc, p);
  }
  return 0;
}

std::vector<CurvePoint> two_torsion(const WeierstrassModel& m) {
  std::vector<CurvePoint> out;
  for (const RatFun& x : two_division_roots(m)) {
    RatFun y = -(m.a1() * x + m.a3()) / RatFun(2);
    out.emplace_back(x, y);
  }
  return out;
}

std::vector<CurvePoint> halve(const WeierstrassModel& m, const CurvePoint& q) {
  if (!m.a1().is_zero() || !m.a3().is_zero()) {
    fail(ErrorKind::UnsupportedInput, "halving needs a1 = a3 = 0");
  }
  if (q.is_zero()) fail(ErrorKind::InfinityInput, "halve the point O through two_torsion");
  require_on_curve(m, q);
  auto roots = cubic_roots(m.a2(), m.a4(), m.a6(), true);
  if (roots.size() != 3) fail(ErrorKind::UnsupportedInput, "2-division cubic does not split");
  // 2P = Q iff each x(Q) - e_i is a square r_i^2; then
  // x(P) = x(Q) + r1 r2 + r1 r3 + r2 r3 for a suitable choice of signs.
  std::array<RatFun, 3> r;
  for (size_t i = 0; i < 3; ++i) {
    auto s = sqrt_or_throw(q.x() - roots[i]);
    if (!s) return {};
    r[i] = *s;
  }
  std::vector<CurvePoint> out;
  static const int signs[4][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  for (const auto& sg : signs) {
    RatFun a = r[0] * RatFun(sg[0]), b = r[1] * RatFun(sg[1]), c = r[2] * RatFun(sg[2]);
    RatFun x = q.x() + a * b + a * c + b * c;
    RatFun rhs = ((x + m.a2()) * x + m.a4()) * x + m.a6();
    auto y = sqrt_or_throw(rhs);
    if (!y) continue;
    for (const RatFun& yy : {*y, -*y}) {
      CurvePoint p(x, yy);
      if (!contains(out, p) && add_points(m, p, p) == q) out.push_back(p);
    }
  }
  return out;
}

std::vector<CurvePoint> halve_two_torsion(const WeierstrassModel& m, const CurvePoint& t) {
  if (t.is_zero() || !add_points(m, t, t).is_zero()) {
    fail(ErrorKind::NotTwoTorsion, "input is not a point of order 2");
  }
  return halve(m, t);
}

TorsionReport torsion_structure_family(const Poly& f, const Poly& g) {
  if (f.degree() != 2 || g.degree() > 2 || g.is_zero()) {
    fail(ErrorKind::OutOfFamily, "needs deg f = 2 and 0 <= deg g <= 2");
  }
  if (poly_gcd(f, g).degree() > 0) fail(ErrorKind::NotCoprime, "f and g share a factor");
  const Poly f2 = f * f, g2 = g * g;
  if (f2 == g2) fail(ErrorKind::SingularModel, "f^2 = g^2");
  const auto m = WeierstrassModel::short_form(RatFun(-(f2 + g2)), RatFun(f2 * g2), RatFun());

  // The 2-primary part, layer by layer: E[2^(k+1)] = halves of E[2^k].
  std::vector<CurvePoint> group{CurvePoint::zero()};
  std::vector<CurvePoint> layer;
  for (const RatFun& e : cubic_roots(m.a2(), m.a4(), m.a6(), true)) layer.emplace_back(e, RatFun());
  for (const auto& p : layer) group.push_back(p);
  while (!layer.empty()) {
    std::vector<CurvePoint> next;
    for (const auto& p : layer) {
      for (const auto& h : halve(m, p)) {
        if (!contains(group, h)) {
          group.push_back(h);
          next.push_back(h);
        }
      }
    }
    layer = std::move(next);
    if (group.size() > 64) fail(ErrorKind::CertificateFailed, "2-primary torsion is too large");
  }

  // Bound from the component groups; all of them are 2-groups here, which
  // also rules out odd torsion.
  const SurfaceSummary s = classify_fibers(m);
  long product = 1;
  std::string bound;
  for (const auto& fb : s.fibers) {
    if (fb.group_order <= 1) continue;
    if (!bound.empty()) bound += ",";
    bound += fb.type.name();
    if (fb.count > 1) bound += "x" + std::to_string(fb.count);
    for (int k = 0; k < fb.count; ++k) product *= fb.group_order;
  }
  if ((product & (product - 1)) != 0) {
    fail(ErrorKind::CertificateFailed, "component group bound is not a power of 2");
  }
  if (product % static_cast<long>(group.size()) != 0) {
    fail(ErrorKind::CertificateFailed, "torsion order does not divide the component bound");
  }

  const RatFun rf(f), rg(g);
  const CurvePoint t1(rg * rg, RatFun());
  const CurvePoint t2(rf * rg, RatFun(named_constant("i")) * rf * (rf - rg) * rg);
  std::vector<CurvePoint> preferred{t2, t1};
  for (const auto& h : halve(m, t1)) preferred.push_back(h);
  TorsionReport r = assemble(m, std::move(group), preferred);
  r.bound = bound + ": product " + std::to_string(product);
  return r;
}

TorsionReport torsion_structure_family(const PythagoreanTriple& t) {
  return torsion_structure_family(t.f, t.g);
}

// ---------------------------------------------------------------------------
// Division polynomials over Q

namespace {

// p * psi_2^k with k in {0, 1}; psi_2^2 = F.
struct DP {
  Poly p;
  int k = 0;
};

Poly x_poly(std::initializer_list<Rational> c) {
  std::vector<FieldElem> v;
  for (const auto& r : c) v.emplace_back(r);
  return Poly(std::move(v));
}

class DivisionPolys {
 public:
  explicit DivisionPolys(const WeierstrassModel& m) {
    const auto inv = standard_invariants(m);
    auto c = [](const RatFun& r) { return r.num().coeff(0).rational(); };
    b2_ = c(inv.b2), b4_ = c(inv.b4), b6_ = c(inv.b6), b8_ = c(inv.b8);
    F_ = x_poly({b6_, 2 * b4_, b2_, 4});
    memo_[0] = DP{Poly(), 0};
    memo_[1] = DP{Poly(1), 0};
    memo_[2] = DP{Poly(1), 1};
    memo_[3] = DP{x_poly({b8_, 3 * b6_, 3 * b4_, b2_, 3}), 0};
    memo_[4] = DP{x_poly({b4_ * b8_ - b6_ * b6_, b2_ * b8_ - b4_ * b6_, 10 * b8_, 10 * b6_, 5 * b4_, b2_, 2}),
                  1};
  }

  const Poly& F() const { return F_; }

  const DP& psi(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    DP out;
    if (n % 2 == 1) {
      const int k = (n - 1) / 2;
      DP a = mul(psi(k + 2), pow3(psi(k)));
      DP b = mul(psi(k - 1), pow3(psi(k + 1)));
      out = sub(a, b);
    } else {
      const int k = n / 2;
      DP a = mul(psi(k + 2), mul(psi(k - 1), psi(k - 1)));
      DP b = mul(psi(k - 2), mul(psi(k + 1), psi(k + 1)));
      out = div_psi2(mul(psi(k), sub(a, b)));
    }
    return memo_[n] = std::move(out);
  }

 private:
  DP mul(const DP& a, const DP& b) const {
    DP out{a.p * b.p, a.k + b.k};
    if (out.k >= 2) {
      out.p = out.p * F_;
      out.k -= 2;
    }
    return out;
  }
  DP pow3(const DP& a) const { return mul(a, mul(a, a)); }
  DP sub(const DP& a, const DP& b) const {
    if (a.p.is_zero()) return DP{Poly() - b.p, b.k};
    if (b.p.is_zero()) return a;
    if (a.k != b.k) fail(ErrorKind::CertificateFailed, "division polynomial parity mismatch");
    return DP{a.p - b.p, a.k};
  }
  DP div_psi2(const DP& a) const {
    if (a.k == 1) return DP{a.p, 0};
    auto [quo, rem] = divmod(a.p, F_);
    if (!rem.is_zero()) fail(ErrorKind::CertificateFailed, "psi_2 does not divide");
    return DP{quo, 1};
  }

  Rational b2_, b4_, b6_, b8_;
  Poly F_;
  std::map<int, DP> memo_;
};

void require_over_Q(const WeierstrassModel& m) {
  if (!m.is_constant() || !m.is_rational()) {
    fail(ErrorKind::UnsupportedInput, "needs a curve over Q");
  }
  if (standard_invariants(m).delta.is_zero()) fail(ErrorKind::SingularModel, "singular curve");
}

bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

Rational constant_of(const RatFun& r) { return r.num().coeff(0).rational(); }

}  // namespace

Poly division_polynomial(const WeierstrassModel& m, int n) {
  if (n < 2 || n > 12) fail(ErrorKind::UnsupportedOrder, "division polynomials are provided for 2 <= n <= 12");
  require_over_Q(m);
  DivisionPolys d(m);
  if (n == 2) return d.F();
  return d.psi(n).p;
}

TorsionReport torsion_over_Q(const WeierstrassModel& m) {
  require_over_Q(m);
  DivisionPolys d(m);
  const Rational a1 = constant_of(m.a1()), a2 = constant_of(m.a2()), a3 = constant_of(m.a3()),
                 a4 = constant_of(m.a4()), a6 = constant_of(m.a6());
  // Orders allowed over Q are 1..10 and 12; every such point is a multiple
  // of a point whose order divides 5, 7, 8 or 9, or is 2-torsion.
  std::vector<Rational> xs;
  for (int n : {2, 5, 7, 8, 9}) {
    Poly p = n == 2 ? d.F() : d.psi(n).p;
    for (const auto& x : rational_roots(p)) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<CurvePoint> pts;
  for (const auto& x : xs) {
    // y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6
    const Rational lin = a1 * x + a3;
    const Rational rhs = ((x + a2) * x + a4) * x + a6;
    Rational root;
    if (!rational_sqrt(lin * lin + 4 * rhs, root)) continue;
    for (const Rational& s : {root, Rational(-root)}) {
      Rational y = (s - lin) / 2;
      pts.emplace_back(RatFun(FieldElem(x)), RatFun(FieldElem(y)));
    }
  }
  auto group = close_under_addition(m, std::move(pts));
  TorsionReport r = assemble(m, std::move(group), {});
  r.bound = "Mazur: orders 1..10, 12";
  return r;
}

bool is_nontorsion_Q(const WeierstrassModel& m, const CurvePoint& p) {
  require_over_Q(m);
  if (p.is_zero()) return false;
  require_on_curve(m, p);
  // Torsion orders over Q are at most 12.
  CurvePoint acc = p;
  for (int k = 1; k <= 12; ++k) {
    if (acc.is_zero()) return false;
    acc = add_points(m, acc, p);
  }
  return true;
}

}  // namespace ellsurf
