#include "ellsurf/family.hpp"

#include <algorithm>

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

const FieldElem& imag_unit() {
  static const FieldElem i(named_constant("i"));
  return i;
}

const FieldElem& sqrt2() {
  static const FieldElem s(named_constant("sqrt2"));
  return s;
}

const FieldElem& sqrt_minus2() {
  static const FieldElem s(named_constant("sqrt_minus2"));
  return s;
}

}  // namespace

bool PythagoreanTriple::theorem_grade() const {
  return f.degree() == 2 && g.degree() >= 1 && g.degree() <= 2;
}

PythagoreanTriple triple_from_generators(const Poly& h1, const Poly& h2) {
  if (h1.is_zero() || h2.is_zero()) fail(ErrorKind::ZeroInput, "generators must be nonzero");
  if (h1.is_constant() && h2.is_constant()) fail(ErrorKind::ConstantInput, "both generators constant");
  if (poly_gcd(h1, h2).degree() > 0) fail(ErrorKind::NotCoprime, "generators share a root");
  Poly a = h1 * h1, b = h2 * h2;
  PythagoreanTriple t;
  t.f = (a + b) * Poly(FieldElem(Rational(1, 2)));
  t.g = (a - b) * Poly((FieldElem(2) * imag_unit()).inverse());
  t.h = h1 * h2;
  t.generators = std::make_pair(h1, h2);
  if (t.f * t.f + t.g * t.g != t.h * t.h) fail(ErrorKind::CertificateFailed, "generator identity failed");
  if (!t.f.is_zero() && !t.g.is_zero() && poly_gcd(t.f, t.g).degree() > 0) {
    fail(ErrorKind::NotCoprime, "f and g share a root");
  }
  return t;
}

PythagoreanTriple make_triple(Poly f, Poly g, Poly h) {
  if (f * f + g * g != h * h) fail(ErrorKind::OutOfFamily, "f^2 + g^2 != h^2");
  if (!(f.is_zero() && g.is_zero()) && poly_gcd(f, g).degree() > 0) {
    fail(ErrorKind::NotCoprime, "f and g share a root");
  }
  return PythagoreanTriple{std::move(f), std::move(g), std::move(h), std::nullopt};
}

WeierstrassModel curve_of(const PythagoreanTriple& t) {
  Poly f2 = t.f * t.f, g2 = t.g * t.g;
  if (f2.is_zero() || g2.is_zero() || f2 == g2) {
    fail(ErrorKind::SingularModel, "f g (f^2 - g^2) vanishes identically");
  }
  return WeierstrassModel::short_form(RatFun(-(f2 + g2)), RatFun(f2 * g2), RatFun());
}

CanonicalPoints canonical_points(const PythagoreanTriple& t) {
  WeierstrassModel m = curve_of(t);
  const RatFun f(t.f), g(t.g), h(t.h);
  const RatFun i(imag_unit()), r2(sqrt2()), rm2(sqrt_minus2());
  const RatFun one_plus_r2 = RatFun(1) + r2;
  CanonicalPoints p;
  RatFun gg = g * (g - h);
  p.P1 = CurvePoint(-one_plus_r2 * gg, i * one_plus_r2 * gg * (r2 * g - h));
  p.P2 = CurvePoint((f - h) * (g - h), (f + g) * (f - h) * (g - h));
  p.T1 = CurvePoint(g * g, RatFun());
  p.T2 = CurvePoint(f * g, i * f * (f - g) * g);
  p.Q1 = CurvePoint(-g * g, rm2 * g * g * h);
  p.Q2 = CurvePoint(h * h, f * g * h);
  for (const CurvePoint* q : {&p.P1, &p.P2, &p.T1, &p.T2, &p.Q1, &p.Q2}) {
    if (!on_curve(m, *q)) fail(ErrorKind::CertificateFailed, "canonical point off the curve");
  }
  if (mul_scalar(m, p.P1, -2) != p.Q1 || mul_scalar(m, p.P2, -2) != p.Q2) {
    fail(ErrorKind::CertificateFailed, "Q1 = -2 P1 or Q2 = -2 P2 failed");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Square classes

SquareClass square_class(const RatFun& r) {
  if (r.is_zero()) fail(ErrorKind::ZeroInput, "square class of zero");
  Poly rep(1);
  for (const Poly* p : {&r.num(), &r.den()}) {
    if (p->degree() > 0) rep = rep * squarefree_part(*p);
  }
  // num and den are coprime, so the product stays squarefree
  return SquareClass{rep.monic()};
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  Poly g = poly_gcd(a.representative, b.representative);
  return SquareClass{((a.representative / g) * (b.representative / g)).monic()};
}

DescentImage descent_image(const PythagoreanTriple& t, const CurvePoint& p) {
  if (p.is_zero()) return {SquareClass{}, SquareClass{}};
  WeierstrassModel m = curve_of(t);
  require_on_curve(m, p);
  RatFun f2(t.f * t.f);
  RatFun x = p.x();
  if (x.is_zero() || x == f2) {
    fail(ErrorKind::UnsupportedInput, "descent map needs the 2-torsion patch at this point");
  }
  return {square_class(x), square_class(x - f2)};
}

namespace {

// Rank over F2 of the given bit rows.
size_t f2_rank(std::vector<std::vector<int>> rows) {
  size_t rank = 0;
  const size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<int> exponent_vector(const SquareClass& c, const std::vector<Poly>& clusters) {
  std::vector<int> v;
  for (const auto& cl : clusters) v.push_back(*valuation(Place::finite(cl), c.representative) % 2);
  return v;
}

std::vector<Poly> class_basis(const std::vector<SquareClass>& classes) {
  std::vector<Poly> src;
  for (const auto& c : classes) {
    if (!c.is_trivial()) src.push_back(c.representative);
  }
  return gcd_free_basis(src).clusters;
}

}  // namespace

bool square_class_independent(const std::vector<SquareClass>& classes) {
  auto basis = class_basis(classes);
  std::vector<std::vector<int>> rows;
  for (const auto& c : classes) rows.push_back(exponent_vector(c, basis));
  return f2_rank(rows) == classes.size();
}

bool descent_images_independent(const std::vector<DescentImage>& images) {
  std::vector<SquareClass> all;
  for (const auto& [a, b] : images) {
    all.push_back(a);
    all.push_back(b);
  }
  auto basis = class_basis(all);
  std::vector<std::vector<int>> rows;
  for (const auto& [a, b] : images) {
    auto va = exponent_vector(a, basis), vb = exponent_vector(b, basis);
    va.insert(va.end(), vb.begin(), vb.end());
    rows.push_back(va);
  }
  return f2_rank(rows) == images.size();
}

std::array<DescentImage, 4> reference_descent_images(const Poly& h1, const Poly& h2) {
  Zeta8Elem z = named_constant("zeta");
  auto lin = [&](int k) {
    Zeta8Elem zk(1);
    for (int j = 0; j < k; ++j) zk = zk * z;
    return h1 * Poly(FieldElem(zk)) + h2;
  };
  auto cls = [](const Poly& p) { return square_class(RatFun(p)); };
  Poly diff = (h1 - h2) * (h1 + h2);
  std::array<DescentImage, 4> out;
  out[0] = {cls(diff), cls(lin(1) * lin(3))};
  out[1] = {cls(Poly(1)), cls(lin(1) * lin(5))};
  out[2] = {cls(Poly(1)), cls(lin(1) * lin(3) * lin(5) * lin(7))};
  out[3] = {cls(diff * (h1 * h1 + h2 * h2)), cls(lin(2) * lin(3) * lin(6) * lin(7))};
  return out;
}

// ---------------------------------------------------------------------------

bool Certificate::passed() const {
  return std::all_of(stages.begin(), stages.end(), [](const CertificateStage& s) { return s.passed; });
}

std::string Certificate::failing_stage() const {
  for (const auto& s : stages) {
    if (!s.passed) return s.name;
  }
  return {};
}

void Certificate::add(std::string name, bool ok, std::string detail) {
  stages.push_back({std::move(name), ok, std::move(detail)});
}

}  // namespace ellsurf
